"""Command-line interface: ``drhalg vars | verify | draw``.

Exit status of ``verify``: 0 when every selected suite passes, 1 when some
check fails, 3 when the path exceeds the length bound (the bound is
reported separately from check failures).  Usage errors exit with 2.
"""

from __future__ import annotations

import json
import sys
from typing import Callable

import click

from .drh import LatticePath, build_array, initial_quiver, render_array
from .harness import (
    BoundExceeded,
    cap,
    check_bound,
    verify_identities,
    verify_lattice_fc,
    verify_main_theorem,
    verify_worm_quivers,
)
from .staircase import build_staircase, render_staircase
from .standardize import Subskeleton, fill_staircase, std, verify_decomposition, verify_three_by_three
from .wiring import (
    all_correspondences,
    balance,
    check_drh_wiring_equivalence,
    diagram_to_dict,
    drh_to_wiring,
    render_wiring,
)

SCHEMA_VERSION = 1
EXIT_FAIL = 1
EXIT_BOUND = 3

SUITES = (
    "main-theorem",
    "decomposition",
    "three-by-three",
    "identities",
    "lattice-fc",
    "worm-quivers",
    "wiring-equivalence",
)


def _parse_path(ctx, param, value: str) -> LatticePath:
    text = (value or "").strip().upper()
    if text in ("-", "0", "EMPTY", "∅"):
        text = ""
    try:
        return LatticePath.parse(text)
    except ValueError as e:
        raise click.BadParameter(str(e)) from e


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        click.echo(text)


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


path_option = click.option(
    "--path", "path", default="", callback=_parse_path, help="Lattice path over {N, E}; empty for the 2x2 array."
)
max_len_option = click.option(
    "--max-len", type=int, default=None, help="Length bound (default 6; at most 8 unless DRH_MAX_LEN is set)."
)
out_option = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write output to a file.")


@click.group()
@click.version_option(package_name="artifact")
def main() -> None:
    """Double rim hook cluster algebras: variables, verification and pictures."""


# -- vars ---------------------------------------------------------------------


def variable_listing(path: LatticePath) -> list[dict]:
    """One record per mutable cluster variable, array cells first.

    Each variable is listed once, at its non-transposed staircase cell.
    """
    st = build_staircase(path)
    arr = build_array(path)
    fill = fill_staircase(path)
    out = []
    for c in sorted(st.drh_cells, key=lambda c: st.to_array(c)):
        i, j = st.to_array(c)
        out.append(
            {
                "source": f"a{i}{j}",
                "cell": list(c),
                "transpose": list(st.transpose(c)),
                "polynomial": fill[c].to_text(),
            }
        )
    l = len(path)
    for r in range(1, l + 1):
        for s in range(r, l + 1):
            c = st.w_cell(r, s)
            mu = Subskeleton(path, r, s)
            out.append(
                {
                    "source": f"W[{r},{s}]",
                    "subskeleton": mu.label(),
                    "cell": list(c),
                    "transpose": list(st.transpose(c)),
                    "polynomial": fill[c].to_text(),
                    "std": std(mu, arr.values).to_json(),
                }
            )
    return out


@main.command("vars")
@path_option
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@out_option
def cmd_vars(path: LatticePath, fmt: str, out: str | None) -> None:
    """List all mutable cluster variables with their staircase cells."""
    records = variable_listing(path)
    if fmt == "json":
        _emit(
            _dump(
                {
                    "schema_version": SCHEMA_VERSION,
                    "command": "vars",
                    "path": str(path),
                    "count": len(records),
                    "variables": records,
                }
            ),
            out,
        )
        return
    lines = [f"path: {path or '(empty)'}", f"variables: {len(records)}"]
    for r in records:
        head = f"{r['source']:<8} cell {tuple(r['cell'])}"
        if "subskeleton" in r:
            head += f"  Subsk {r['subskeleton']}"
        lines.append(f"{head}\n    {r['polynomial']}")
    _emit("\n".join(lines), out)


# -- verify -------------------------------------------------------------------


def _wiring_suite(path: LatticePath) -> dict:
    ext = balance(path)
    runs = [check_drh_wiring_equivalence(path, c) for c in all_correspondences(ext)]
    return {
        "path": str(path),
        "extended": str(ext),
        "choices": len(runs),
        "failures": [r["choice"] for r in runs if not (r["equivalent"] and r["wiring_ok"] and r["valid_diagram"])],
        "ok": all(r["equivalent"] and r["wiring_ok"] and r["valid_diagram"] for r in runs),
    }


def _slim(report: dict) -> dict:
    """Drop bulky per-item lists, keeping counts."""
    out = {}
    for k, v in report.items():
        if k in ("records", "cells", "tested", "skipped_special", "points") and isinstance(v, (list, dict)):
            out[k] = len(v)
        else:
            out[k] = v
    return out


def run_suites(path: LatticePath, suites: tuple, max_len: int | None = None, full: bool = False) -> dict:
    """Run the selected suites and return the versioned report.

    Raises
    ------
    BoundExceeded
        If ``path`` is longer than the resolved bound.
    """
    check_bound(path, max_len)
    runners: dict[str, Callable[[], dict]] = {
        "main-theorem": lambda: verify_main_theorem(path, max_len),
        "decomposition": lambda: verify_decomposition(path),
        "three-by-three": lambda: verify_three_by_three(path),
        "identities": lambda: verify_identities(),
        "lattice-fc": lambda: verify_lattice_fc(path),
        "worm-quivers": lambda: verify_worm_quivers(path, max_len),
        "wiring-equivalence": lambda: _wiring_suite(path),
    }
    results = {}
    for name in SUITES:
        if name in suites:
            rep = runners[name]()
            results[name] = rep if full else _slim(rep)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "path": str(path),
        "suites": results,
        "ok": all(r["ok"] for r in results.values()),
    }


@main.command("verify")
@path_option
@max_len_option
@click.option(
    "--suite",
    "suites",
    multiple=True,
    type=click.Choice(SUITES + ("all",)),
    default=("all",),
    help="Suite to run (repeatable); default all.",
)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--full", is_flag=True, help="Keep per-item records in the JSON report.")
@out_option
def cmd_verify(path: LatticePath, max_len: int | None, suites: tuple, fmt: str, full: bool, out: str | None) -> None:
    """Run verification suites; exit 0 iff all pass."""
    selected = SUITES if "all" in suites else tuple(suites)
    try:
        report = run_suites(path, selected, max_len, full)
    except BoundExceeded as e:
        err = {"schema_version": SCHEMA_VERSION, "command": "verify", "path": str(path), "error": "bound", "message": str(e)}
        if fmt == "json":
            _emit(_dump(err), out)
        click.echo(f"bound error: {e} (cap {cap()})", err=True)
        sys.exit(EXIT_BOUND)
    if fmt == "json":
        _emit(_dump(report), out)
    else:
        lines = [f"path: {path or '(empty)'}"]
        for name, rep in report["suites"].items():
            lines.append(f"{'PASS' if rep['ok'] else 'FAIL'}  {name}")
        lines.append("ok" if report["ok"] else "FAILED")
        _emit("\n".join(lines), out)
    if not report["ok"]:
        sys.exit(EXIT_FAIL)


# -- draw ---------------------------------------------------------------------


@main.command("draw")
@path_option
@click.option("--what", type=click.Choice(["array", "staircase", "quiver", "wiring"]), default="array")
@click.option("--format", "fmt", type=click.Choice(["text", "json", "dot"]), default="text")
@click.option("--choice", default=None, help="Comma-separated correspondence choice for --what wiring.")
@out_option
def cmd_draw(path: LatticePath, what: str, fmt: str, choice: str | None, out: str | None) -> None:
    """Render the array, staircase, initial quiver or wiring diagram."""
    if what == "quiver":
        seed = initial_quiver(path)
        names = {v: seed.names.get(v, _vertex_name(v)) for v in seed.quiver.vertices}
        if fmt == "json":
            q = seed.quiver
            _emit(
                _dump(
                    {
                        "schema_version": SCHEMA_VERSION,
                        "command": "draw",
                        "what": "quiver",
                        "path": str(path),
                        "mutable": [names[v] for v in q.mutable],
                        "frozen": [names[v] for v in q.frozen],
                        "arrows": [[names[u], names[v], m] for u, v, m in q.arrows()],
                        "variables": {names[v]: seed.x[v].to_text() for v in q.vertices},
                    }
                ),
                out,
            )
        else:
            _emit(seed.quiver.to_dot(names), out)
        return
    if what == "wiring":
        ext = balance(path)
        ch = [int(t) for t in choice.split(",")] if choice else None
        try:
            d = drh_to_wiring(ext, ch)
        except ValueError as e:
            raise click.BadParameter(str(e), param_hint="--choice") from e
        if fmt == "json":
            body = diagram_to_dict(d)
            body.update(schema_version=SCHEMA_VERSION, command="draw", what="wiring", path=str(path), extended=str(ext))
            _emit(_dump(body), out)
        else:
            _emit(render_wiring(d), out)
        return
    if what == "staircase":
        _emit(render_staircase(path, values=True), out)
        return
    arr = build_array(path)
    if fmt == "json":
        _emit(
            _dump(
                {
                    "schema_version": SCHEMA_VERSION,
                    "command": "draw",
                    "what": "array",
                    "path": str(path),
                    "p": arr.p,
                    "q": arr.q,
                    "cells": [list(c) for c in arr.sorted_cells()],
                }
            ),
            out,
        )
    else:
        _emit(render_array(arr), out)


def _vertex_name(v) -> str:
    if isinstance(v, tuple) and len(v) == 2 and v[0] == "D":
        return f"Δ{v[1]}"
    if isinstance(v, tuple) and len(v) == 2:
        return f"a{v[0]}{v[1]}"
    return str(v)


if __name__ == "__main__":  # pragma: no cover
    main()
