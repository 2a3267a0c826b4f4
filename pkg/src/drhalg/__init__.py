"""Double rim hook cluster algebras: exact construction and verification."""

from __future__ import annotations

__version__ = "0.1.0"
