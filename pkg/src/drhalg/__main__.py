from drhalg.cli import main

main()
