from derivations.cli import main

main()
