import sys

from dde_solver.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
