import sys

from dunkl_bose.cli import main

if __name__ == "__main__":
    sys.exit(main())
