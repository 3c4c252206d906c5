import sys

from dim_agt.cli import main


if __name__ == "__main__":
    sys.exit(main())
