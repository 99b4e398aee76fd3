"""``python -m hopso.vqe``."""

import sys

from hopso.vqe._cli import main

if __name__ == "__main__":
    sys.exit(main())
