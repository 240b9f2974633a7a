"""Entry point for running the module directly with python -m noncompact_kernels."""

import sys

from noncompact_kernels.cli import main

if __name__ == "__main__":
    sys.exit(main())
