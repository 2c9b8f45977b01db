"""Module entry point, mirrors the console script."""

import sys

from .cli import run

if __name__ == "__main__":
    sys.exit(run())
