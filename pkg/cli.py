"""Command-line entry point for the blocked-plan toolkit."""

import sys

from src.interface.cli import main

if __name__ == "__main__":
    sys.exit(main())
