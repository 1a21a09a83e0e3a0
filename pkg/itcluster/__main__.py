"""Main entry point for the itcluster package.

Run with: `python -m itcluster <subcommand> ...`.
"""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
