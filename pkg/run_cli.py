"""Run the command-line front end from the repository root."""

import sys

from app.main import main

if __name__ == "__main__":
    sys.exit(main())
