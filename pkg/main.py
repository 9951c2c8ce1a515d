"""
Main application entry point
"""

import sys

from derivations.cli import run

if __name__ == '__main__':
    sys.exit(run(sys.argv[1:]))
