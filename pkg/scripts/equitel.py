"""
Command line entry point
Usage: python scripts/equitel.py --format md table1
"""

import sys
from pathlib import Path

# Add src to path
sys.path.append(str(Path(__file__).parent.parent / 'src'))

from cli_app import main

if __name__ == "__main__":
    sys.exit(main())
