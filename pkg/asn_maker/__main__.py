"""Main entry point for the ASN Maker package.

This module allows running the command-line interface as a Python module:
python -m asn_maker
"""

import sys

from asn_maker.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
