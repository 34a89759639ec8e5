#!/usr/bin/env python3
"""Regenerate the committed fixture pages from the corpus module."""

import sys
from pathlib import Path

from consentscan.cli import main

if __name__ == "__main__":
    pages = Path(__file__).resolve().parent.parent / "src" / "consentscan" / "fixtures" / "pages"
    sys.exit(main(["serve-fixtures", "--export", str(pages)]))
