"""Regenerate the spectrum regression files in tests/golden/.

Run only when a deliberate numerical change is made; the regression test
compares against whatever is checked in.
"""

import sys
from pathlib import Path

from rabitunnel.cli import main

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"

if __name__ == "__main__":
    sys.exit(main(["reproduce-figure", "1", "--out", str(GOLDEN)]))
