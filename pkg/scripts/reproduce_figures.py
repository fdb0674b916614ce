"""Write the data behind every figure into one directory per figure.

    python3 scripts/reproduce_figures.py [OUT_DIR]
"""

import sys
import time
from pathlib import Path

from rabitunnel.cli import FIGURES, main


def run(out_root):
    status = 0
    for figure in sorted(FIGURES):
        start = time.perf_counter()
        code = main(["reproduce-figure", figure, "--out", str(out_root / f"fig{figure}")])
        print(f"figure {figure}: exit {code} in {time.perf_counter() - start:.2f} s", file=sys.stderr)
        status = status or code
    return status


if __name__ == "__main__":
    sys.exit(run(Path(sys.argv[1] if len(sys.argv) > 1 else "figures")))
