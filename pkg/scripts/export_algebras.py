#!/usr/bin/env python3
"""Write the bundled example algebras as JSON documents for CLI use.

Usage: python scripts/export_algebras.py [OUTDIR]   (default ./algebras)
"""

import json
import pathlib
import sys

from maltsev.algebras import dump_algebra
from maltsev.catalog import bundled_algebras


def main() -> int:
    outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "algebras")
    outdir.mkdir(parents=True, exist_ok=True)
    for name, alg in bundled_algebras().items():
        path = outdir / f"{name}.json"
        path.write_text(json.dumps(dump_algebra(alg), indent=2) + "\n")
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
