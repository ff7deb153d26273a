#!/usr/bin/env python3
"""Analyze every connection file in connections/ and print a summary table.

Run scripts/write_example_connections.py first if the directory is missing.
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from ipd.connection import connection_from_json
from ipd.report import generate_report


def main() -> int:
    root = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else (
        pathlib.Path(__file__).resolve().parent.parent / "connections"
    )
    files = sorted(root.glob("*.json"))
    if not files:
        print(f"no connection files in {root}; run write_example_connections.py", file=sys.stderr)
        return 2
    failures = 0
    for path in files:
        with open(path) as fh:
            c = connection_from_json(json.load(fh))
        doc = generate_report(c)
        dims = doc["dims"]
        ok = all(ch["pass"] for ch in doc["checks"])
        failures += 0 if ok else 1
        det = doc["periods"]["determinant"]
        det_txt = "-" if det is None else f"{complex(det[0], det[1]):.6g}"
        print(
            f"{path.stem:12s} h0={dims['h0']} h1={dims['h1']} "
            f"cycles={len(doc['cycles'])} rank={doc['periods']['rank']} "
            f"det={det_txt:24s} checks={'all pass' if ok else 'FAIL'}"
        )
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
