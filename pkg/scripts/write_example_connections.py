#!/usr/bin/env python3
"""Write the example connection files used in the README and the docs.

Creates connections/*.json relative to the repository root (or a directory
given as the first argument).
"""

import json
import pathlib
import sys
from fractions import Fraction

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from ipd.connection import canonicalize, connection_to_json
from ipd.exact import RationalFunction
from ipd.families import bessel_connection, gamma_connection, gaussian_connection


def main() -> int:
    root = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else (
        pathlib.Path(__file__).resolve().parent.parent / "connections"
    )
    root.mkdir(parents=True, exist_ok=True)
    examples = {
        "gaussian": gaussian_connection(),
        "gamma_half": gamma_connection(Fraction(1, 2)),
        "gamma_third": gamma_connection(Fraction(1, 3)),
        "bessel_z1": bessel_connection(Fraction(1)),
        "trivial": canonicalize(RationalFunction.zero(), label="trivial"),
    }
    for name, c in examples.items():
        path = root / f"{name}.json"
        with open(path, "w") as fh:
            json.dump(connection_to_json(c), fh, indent=2)
            fh.write("\n")
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
