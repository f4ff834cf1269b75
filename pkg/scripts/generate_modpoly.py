"""Write classical modular polynomials to ``data/phi`` in ``[i,j] c`` format.

Development helper only: needs ``cypari2`` (``pip install cypari2``), which the
library itself never imports.

    python scripts/generate_modpoly.py 2 3 5 7 11 13 23 37 47
"""
import argparse
from pathlib import Path

import cypari2


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("levels", nargs="+", type=int)
    parser.add_argument("--out", default=Path(__file__).resolve().parents[1] / "data" / "phi", type=Path)
    args = parser.parse_args()

    pari = cypari2.Pari()
    pari.allocatemem(2 * 10**9, silent=True)
    args.out.mkdir(parents=True, exist_ok=True)
    for n in args.levels:
        phi = pari.polmodular(n)  # variables x, y; symmetric
        lines = [f"# classical modular polynomial Phi_{n}, entries [i,j] with i >= j"]
        for i in range(n + 2):
            cx = pari.polcoef(phi, i, "x")
            for j in range(i + 1):
                c = pari.polcoef(cx, j, "y")
                if c != 0:
                    lines.append(f"[{i},{j}] {c}")
        path = args.out / f"phi_{n}.txt"
        path.write_text("\n".join(lines) + "\n")
        print(f"wrote {path} ({len(lines) - 1} entries)")


if __name__ == "__main__":
    main()
