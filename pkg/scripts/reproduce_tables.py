"""Reproduce both sharpness tables and write them as text, JSON and CSV.

    python scripts/reproduce_tables.py --out results/
    python scripts/reproduce_tables.py --caps hamming_vertices=64 --graph6 doro=doro.g6
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from lichsharp.corpus import Caps, format_rows, reproduce_tables, rows_csv, rows_json
from lichsharp.transport import default_workers


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--caps", default="")
    ap.add_argument("--graph6", action="append", default=[], metavar="NAME=PATH")
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--threads", type=int, default=default_workers())
    args = ap.parse_args(argv)

    extra = dict(item.split("=", 1) for item in args.graph6)
    start = time.perf_counter()
    rows = reproduce_tables(Caps.parse(args.caps), {k: Path(v) for k, v in extra.items()}, workers=args.threads)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "tables.txt").write_text(format_rows(rows) + "\n")
    (args.out / "tables.json").write_text(rows_json(rows) + "\n")
    (args.out / "tables.csv").write_text(rows_csv(rows))
    bad = [r for r in rows if not r.match]
    print(format_rows(rows))
    print(f"{len(rows)} rows, {len(bad)} mismatches, {time.perf_counter() - start:.0f}s -> {args.out}/")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
