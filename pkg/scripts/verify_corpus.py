"""Run the corpus verification and write the JSON report plus a per-group timing table.

usage: python scripts/verify_corpus.py [out.json] [--jobs N] [--conjectures]
"""

import argparse
import time
from collections import defaultdict

from hallmark.harness import Options, report_json, verify_corpus

ap = argparse.ArgumentParser()
ap.add_argument("out", nargs="?", default="report.json")
ap.add_argument("--jobs", type=int, default=1)
ap.add_argument("--conjectures", action="store_true")
args = ap.parse_args()

start = time.perf_counter()
report = verify_corpus(Options(include_conjecture_search=args.conjectures), jobs=args.jobs)
elapsed = time.perf_counter() - start
with open(args.out, "w") as fh:
    fh.write(report_json(report, timings=True))

per_group = defaultdict(float)
for r in report["checks"] + report["informational"]:
    per_group[r["group"]] += r["seconds"]
for name, secs in sorted(per_group.items(), key=lambda kv: -kv[1])[:10]:
    print(f"{name:<10} {secs:7.2f} s")
print(f"aggregate {report['aggregate']} in {elapsed:.1f} s, report in {args.out}")
