"""Run the seeded property suite and write the JSON report."""
import argparse
import sys

from ortho_lab.cli.suite import MODULES, SuiteConfig, run_suite

ap = argparse.ArgumentParser()
ap.add_argument("--seed", type=int, default=0)
ap.add_argument("--count", type=int, default=20)
ap.add_argument("--module", action="append", choices=MODULES)
ap.add_argument("--out", default="-")
args = ap.parse_args()

report = run_suite(SuiteConfig(args.seed, args.count, modules=tuple(args.module or MODULES)))
text = report.dumps()
if args.out == "-":
    sys.stdout.write(text)
else:
    with open(args.out, "w") as fh:
        fh.write(text)
for r in report.results:
    print(f"{r.module:>10} {r.name:<24} {r.passed}/{r.instances}", file=sys.stderr)
sys.exit(0 if report.ok else 1)
