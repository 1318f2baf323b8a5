"""Smallest bound - lhs margin of each separation lemma over random M4 instances."""
import argparse
import random

import numpy as np

from ortho_lab import matalg as ma
from ortho_lab import properties as props

ap = argparse.ArgumentParser()
ap.add_argument("--n", type=int, default=2000)
ap.add_argument("--seed", type=int, default=0)
args = ap.parse_args()

ctx = props.Ctx(np.random.default_rng(args.seed), random.Random(args.seed))
margins = {k: [] for k in ma.SEPARATION_KINDS}
for _ in range(args.n):
    inst = props.separation_instance(ctx)
    if inst is None:
        continue
    kind, eps, b, c, q, lam, p = inst
    r = ma.check_separation_lemma(kind, b, c, q, eps, lam, p)
    if r.hypothesis:
        margins[kind].append(r.margin)

print(f"{'kind':<6}{'count':>7}{'min margin':>14}{'median':>12}")
for k, m in margins.items():
    if m:
        print(f"{k:<6}{len(m):>7}{min(m):>14.3e}{float(np.median(m)):>12.3e}")
