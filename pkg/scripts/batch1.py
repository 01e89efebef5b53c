"""Synthetic batch-1 datasets: counts and mean runtimes per algorithm.

The random shapes use this package's generator, so intent and pseudo-intent
counts are close to, but not the same as, the published ones; only the
contranominal row must match exactly.  Published counts are printed next to
ours for comparison.

    python scripts/batch1.py --repeat 10 -a lincbo,lincbo1,ncp2,nc2 -o batch1.csv
"""

import argparse
import csv
import statistics
import sys
from dataclasses import dataclass, field
from typing import List, Tuple

from lincbo.context import gen_contranominal, gen_random
from lincbo.dgbasis import AlgorithmId, compute_basis

# (name, |X|, |Y|, d, published intents, published pseudo-intents)
SHAPES = [
    ("100x30-4", 100, 30, 4, 307, 557),
    ("100x50-4", 100, 50, 4, 251, 1115),
    ("10x100-25", 10, 100, 25, 129, 380),
    ("10x100-50", 10, 100, 50, 559, 546),
    ("18x18-17", 18, 18, 17, 262144, 0),
    ("20x100-25", 20, 100, 25, 716, 2269),
    ("20x100-50", 20, 100, 50, 12394, 8136),
    ("50x100-10", 50, 100, 10, 420, 3893),
    ("900x100-4", 900, 100, 4, 2472, 7994),
]


@dataclass
class Batch1Config:
    algorithms: List[str] = field(default_factory=lambda: ["lincbo", "lincbo1", "ncp2", "nc2"])
    repeat: int = 3
    seed: int = 1
    only: Tuple[str, ...] = ()
    output: str = "-"


def make_context(name, nx, ny, d, seed):
    if name == "18x18-17":
        return gen_contranominal(18)
    return gen_random(nx, ny, d, seed)


def run(cfg: Batch1Config):
    rows = []
    for name, nx, ny, d, pub_int, pub_ps in SHAPES:
        if cfg.only and name not in cfg.only:
            continue
        ctx = make_context(name, nx, ny, d, cfg.seed)
        for alg in cfg.algorithms:
            times = []
            for _ in range(cfg.repeat):
                res = compute_basis(ctx, alg)
                times.append(res.wall_time)
            rows.append({
                "dataset": name, "algorithm": AlgorithmId.parse(alg).value,
                "objects": ctx.n_objects, "attributes": ctx.n_attributes,
                "incidences": ctx.n_incidences,
                "intents": res.intent_count, "pseudo_intents": res.pseudo_intent_count,
                "published_intents": pub_int, "published_pseudo_intents": pub_ps,
                "mean_s": round(statistics.fmean(times), 4),
            })
            print(f"{name:10} {alg:8} {rows[-1]['mean_s']:9.4f}s  "
                  f"{res.intent_count}/{res.pseudo_intent_count} (published {pub_int}/{pub_ps})",
                  file=sys.stderr, flush=True)
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("-a", "--algorithms", default="lincbo,lincbo1,ncp2,nc2")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--only", nargs="*", default=(), help="dataset names to run")
    p.add_argument("-o", "--output", default="-")
    a = p.parse_args(argv)
    cfg = Batch1Config(a.algorithms.split(","), a.repeat, a.seed, tuple(a.only), a.output)
    rows = run(cfg)
    out = sys.stdout if cfg.output == "-" else open(cfg.output, "w", newline="")
    w = csv.DictWriter(out, fieldnames=list(rows[0]) if rows else ["dataset"])
    w.writeheader()
    w.writerows(rows)
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
