"""Compare the polarization mixed volume with the interpolation oracle on random queries."""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass

from newtonids.mixed_volume import MVQuery, mixed_volume_coconvex, mv_interpolation_oracle
from newtonids.newton import newton_polyhedron


@dataclass
class Config:
    seed: int = 0
    queries: int = 40
    min_dim: int = 2
    max_dim: int = 4
    max_exponent: int = 3
    max_slots: int = 3


def random_polyhedron(rng: random.Random, d: int, hi: int):
    pts = [tuple(rng.randint(1, hi) if j == i else 0 for j in range(d)) for i in range(d)]
    pts += [tuple(rng.randint(0, hi) for _ in range(d)) for _ in range(rng.randint(0, 2))]
    return newton_polyhedron(pts, d)


def random_query(rng: random.Random, cfg: Config) -> MVQuery:
    d = rng.randint(cfg.min_dim, cfg.max_dim)
    r = rng.randint(1, min(cfg.max_slots, d))
    cuts = sorted(rng.sample(range(1, d), r - 1))
    powers = [b - a for a, b in zip([0] + cuts, cuts + [d])]
    return MVQuery.build([(random_polyhedron(rng, d, cfg.max_exponent), p) for p in powers])


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        p.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    cfg = Config(**vars(p.parse_args(argv)))
    rng = random.Random(cfg.seed)
    mismatches = 0
    for i in range(cfg.queries):
        q = random_query(rng, cfg)
        t0 = time.perf_counter()
        a = mixed_volume_coconvex(q)
        t1 = time.perf_counter()
        b = mv_interpolation_oracle(q)
        t2 = time.perf_counter()
        mismatches += a != b
        shape = "*".join(f"B{j}^{k}" for j, (_, k) in enumerate(q.slots))
        print(f"{i:3d} d={q.dim} {shape:18s} MV={a!s:8s} oracle={b!s:8s} {'ok' if a == b else 'MISMATCH'}  "
              f"[{t1 - t0:.2f}s / {t2 - t1:.2f}s]")
    print(f"{cfg.queries - mismatches}/{cfg.queries} agree")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
