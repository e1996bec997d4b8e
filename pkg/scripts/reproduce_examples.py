"""Recompute the worked examples shipped in germs/ and compare with the expected values."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from newtonids.germfile import load_germ
from newtonids.invariants import (
    DeterminantalGerm,
    chi_milnor_fiber,
    euler_obstruction,
    euler_obstruction_from_polar,
    euler_obstruction_simplex,
    morse_points,
    multiplicity,
)
from newtonids.newton import newton_of_polynomial

GERMS = Path(__file__).resolve().parent.parent / "germs"


@dataclass
class Config:
    germs: Path = GERMS
    truncation: int | None = None
    skip_slow: bool = False


def _g(cfg, name):
    gf = load_germ(cfg.germs / f"{name}.germ")
    return DeterminantalGerm(gf.matrix, gf.rank), gf


def cases(cfg: Config):
    t = cfg.truncation
    yield "mult Lambda_11", lambda: multiplicity(_g(cfg, "lambda11")[0], t), 3
    yield "mult cusp A", lambda: multiplicity(_g(cfg, "cusp_A")[0], t), 2
    yield "mult cusp B", lambda: multiplicity(_g(cfg, "cusp_B")[0], t), 1
    yield "eu-polar [2,1]", lambda: euler_obstruction_from_polar([2, 1]), 1
    yield "eu hypersurface", lambda: euler_obstruction(_g(cfg, "hypersurface")[0], t), 0
    yield "eu-simplex 4 2 3", lambda: euler_obstruction_simplex(4, 2, 3), -1
    yield "eu normalized Lambda_11", lambda: euler_obstruction(_g(cfg, "lambda11_normalized")[0], t), -1
    if not cfg.skip_slow:
        yield "eu Omega_2", lambda: euler_obstruction(_g(cfg, "omega2")[0], t), 2

        def omega_chi():
            g, gf = _g(cfg, "omega2")
            return chi_milnor_fiber(g, newton_of_polynomial(gf.function), t)

        def omega_nreg():
            g, gf = _g(cfg, "omega2")
            return morse_points(g, newton_of_polynomial(gf.function), _g(cfg, "omega2_fiber")[0], truncation=t)

        yield "chi Omega_2, quadratic f", omega_chi, None
        yield "n_reg Omega_2, quadratic f", omega_nreg, None


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--germs", type=Path, default=GERMS)
    p.add_argument("--truncation", type=int)
    p.add_argument("--skip-slow", action="store_true")
    cfg = Config(**vars(p.parse_args(argv)))
    failed = 0
    for label, fn, want in cases(cfg):
        start = time.perf_counter()
        got = fn()
        ok = want is None or got == want
        failed += not ok
        expect = "" if want is None else f" (expected {want})"
        print(f"{'ok  ' if ok else 'FAIL'} {label:30s} {got}{expect}  [{time.perf_counter() - start:.2f}s]")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
