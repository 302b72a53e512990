"""Relative Kunneth identity on every sum of two small pairs, zero ideals included."""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass

from common import emit, fan_out, pairs, parse_config
from leibniz.homology import kunneth_check


@dataclass(frozen=True)
class Config:
    max_dim: int = 3
    coeffs: tuple = (0, 1)
    workers: int = 1
    output: str = ""


def _one(item):
    (n1, p1), (n2, p2) = item
    r = kunneth_check(p1, p2)
    return f"{n1} + {n2}", r.direct, r.rhs


def run(cfg: Config) -> dict:
    ps = pairs(cfg.max_dim, cfg.coeffs, zero=True)
    results = fan_out(_one, itertools.combinations_with_replacement(ps, 2), cfg.workers)
    bad = [{"sum": n, "direct": d, "rhs": r} for n, d, r in results if d != r]
    return {"config": asdict(cfg), "sums": len(results), "failures": bad}


if __name__ == "__main__":
    cfg = parse_config(Config, doc=__doc__)
    rep = run(cfg)
    emit(rep, cfg.output)
    raise SystemExit(1 if rep["failures"] else 0)
