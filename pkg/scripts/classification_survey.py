"""Defect and matched case for every nilpotent pair; lists the inconsistent ones.

A pair is inconsistent when its defect and its structural case disagree. The
defect-3 converse fails on (J1, J1), which this survey finds along with any
relatives in the enumeration.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass

from common import emit, fan_out, pairs, parse_config
from leibniz.algebra import is_nilpotent
from leibniz.classify import theorem42_verdict


@dataclass(frozen=True)
class Config:
    max_dim: int = 5
    coeffs: tuple = (0, 1)
    workers: int = 1
    output: str = ""


def _one(item):
    name, pair = item
    v = theorem42_verdict(pair)
    return name, v.defect, v.matched_case, v.consistent, v.hl2_dim


def run(cfg: Config) -> dict:
    items = [(n, p) for n, p in pairs(cfg.max_dim, cfg.coeffs) if is_nilpotent(p.g)]
    results = fan_out(_one, items, cfg.workers)
    table = Counter((d, case) for _, d, case, _, _ in results)
    odd = [{"pair": n, "defect": d, "case": case, "hl2": h}
           for n, d, case, ok, h in results if not ok]
    return {"config": asdict(cfg), "pairs": len(results),
            "by_defect_and_case": [{"defect": d, "case": c, "count": k}
                                   for (d, c), k in sorted(table.items())],
            "inconsistent": odd}


if __name__ == "__main__":
    cfg = parse_config(Config, doc=__doc__)
    emit(run(cfg), cfg.output)
