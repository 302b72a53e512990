"""Compare every HL2 method on all enumerated pairs and report disagreements."""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass

from common import emit, fan_out, pairs, parse_config
from leibniz.homology import hl2_all, methods_agree


@dataclass(frozen=True)
class Config:
    max_dim: int = 5
    coeffs: tuple = (0, 1)
    cap: int = 10 ** 6
    workers: int = 1
    output: str = ""


def _one(item):
    name, pair, cap = item
    r = hl2_all(pair, cap=cap)
    return name, r, methods_agree(r)


def run(cfg: Config) -> dict:
    t0 = time.perf_counter()
    items = [(n, p, cfg.cap) for n, p in pairs(cfg.max_dim, cfg.coeffs)]
    results = fan_out(_one, items, cfg.workers)
    bad = [{"pair": n, "methods": r} for n, r, ok in results if not ok]
    central = sum(isinstance(r.get("tau"), int) for _, r, _ in results)
    return {"config": asdict(cfg), "pairs": len(results), "central": central,
            "disagreements": bad, "seconds": round(time.perf_counter() - t0, 2)}


if __name__ == "__main__":
    cfg = parse_config(Config, doc=__doc__)
    rep = run(cfg)
    emit(rep, cfg.output)
    raise SystemExit(1 if rep["disagreements"] else 0)
