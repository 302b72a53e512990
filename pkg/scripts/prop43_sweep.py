"""HL2 of every 2-dim ideal of e + a(q), grouped by table row."""
from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass

from common import emit, parse_config
from leibniz.classify import family_algebra, ideals_of_dim, prop43_table


@dataclass(frozen=True)
class Config:
    e: tuple = ("J1", "J2", "H1")
    q_max: int = 2
    coeffs: tuple = (0, 1, -1)
    output: str = ""


def run(cfg: Config) -> dict:
    rows = []
    for e in cfg.e:
        for q in range(cfg.q_max + 1):
            seen, bad, expected, actual = Counter(), Counter(), {}, {}
            for n in ideals_of_dim(family_algebra(e, q), 2, cfg.coeffs):
                t = prop43_table(e, q, n)
                seen[t.row] += 1
                expected[t.row] = t.expected
                actual.setdefault(t.row, set()).add(t.actual)
                bad[t.row] += not t.matches
            for row in sorted(seen):
                rows.append({"e": e, "q": q, "row": row, "ideals": seen[row],
                             "expected": expected[row], "observed": sorted(actual[row]),
                             "mismatches": bad[row]})
    return {"config": asdict(cfg), "rows": rows,
            "all_match": all(r["mismatches"] == 0 for r in rows)}


if __name__ == "__main__":
    cfg = parse_config(Config, doc=__doc__)
    rep = run(cfg)
    emit(rep, cfg.output)
    raise SystemExit(0 if rep["all_match"] else 1)
