"""Pair enumeration and config plumbing shared by the sweep scripts."""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import Callable, Iterable, List, Sequence, Tuple, TypeVar

from leibniz.algebra import H1, J1, J2, LeibnizAlgebra, Pair, abelian, direct_sum, sl2
from leibniz.classify import ideals_of_dim

C = TypeVar("C")

BASE = {"a1": lambda: abelian(1), "a2": lambda: abelian(2), "a3": lambda: abelian(3),
        "J1": J1, "J2": J2, "H1": H1, "sl2": sl2}


def algebras(max_dim: int) -> List[Tuple[str, LeibnizAlgebra]]:
    """Catalog algebras plus their pairwise direct sums, up to ``max_dim``."""
    base = [(name, make()) for name, make in BASE.items()]
    out = [(n, g) for n, g in base if g.dim <= max_dim]
    for (n1, g1), (n2, g2) in product(base, repeat=2):
        if n1 <= n2 and g1.dim + g2.dim <= max_dim:
            out.append((f"{n1}+{n2}", direct_sum(g1, g2)))
    return out


def label(n) -> str:
    return ";".join("".join("-" if c == -1 else str(c) for c in row) for row in n.dense_vectors())


def pairs(max_dim: int, coeffs: Sequence[int] = (0, 1),
          zero: bool = False) -> List[Tuple[str, Pair]]:
    out = []
    for name, g in algebras(max_dim):
        if zero:
            out.append((f"{name}|0", Pair(g, g.zero())))
        for k in range(1, g.dim + 1):
            for n in ideals_of_dim(g, k, tuple(coeffs)):
                out.append((f"{name}|{label(n)}", Pair(g, n)))
    return out


def parse_config(cls: type, argv=None, doc: str = ""):
    """Build an argparse parser from the fields of dataclass ``cls``."""
    ap = argparse.ArgumentParser(description=doc)
    for f in dataclasses.fields(cls):
        flag = "--" + f.name.replace("_", "-")
        default = f.default
        if isinstance(default, bool):
            ap.add_argument(flag, action=argparse.BooleanOptionalAction, default=default)
        elif isinstance(default, tuple):
            kind = type(default[0]) if default else str
            ap.add_argument(flag, nargs="+", type=kind, default=list(default))
        else:
            ap.add_argument(flag, type=type(default) if default is not None else str,
                            default=default)
    ns = ap.parse_args(argv)
    kwargs = {f.name: getattr(ns, f.name) for f in dataclasses.fields(cls)}
    for f in dataclasses.fields(cls):
        if isinstance(f.default, tuple):
            kwargs[f.name] = tuple(kwargs[f.name])
    return cls(**kwargs)


def fan_out(fn: Callable, items: Iterable, workers: int) -> list:
    """``map`` over a process pool; results keep the input order."""
    items = list(items)
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=8))


def emit(report: dict, path: str = "") -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
