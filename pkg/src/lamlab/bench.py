"""Uniform engine runner and benchmark tables."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Optional

from . import corpus, degree, sharing, strategies
from .terms import Term, size, term1, term2

STRATEGIES = ("normal", "applicative", "cbname", "cbneed", "optimal", "parallel")
FAMILIES = ("term1", "term2", "corpus")
DEFAULT_FUEL = 10**7

NORMALIZED = "normalized"
FUEL_EXHAUSTED = "fuel_exhausted"
UNTYPABLE_SKIP = "untypable-skip"


@dataclass
class EngineRun:
    strategy: str
    result: Optional[Term]
    status: str
    stats: dict

    @property
    def count(self) -> int:
        s = self.stats
        if self.strategy == "optimal":
            return s["beta_interactions"]
        if self.strategy == "parallel":
            return s["parallel_steps"]
        return s["beta_steps"]


def run_engine(t: Term, strategy: str, fuel: int = DEFAULT_FUEL) -> EngineRun:
    if strategy == "normal":
        o = strategies.reduce_normal_order(t, fuel)
    elif strategy == "applicative":
        o = strategies.reduce_applicative(t, fuel)
    elif strategy in ("cbname", "cbneed"):
        o = strategies.evaluate_weak(t, "by_name" if strategy == "cbname" else "by_need", fuel)
    elif strategy == "optimal":
        nf, st, status = sharing.reduce_optimal(t, fuel)
        return EngineRun(strategy, nf, status, st.as_dict())
    elif strategy == "parallel":
        if not degree.typable(t):
            return EngineRun(strategy, None, UNTYPABLE_SKIP, {"parallel_steps": 0, "peak_term_size": size(t)})
        try:
            nf, steps = degree.parallel_normalize(t, fuel)
        except degree.FuelExhausted as e:
            return EngineRun(strategy, e.term, FUEL_EXHAUSTED, {"parallel_steps": e.steps, "peak_term_size": size(e.term)})
        return EngineRun(strategy, nf, NORMALIZED, {"parallel_steps": steps, "peak_term_size": size(nf)})
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return EngineRun(strategy, o.result, o.status, o.stats.as_dict())


@dataclass
class BenchmarkRow:
    term_id: str
    n: int
    strategy: str
    beta_or_interaction_count: int
    bookkeeping: int
    duplications: int
    identity_firings: int
    peak_size: int
    wall_time: float
    status: str
    normal_form: str = ""


ROW_FIELDS = [f.name for f in fields(BenchmarkRow)]


def family_term(family: str, n: int) -> Term:
    if family == "term1":
        return term1(n)
    if family == "term2":
        return term2(n)
    if family == "corpus":
        return _corpus()[n]
    raise ValueError(f"unknown benchmark family {family!r}")


_CORPUS: list[Term] = []


def _corpus() -> list[Term]:
    if not _CORPUS:
        _CORPUS.extend(corpus.generate(60, seed=7, max_size=30))
    return _CORPUS


def bench_row(family: str, n: int, strategy: str, fuel: int = DEFAULT_FUEL, timing: bool = False) -> BenchmarkRow:
    from .terms import pretty

    t = family_term(family, n)
    start = time.perf_counter()
    run = run_engine(t, strategy, fuel)
    elapsed = time.perf_counter() - start
    s = run.stats
    if strategy == "optimal":
        peak = s["peak_nodes"]
    else:
        peak = s.get("peak_term_size", 0)
    return BenchmarkRow(
        term_id=family,
        n=n,
        strategy=strategy,
        beta_or_interaction_count=run.count,
        bookkeeping=s.get("bookkeeping_interactions", 0),
        duplications=s.get("duplications", 0),
        identity_firings=s.get("identity_firings", 0),
        peak_size=peak,
        wall_time=round(elapsed, 6) if timing else 0.0,
        status=run.status,
        normal_form=pretty(run.result) if run.result is not None and run.status == NORMALIZED else "",
    )


def bench(family: str, ns: Iterable[int], strategies_: Iterable[str], fuel: int = DEFAULT_FUEL,
          timing: bool = False) -> list[BenchmarkRow]:
    """One row per ``(n, strategy)``, ordered by ``n`` then strategy as given."""
    ns = list(ns)
    if not ns:
        raise ValueError("empty n range")
    strategies_ = list(strategies_)
    return [bench_row(family, n, s, fuel, timing) for n in ns for s in strategies_]


def rows_to_csv(rows: list[BenchmarkRow]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=ROW_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(asdict(r))
    return buf.getvalue()


def rows_from_csv(text: str) -> list[BenchmarkRow]:
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        out.append(_coerce(rec))
    return out


def rows_to_json(rows: list[BenchmarkRow]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2, sort_keys=False) + "\n"


def rows_from_json(text: str) -> list[BenchmarkRow]:
    return [_coerce(rec) for rec in json.loads(text)]


def _coerce(rec: dict) -> BenchmarkRow:
    kw = {}
    for f in fields(BenchmarkRow):
        v = rec[f.name]
        if f.type in ("int", int):
            v = int(v)
        elif f.type in ("float", float):
            v = float(v)
        kw[f.name] = v
    return BenchmarkRow(**kw)


def parse_range(text: str) -> list[int]:
    """``"2..6"`` (inclusive), ``"3"`` or ``"1,4,5"``."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x.strip()]
