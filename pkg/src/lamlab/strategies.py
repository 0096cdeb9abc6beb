"""Instrumented reducers: normal order, applicative order, weak machines.

All reducers take an explicit ``fuel`` and return an :class:`Outcome`; running
out of fuel is a reported status, never an exception.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

from .terms import Abs, App, Term, Var, instantiate, is_identity, is_redex, size, subterms

NORMALIZED = "normalized"
FUEL_EXHAUSTED = "fuel_exhausted"


@dataclass
class ReductionStats:
    beta_steps: int = 0
    machine_transitions: int = 0
    closures_opened: int = 0
    peak_term_size: int = 0
    fuel_used: int = 0
    identity_firings: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class Outcome:
    result: Term
    stats: ReductionStats = field(default_factory=ReductionStats)
    status: str = NORMALIZED

    @property
    def normalized(self) -> bool:
        return self.status == NORMALIZED


def count_redexes(t: Term) -> int:
    return sum(1 for u in subterms(t) if is_redex(u))


# ---------------------------------------------------------------------------
# One-step tree reducers


def _fire(t: App, stats: ReductionStats) -> Term:
    stats.beta_steps += 1
    if is_identity(t.fun):
        stats.identity_firings += 1
    return instantiate(t.fun.body, t.arg)


def step_normal(t: Term, stats: ReductionStats) -> Optional[Term]:
    """Contract the leftmost-outermost redex; ``None`` if ``t`` is normal."""
    if isinstance(t, Var):
        return None
    if isinstance(t, Abs):
        b = step_normal(t.body, stats)
        return None if b is None else Abs(t.binder, b)
    if isinstance(t.fun, Abs):
        return _fire(t, stats)
    f = step_normal(t.fun, stats)
    if f is not None:
        return App(f, t.arg)
    a = step_normal(t.arg, stats)
    return None if a is None else App(t.fun, a)


def step_applicative(t: Term, stats: ReductionStats) -> Optional[Term]:
    """Rightmost-innermost step: arguments are normalized before the redex fires.

    A redex ``(\\x.M) N`` fires as soon as ``N`` is normal, before any redex
    inside ``M``; this is the strict strong order under which ``n two I I``
    costs linear work.
    """
    if isinstance(t, Var):
        return None
    if isinstance(t, Abs):
        b = step_applicative(t.body, stats)
        return None if b is None else Abs(t.binder, b)
    a = step_applicative(t.arg, stats)
    if a is not None:
        return App(t.fun, a)
    if isinstance(t.fun, Abs):
        return _fire(t, stats)
    f = step_applicative(t.fun, stats)
    return None if f is None else App(f, t.arg)


def _run(t: Term, fuel: int, step: Callable[[Term, ReductionStats], Optional[Term]]) -> Outcome:
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    stats = ReductionStats(peak_term_size=size(t))
    while True:
        if stats.beta_steps >= fuel:
            # fuel is spent; report whether t happens to be normal already
            probe = ReductionStats()
            status = NORMALIZED if step(t, probe) is None else FUEL_EXHAUSTED
            stats.fuel_used = stats.beta_steps
            return Outcome(t, stats, status)
        nxt = step(t, stats)
        if nxt is None:
            stats.fuel_used = stats.beta_steps
            return Outcome(t, stats, NORMALIZED)
        t = nxt
        stats.machine_transitions += 1
        stats.peak_term_size = max(stats.peak_term_size, size(t))


def reduce_normal_order(t: Term, fuel: int = 10**7) -> Outcome:
    return _run(t, fuel, step_normal)


def reduce_applicative(t: Term, fuel: int = 10**7) -> Outcome:
    return _run(t, fuel, step_applicative)


# ---------------------------------------------------------------------------
# Weak environment machine (Krivine machine, optionally with update markers)


class OutOfFuel(Exception):
    pass


class _Thunk:
    __slots__ = ("term", "env", "value")

    def __init__(self, term: Term, env):
        self.term = term
        self.env = env
        self.value = None  # (term, env) in weak head normal form


class _Update:
    __slots__ = ("thunk",)

    def __init__(self, thunk: _Thunk):
        self.thunk = thunk


def _lookup(env, index: int) -> _Thunk:
    for _ in range(index):
        env = env[1]
    return env[0]


class _Machine:
    def __init__(self, by_need: bool, fuel: int):
        self.by_need = by_need
        self.fuel = fuel
        self.stats = ReductionStats()

    def tick(self):
        self.stats.machine_transitions += 1
        if self.stats.machine_transitions > self.fuel:
            raise OutOfFuel

    def whnf(self, term: Term, env) -> tuple[Term, object, list]:
        """Evaluate to weak head normal form.

        Returns ``(term, env, args)``: either an abstraction closure with no
        pending arguments, or a free-variable head applied to ``args``.
        """
        stack: list = []
        stats = self.stats
        while True:
            self.tick()
            stats.peak_term_size = max(stats.peak_term_size, len(stack))
            if isinstance(term, App):
                stack.append(_Thunk(term.arg, env))
                term = term.fun
            elif isinstance(term, Var):
                if term.index is None:
                    # stuck on a free head: memoize neutral values for pending updates
                    args: list = []
                    while stack:
                        item = stack.pop()
                        if isinstance(item, _Update):
                            item.thunk.value = _neutral(term.name, list(args))
                        else:
                            args.append(item)
                    return term, None, args
                th = _lookup(env, term.index)
                if th.value is not None:
                    term, env = th.value
                    continue
                if isinstance(th.term, App):
                    stats.closures_opened += 1
                if self.by_need:
                    stack.append(_Update(th))
                term, env = th.term, th.env
            else:
                if stack and isinstance(stack[-1], _Update):
                    stack.pop().thunk.value = (term, env)
                    continue
                if not stack:
                    return term, env, []
                arg = stack.pop()
                stats.beta_steps += 1
                if is_identity(term):
                    stats.identity_firings += 1
                env = (arg, env)
                term = term.body

    def force(self, th: _Thunk) -> tuple[Term, object, list]:
        if th.value is not None:
            return self.whnf(*th.value)
        return self.whnf(th.term, th.env)

    def reify(self, term: Term, env, args: list) -> Term:
        """Read a weak value back as a term, forcing environment thunks to
        weak head normal form but never reducing under the abstraction.

        Values reachable from a top-level run are closed with respect to
        de Bruijn indices, so no shifting is needed.
        """
        if isinstance(term, Var):
            out: Term = term
            for a in args:
                out = App(out, self.reify(*self.force(a)))
            return out

        def go(u: Term, local: int) -> Term:
            if isinstance(u, Var):
                if u.index is None or u.index < local:
                    return u
                return self.reify(*self.force(_lookup(env, u.index - local)))
            if isinstance(u, Abs):
                return Abs(u.binder, go(u.body, local + 1))
            return App(go(u.fun, local), go(u.arg, local))

        return go(term, 0)


def _neutral(name: str, args: list) -> tuple[Term, object]:
    # x a1 .. ak as a closure whose environment holds the argument thunks
    term: Term = Var(name)
    env = None
    for a in reversed(args):
        env = (a, env)
    for i in range(len(args)):
        term = App(term, Var("_", i))
    return term, env


def evaluate_weak(t: Term, mode: str = "by_need", fuel: int = 10**7) -> Outcome:
    """Weak evaluation; never reduces under an abstraction.

    ``mode`` is ``"by_name"`` (plain Krivine machine) or ``"by_need"``
    (argument thunks are updated with their weak head normal form).
    Fuel bounds machine transitions.
    """
    if mode not in ("by_name", "by_need"):
        raise ValueError(f"unknown weak mode {mode!r}")
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    m = _Machine(mode == "by_need", fuel)
    try:
        term, env, args = m.whnf(t, None)
        result = m.reify(term, env, args)
        status = NORMALIZED
    except OutOfFuel:
        result, status = t, FUEL_EXHAUSTED
    m.stats.fuel_used = min(m.stats.machine_transitions, fuel)
    return Outcome(result, m.stats, status)
