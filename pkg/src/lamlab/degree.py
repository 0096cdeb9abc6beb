"""Simple types, redex degrees and Takahashi parallel reduction."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Union

from .terms import Abs, App, Term, Var, instantiate, is_redex


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Arrow:
    domain: "SimpleType"
    codomain: "SimpleType"

    def __str__(self):
        dom = str(self.domain)
        if isinstance(self.domain, Arrow):
            dom = f"({dom})"
        return f"{dom} -> {self.codomain}"


SimpleType = Union[Atom, Arrow]


class Untypable(Exception):
    pass


@dataclass(frozen=True)
class TypedRedexReport:
    position: tuple[int, ...]  # path from the root: 0 = function/body, 1 = argument
    redex_type: SimpleType
    degree: int


def degree_of_type(t: SimpleType) -> int:
    if isinstance(t, Atom):
        return 1
    return max(degree_of_type(t.domain), degree_of_type(t.codomain)) + 1


# ---------------------------------------------------------------------------
# Unification over type variables (integers) and arrows (tuples)


class _Unifier:
    def __init__(self):
        self.parent: dict[int, object] = {}
        self.counter = itertools.count()

    def fresh(self) -> int:
        return next(self.counter)

    def find(self, t):
        while isinstance(t, int) and t in self.parent:
            t = self.parent[t]
        return t

    def occurs(self, v: int, t) -> bool:
        t = self.find(t)
        if isinstance(t, int):
            return t == v
        return self.occurs(v, t[0]) or self.occurs(v, t[1])

    def unify(self, a, b):
        a, b = self.find(a), self.find(b)
        if a == b and isinstance(a, int):
            return
        if isinstance(a, int):
            if self.occurs(a, b):
                raise Untypable("occurs check failed")
            self.parent[a] = b
        elif isinstance(b, int):
            self.unify(b, a)
        else:
            self.unify(a[0], b[0])
            self.unify(a[1], b[1])

    def resolve(self, t, names: dict[int, str]) -> SimpleType:
        t = self.find(t)
        if isinstance(t, int):
            if t not in names:
                names[t] = _atom_name(len(names))
            return Atom(names[t])
        return Arrow(self.resolve(t[0], names), self.resolve(t[1], names))


def _atom_name(k: int) -> str:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return letters[k % 26] + ("" if k < 26 else str(k // 26))


def _constrain(t: Term):
    """Collect type variables for every subterm; free variables get fresh atoms."""
    u = _Unifier()
    free: dict[str, int] = {}
    redexes: list[tuple[tuple[int, ...], object]] = []

    def go(term: Term, ctx: list, path: tuple[int, ...]):
        if isinstance(term, Var):
            if term.index is None:
                if term.name not in free:
                    free[term.name] = u.fresh()
                return free[term.name]
            return ctx[-1 - term.index]
        if isinstance(term, Abs):
            a = u.fresh()
            b = go(term.body, ctx + [a], path + (0,))
            return (a, b)
        f = go(term.fun, ctx, path + (0,))
        x = go(term.arg, ctx, path + (1,))
        r = u.fresh()
        u.unify(f, (x, r))
        if isinstance(term.fun, Abs):
            redexes.append((path, f))
        return r

    root = go(t, [], ())
    return u, root, redexes


def infer_type(t: Term) -> SimpleType:
    """Principal simple type of ``t``; raises :class:`Untypable`."""
    u, root, _ = _constrain(t)
    return u.resolve(root, {})


def typable(t: Term) -> bool:
    try:
        infer_type(t)
    except Untypable:
        return False
    return True


def redex_reports(t: Term) -> list[TypedRedexReport]:
    u, root, redexes = _constrain(t)
    names: dict[int, str] = {}
    u.resolve(root, names)
    out = []
    for path, tv in redexes:
        ty = u.resolve(tv, names)
        out.append(TypedRedexReport(path, ty, degree_of_type(ty)))
    return out


def degree_of_term(t: Term) -> int:
    """Maximum redex degree under the principal typing; 0 when there is no redex."""
    return max((r.degree for r in redex_reports(t)), default=0)


# ---------------------------------------------------------------------------
# Parallel reduction


def parallel_step(t: Term) -> Term:
    """Complete development of every redex present in ``t``."""
    if isinstance(t, Var):
        return t
    if isinstance(t, Abs):
        return Abs(t.binder, parallel_step(t.body))
    if is_redex(t):
        return instantiate(parallel_step(t.fun.body), parallel_step(t.arg))
    return App(parallel_step(t.fun), parallel_step(t.arg))


class FuelExhausted(Exception):
    def __init__(self, term: Term, steps: int):
        super().__init__(f"no normal form after {steps} parallel steps")
        self.term = term
        self.steps = steps


def has_redex(t: Term) -> bool:
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, App):
            if isinstance(u.fun, Abs):
                return True
            stack.extend((u.fun, u.arg))
        elif isinstance(u, Abs):
            stack.append(u.body)
    return False


def parallel_normalize(t: Term, fuel: int = 10_000) -> tuple[Term, int]:
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    steps = 0
    while has_redex(t):
        if steps >= fuel:
            raise FuelExhausted(t, steps)
        t = parallel_step(t)
        steps += 1
    return t, steps
