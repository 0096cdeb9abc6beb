"""Lévy's labeled lambda calculus as an oracle for redex families.

A label is a tuple of letters; a letter is an atomic integer or a marked
label ``("^", label)`` (overlined) / ``("_", label)`` (underlined).
Concatenation is tuple concatenation, so it is associative by construction.

Firing ``((\\x.M)^a N)^b`` yields ``b . ^a . M[_a . N / x]`` where ``l . T``
prefixes ``l`` to the label of the root of ``T`` and a variable occurrence
``x^c`` becomes ``c . _a . N``.  The name of the redex is ``a``, the label of
its abstraction.  Two redexes reachable from one initially labeled term belong
to the same family exactly when their names coincide.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Union

from .terms import Abs, App, Term, Var

Label = tuple


def atomic(i: int) -> Label:
    return (i,)


def over(label: Label) -> Label:
    return (("^", label),)


def under(label: Label) -> Label:
    return (("_", label),)


def format_label(label: Label) -> str:
    parts = []
    for letter in label:
        if isinstance(letter, int):
            parts.append(str(letter))
        else:
            mark, inner = letter
            parts.append(f"{mark}({format_label(inner)})")
    return "".join(parts) if len(parts) == 1 else "(" + " ".join(parts) + ")"


@dataclass(frozen=True)
class LVar:
    label: Label
    name: str
    index: Optional[int] = None


@dataclass(frozen=True)
class LAbs:
    label: Label
    binder: str
    body: "LabeledTerm"


@dataclass(frozen=True)
class LApp:
    label: Label
    fun: "LabeledTerm"
    arg: "LabeledTerm"


LabeledTerm = Union[LVar, LAbs, LApp]


def init_labels(t: Term, start: int = 0) -> LabeledTerm:
    """Give every subterm a distinct atomic label (preorder numbering)."""
    counter = itertools.count(start)

    def go(u: Term) -> LabeledTerm:
        lab = atomic(next(counter))
        if isinstance(u, Var):
            return LVar(lab, u.name, u.index)
        if isinstance(u, Abs):
            return LAbs(lab, u.binder, go(u.body))
        return LApp(lab, go(u.fun), go(u.arg))

    return go(t)


def erase(t: LabeledTerm) -> Term:
    if isinstance(t, LVar):
        return Var(t.name, t.index)
    if isinstance(t, LAbs):
        return Abs(t.binder, erase(t.body))
    return App(erase(t.fun), erase(t.arg))


def labels(t: LabeledTerm) -> list[Label]:
    out = [t.label]
    if isinstance(t, LAbs):
        out += labels(t.body)
    elif isinstance(t, LApp):
        out += labels(t.fun) + labels(t.arg)
    return out


def _prefix(lab: Label, t: LabeledTerm) -> LabeledTerm:
    if isinstance(t, LVar):
        return LVar(lab + t.label, t.name, t.index)
    if isinstance(t, LAbs):
        return LAbs(lab + t.label, t.binder, t.body)
    return LApp(lab + t.label, t.fun, t.arg)


def _shift(t: LabeledTerm, d: int, cutoff: int = 0) -> LabeledTerm:
    if d == 0:
        return t
    if isinstance(t, LVar):
        if t.index is not None and t.index >= cutoff:
            return LVar(t.label, t.name, t.index + d)
        return t
    if isinstance(t, LAbs):
        return LAbs(t.label, t.binder, _shift(t.body, d, cutoff + 1))
    return LApp(t.label, _shift(t.fun, d, cutoff), _shift(t.arg, d, cutoff))


def _subst(t: LabeledTerm, j: int, s: LabeledTerm) -> LabeledTerm:
    if isinstance(t, LVar):
        if t.index is None or t.index < j:
            return t
        if t.index == j:
            return _prefix(t.label, _shift(s, j))
        return LVar(t.label, t.name, t.index - 1)
    if isinstance(t, LAbs):
        return LAbs(t.label, t.binder, _subst(t.body, j + 1, s))
    return LApp(t.label, _subst(t.fun, j, s), _subst(t.arg, j, s))


def contract(t: LApp) -> tuple[LabeledTerm, Label]:
    lam = t.fun
    name = lam.label
    arg = _prefix(under(name), t.arg)
    body = _subst(lam.body, 0, arg)
    return _prefix(t.label + over(name), body), name


Position = tuple[int, ...]  # 0 = function / body, 1 = argument


def subterm_at(t: LabeledTerm, pos: Position) -> LabeledTerm:
    for p in pos:
        t = t.body if isinstance(t, LAbs) else (t.fun if p == 0 else t.arg)
    return t


def _replace(t: LabeledTerm, pos: Position, new: LabeledTerm) -> LabeledTerm:
    if not pos:
        return new
    p, rest = pos[0], pos[1:]
    if isinstance(t, LAbs):
        return LAbs(t.label, t.binder, _replace(t.body, rest, new))
    if isinstance(t, LApp):
        if p == 0:
            return LApp(t.label, _replace(t.fun, rest, new), t.arg)
        return LApp(t.label, t.fun, _replace(t.arg, rest, new))
    raise ValueError("position runs past a variable")


class NotARedex(ValueError):
    pass


def labeled_fire(t: LabeledTerm, pos: Position) -> tuple[LabeledTerm, Label]:
    r = subterm_at(t, pos)
    if not (isinstance(r, LApp) and isinstance(r.fun, LAbs)):
        raise NotARedex(f"no redex at {pos}")
    new, name = contract(r)
    return _replace(t, pos, new), name


def redexes(t: LabeledTerm, order: str = "leftmost") -> list[tuple[Position, Label]]:
    """Redex positions with their names.

    ``leftmost`` lists them leftmost-outermost first; ``rightmost`` lists them
    in the applicative order used by :func:`lamlab.strategies.step_applicative`
    (argument subterms first, a redex before the body of its abstraction).
    """
    out: list[tuple[Position, Label]] = []

    def left(u, pos):
        if isinstance(u, LAbs):
            left(u.body, pos + (0,))
        elif isinstance(u, LApp):
            if isinstance(u.fun, LAbs):
                out.append((pos, u.fun.label))
            left(u.fun, pos + (0,))
            left(u.arg, pos + (1,))

    def right(u, pos):
        if isinstance(u, LAbs):
            right(u.body, pos + (0,))
        elif isinstance(u, LApp):
            right(u.arg, pos + (1,))
            if isinstance(u.fun, LAbs):
                out.append((pos, u.fun.label))
            right(u.fun, pos + (0,))

    if order == "leftmost":
        left(t, ())
    elif order == "rightmost":
        right(t, ())
    else:
        raise ValueError(f"unknown strategy {order!r}")
    return out


def family_step(t: LabeledTerm, name: Label) -> tuple[LabeledTerm, int]:
    """Fire every redex named ``name`` (a complete development of the family)."""
    fired = 0
    while True:
        for pos, n in redexes(t):
            if n == name:
                t, _ = labeled_fire(t, pos)
                fired += 1
                break
        else:
            return t, fired


@dataclass
class FamilyReport:
    fired_redex_names: list = field(default_factory=list)
    distinct_families: int = 0
    redexes_fired: int = 0
    status: str = "normalized"
    result: Optional[Term] = None

    def render(self) -> str:
        lines = [f"{i + 1}. {format_label(n)}" for i, n in enumerate(self.fired_redex_names)]
        lines.append(f"distinct families: {self.distinct_families}")
        return "\n".join(lines)


def count_families(t: Term, strategy: str = "leftmost", fuel: int = 10_000) -> FamilyReport:
    """Family-reduce ``t`` to normal form and report the family names fired.

    Meant for small terms: labels grow quickly.
    """
    lt = init_labels(t)
    report = FamilyReport()
    while True:
        rs = redexes(lt, strategy)
        if not rs:
            break
        if len(report.fired_redex_names) >= fuel:
            report.status = "fuel_exhausted"
            break
        name = rs[0][1]
        lt, k = family_step(lt, name)
        report.fired_redex_names.append(name)
        report.redexes_fired += k
    report.distinct_families = len(set(report.fired_redex_names))
    report.result = erase(lt)
    return report
