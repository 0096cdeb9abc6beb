"""Deterministic generators of test corpora."""

from __future__ import annotations

import random

from .degree import typable
from .strategies import reduce_normal_order
from .terms import Abs, App, Term, Var, church, delta_fi, fi_fi, free_vars, size, term1, term2, I, TWO

NAMES = "xyzuvw"


def random_term(rng: random.Random, n: int, depth: int = 0, free: tuple[str, ...] = ()) -> Term:
    """A random term of exactly ``n`` AST nodes (``n >= 1``)."""
    if n == 1:
        choices = [Var(NAMES[(depth - 1 - i) % len(NAMES)], i) for i in range(depth)]
        choices += [Var(f) for f in free]
        if not choices:
            return Var(free[0] if free else "a")
        return rng.choice(choices)
    if n == 2 or rng.random() < 0.4:
        return Abs(NAMES[depth % len(NAMES)], random_term(rng, n - 1, depth + 1, free))
    k = rng.randint(1, n - 2)
    return App(random_term(rng, k, depth, free), random_term(rng, n - 1 - k, depth, free))


def uses_all_binders(t: Term) -> bool:
    """True for lambda-I terms: every abstraction uses its variable."""

    def used(u: Term, j: int) -> bool:
        if isinstance(u, Var):
            return u.index == j
        if isinstance(u, Abs):
            return used(u.body, j + 1)
        return used(u.fun, j) or used(u.arg, j)

    def go(u: Term) -> bool:
        if isinstance(u, Var):
            return True
        if isinstance(u, Abs):
            return used(u.body, 0) and go(u.body)
        return go(u.fun) and go(u.arg)

    return go(t)


def has_redex(t: Term) -> bool:
    if isinstance(t, App):
        return isinstance(t.fun, Abs) or has_redex(t.fun) or has_redex(t.arg)
    if isinstance(t, Abs):
        return has_redex(t.body)
    return False


def named_terms() -> dict[str, Term]:
    out = {
        "delta_fi": delta_fi(),
        "fi_fi": fi_fi(),
        "two_I": App(TWO, I),
        "two_two_I": App(App(TWO, TWO), I),
    }
    for n in range(1, 4):
        out[f"term1_{n}"] = term1(n)
        out[f"term2_{n}"] = term2(n)
    return out


def generate(count: int, *, seed: int = 0, min_size: int = 6, max_size: int = 30,
             lambda_i: bool = False, typed: bool = False, closed: bool = False,
             fuel: int = 2_000, free: tuple[str, ...] = ("y",)) -> list[Term]:
    """``count`` distinct random terms that have a redex and normalize within ``fuel``."""
    rng = random.Random(seed)
    out: list[Term] = []
    seen = set()
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 200_000 * max(1, count):
            raise RuntimeError("corpus generator starved")
        n = rng.randint(min_size, max_size)
        t = random_term(rng, n, 0, () if closed else free)
        if t in seen or not has_redex(t):
            continue
        if closed and free_vars(t):
            continue
        if lambda_i and not uses_all_binders(t):
            continue
        if typed and not typable(t):
            continue
        o = reduce_normal_order(t, fuel)
        if not o.normalized or o.stats.peak_term_size > 400:
            continue
        seen.add(t)
        out.append(t)
    return out
