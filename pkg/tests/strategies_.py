"""Hypothesis generators shared by the test modules."""

from hypothesis import strategies as st

from lamlab.terms import Abs, App, Var

FREE = ("y", "z")


def terms(max_leaves: int = 12, closed: bool = False):
    """Well-scoped random terms, built with explicit binding depth."""

    @st.composite
    def build(draw, depth=0, budget=max_leaves):
        vars_ = [Var("xyzuvw"[(depth - 1 - i) % 6], i) for i in range(depth)]
        if not closed:
            vars_ += [Var(f) for f in FREE]
        options = ["abs"] if not vars_ else ["var", "abs", "app"]
        if budget <= 1:
            options = ["var"] if vars_ else ["abs"]
        kind = draw(st.sampled_from(options))
        if kind == "var":
            return draw(st.sampled_from(vars_))
        if kind == "abs":
            return Abs("xyzuvw"[depth % 6], draw(build(depth + 1, budget - 1)))
        left = draw(st.integers(1, max(1, budget - 1)))
        return App(draw(build(depth, left)), draw(build(depth, max(1, budget - left))))

    return build()
