"""Pure lambda terms: representation, parsing, printing and substitution.

Terms use de Bruijn indices for bound variables and keep the source name as a
printing hint.  Free variables are ``Var`` nodes with ``index=None`` and are
identified by name.  Because binder hints are excluded from comparison,
``==`` on terms *is* alpha-equivalence.
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Union

sys.setrecursionlimit(max(sys.getrecursionlimit(), 100_000))


@dataclass(frozen=True, eq=False)
class Var:
    name: str
    index: int | None = None

    def __eq__(self, other):
        if not isinstance(other, Var):
            return NotImplemented
        if self.index is None or other.index is None:
            return self.index is None and other.index is None and self.name == other.name
        return self.index == other.index

    def __hash__(self):
        return hash(("var", self.name) if self.index is None else ("bvar", self.index))

    def __repr__(self):
        return f"Var({self.name!r})" if self.index is None else f"Var({self.name!r}, {self.index})"


@dataclass(frozen=True)
class Abs:
    binder: str = field(compare=False)
    body: "Term"


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"


Term = Union[Var, Abs, App]


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


# ---------------------------------------------------------------------------
# Structural measures


def size(t: Term) -> int:
    """Number of AST nodes."""
    n = 0
    stack = [t]
    while stack:
        u = stack.pop()
        n += 1
        if isinstance(u, Abs):
            stack.append(u.body)
        elif isinstance(u, App):
            stack.append(u.fun)
            stack.append(u.arg)
    return n


def free_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,)) if t.index is None else frozenset()
    if isinstance(t, Abs):
        return free_vars(t.body)
    return free_vars(t.fun) | free_vars(t.arg)


def is_redex(t: Term) -> bool:
    return isinstance(t, App) and isinstance(t.fun, Abs)


def subterms(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        u = stack.pop()
        yield u
        if isinstance(u, Abs):
            stack.append(u.body)
        elif isinstance(u, App):
            stack.append(u.arg)
            stack.append(u.fun)


def alpha_eq(a: Term, b: Term) -> bool:
    return a == b


def is_identity(t: Term) -> bool:
    return isinstance(t, Abs) and isinstance(t.body, Var) and t.body.index == 0


# ---------------------------------------------------------------------------
# de Bruijn machinery


def shift(t: Term, d: int, cutoff: int = 0) -> Term:
    if d == 0:
        return t
    if isinstance(t, Var):
        if t.index is not None and t.index >= cutoff:
            return Var(t.name, t.index + d)
        return t
    if isinstance(t, Abs):
        return Abs(t.binder, shift(t.body, d, cutoff + 1))
    return App(shift(t.fun, d, cutoff), shift(t.arg, d, cutoff))


def _subst_index(t: Term, j: int, s: Term) -> Term:
    # replace index j by s (s already valid at depth 0 of t); indices above j drop by one
    if isinstance(t, Var):
        if t.index is None or t.index < j:
            return t
        if t.index == j:
            return shift(s, j)
        return Var(t.name, t.index - 1)
    if isinstance(t, Abs):
        return Abs(t.binder, _subst_index(t.body, j + 1, s))
    return App(_subst_index(t.fun, j, s), _subst_index(t.arg, j, s))


def instantiate(body: Term, arg: Term) -> Term:
    """Contract ``(\\x.body) arg``: substitute for bound index 0 of ``body``."""
    return _subst_index(body, 0, arg)


def abstract(t: Term, name: str) -> Abs:
    """Bind the free variable ``name`` in ``t``."""

    def go(u: Term, depth: int) -> Term:
        if isinstance(u, Var):
            if u.index is None:
                return Var(name, depth) if u.name == name else u
            return u
        if isinstance(u, Abs):
            return Abs(u.binder, go(u.body, depth + 1))
        return App(go(u.fun, depth), go(u.arg, depth))

    return Abs(name, go(shift(t, 1), 0))


def substitute(body: Term, var: str, arg: Term) -> Term:
    """Capture-avoiding ``body[arg/var]`` for a free variable ``var``.

    Capture cannot happen on the nameless representation; binders whose
    hint clashes with a free name of ``arg`` get a fresh suffix when printed.
    """

    def go(u: Term, depth: int) -> Term:
        if isinstance(u, Var):
            return shift(arg, depth) if u.index is None and u.name == var else u
        if isinstance(u, Abs):
            return Abs(u.binder, go(u.body, depth + 1))
        return App(go(u.fun, depth), go(u.arg, depth))

    return go(body, 0)


# ---------------------------------------------------------------------------
# Church encodings and named constants


def church(n: int) -> Term:
    if n < 0:
        raise ValueError("church numerals are defined for n >= 0")
    body: Term = Var("x", 0)
    for _ in range(n):
        body = App(Var("f", 1), body)
    return Abs("f", Abs("x", body))


I = Abs("x", Var("x", 0))
TWO = church(2)
DELTA = Abs("x", App(Var("x", 0), Var("x", 0)))
F = Abs("z", App(Var("z", 0), Var("y")))


def apps(head: Term, *args: Term) -> Term:
    for a in args:
        head = App(head, a)
    return head


def term1(n: int) -> Term:
    """``n two I I``: exponential for weak evaluation."""
    return apps(church(n), TWO, I, I)


def term2(n: int) -> Term:
    """``I (n two) I I``: exponential for innermost reduction."""
    return apps(I, App(church(n), TWO), I, I)


def delta_fi() -> Term:
    return App(DELTA, App(F, I))


def fi_fi() -> Term:
    return App(App(F, I), App(F, I))


BUILTINS: dict[str, Term] = {"I": I, "two": TWO}


# ---------------------------------------------------------------------------
# Parsing

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<num>\d+)|(?P<sym>[\\λ.()])|(?P<bad>\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.end() == pos:
            break
        kind = m.lastgroup
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group(kind)!r}", m.start(kind))
        if kind is not None:
            tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, env: Mapping[str, Term], church_syntax: bool):
        self.tokens = _tokenize(text)
        self.i = 0
        self.env = env
        self.church_syntax = church_syntax

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, text, pos = self.take()
        if text != value or kind != "sym":
            raise ParseError(f"expected {value!r}, found {text or 'end of input'!r}", pos)

    def term(self, bound: list[str]) -> Term:
        kind, text, pos = self.peek()
        if kind == "sym" and text in ("\\", "λ"):
            self.take()
            names = []
            while self.peek()[0] == "ident":
                names.append(self.take()[1])
            if not names:
                raise ParseError("expected binder", self.peek()[2])
            self.expect(".")
            body = self.term(bound + names)
            for name in reversed(names):
                body = Abs(name, body)
            return body
        return self.application(bound)

    def starts_atom(self) -> bool:
        kind, text, _ = self.peek()
        return kind in ("ident", "num") or (kind == "sym" and text in ("(", "\\", "λ"))

    def application(self, bound: list[str]) -> Term:
        if not self.starts_atom():
            kind, text, pos = self.peek()
            raise ParseError(f"unexpected {text or 'end of input'!r}", pos)
        t = self.atom(bound)
        while self.starts_atom():
            kind, text, _ = self.peek()
            if kind == "sym" and text in ("\\", "λ"):
                # trailing abstraction extends maximally right
                t = App(t, self.term(bound))
                break
            t = App(t, self.atom(bound))
        return t

    def atom(self, bound: list[str]) -> Term:
        kind, text, pos = self.take()
        if kind == "sym" and text == "(":
            t = self.term(bound)
            self.expect(")")
            return t
        if kind == "num":
            raise ParseError("numeral outside 'church n'", pos)
        if kind != "ident":
            raise ParseError(f"unexpected {text!r}", pos)
        for depth, name in enumerate(reversed(bound)):
            if name == text:
                return Var(text, depth)
        if self.church_syntax and text == "church":
            k, num, p = self.take()
            if k != "num":
                raise ParseError("expected numeral after 'church'", p)
            return church(int(num))
        if text in self.env:
            return self.env[text]
        raise ParseError(f"unknown name {text!r}", pos)


def parse(text: str, env: Mapping[str, Term] | None = None, *,
          free: bool = True, church_syntax: bool = True) -> Term:
    """Parse ``text``; names from ``env`` are expanded in place.

    With ``free=True`` unknown names become free variables instead of errors.
    """
    env = dict(BUILTINS if env is None else env)
    if free:
        env = _FreeEnv(env)
    p = _Parser(text, env, church_syntax)
    t = p.term([])
    kind, tok, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"unexpected {tok!r}", pos)
    return t


class _FreeEnv(dict):
    def __contains__(self, key):
        return True

    def __missing__(self, key):
        return Var(key)


def parse_definitions(text: str, env: Mapping[str, Term] | None = None) -> dict[str, Term]:
    """Parse ``name = term ;`` definitions.  Later names may use earlier ones."""
    out = dict(BUILTINS if env is None else env)
    stripped = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    offset = 0
    for chunk in stripped.split(";"):
        if chunk.strip():
            if "=" not in chunk:
                raise ParseError("expected 'name = term'", offset)
            name, body = chunk.split("=", 1)
            name = name.strip()
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", name):
                raise ParseError(f"bad definition name {name!r}", offset)
            try:
                out[name] = parse(body, out, free=False)
            except ParseError as e:
                raise ParseError(f"in definition of {name!r}: {e.args[0]}", offset + e.position) from None
        offset += len(chunk) + 1
    return out


# ---------------------------------------------------------------------------
# Printing


def _fresh(hint: str, avoid: set[str]) -> str:
    if hint not in avoid:
        return hint
    base = hint.rstrip("0123456789") or hint
    k = 1
    while f"{base}{k}" in avoid:
        k += 1
    return f"{base}{k}"


def pretty(t: Term) -> str:
    """Render with minimal parentheses; binder hints get numeric suffixes on clashes."""
    fv = set(free_vars(t))

    def go(u: Term, names: list[str]) -> str:
        if isinstance(u, Var):
            if u.index is None:
                return u.name
            return names[-1 - u.index]
        if isinstance(u, Abs):
            binders = []
            while isinstance(u, Abs):
                name = _fresh(u.binder, fv | set(names))
                names = names + [name]
                binders.append(name)
                u = u.body
            return "\\" + " ".join(binders) + "." + go(u, names)
        # application spine
        spine = []
        while isinstance(u, App):
            spine.append(u.arg)
            u = u.fun
        spine.reverse()
        head = go(u, names)
        if isinstance(u, Abs):
            head = f"({head})"
        parts = [head]
        for k, a in enumerate(spine):
            s = go(a, names)
            if isinstance(a, App) or (isinstance(a, Abs) and k < len(spine) - 1):
                s = f"({s})"
            parts.append(s)
        return " ".join(parts)

    return go(t, [])


__all__ = [
    "Var", "Abs", "App", "Term", "ParseError", "size", "free_vars", "is_redex",
    "subterms", "alpha_eq", "is_identity", "shift", "instantiate", "abstract",
    "substitute", "church", "I", "TWO", "DELTA", "F", "apps", "term1", "term2",
    "delta_fi", "fi_fi", "BUILTINS", "parse", "parse_definitions", "pretty",
]
