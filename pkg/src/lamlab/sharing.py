"""Sharing graphs: optimal reduction of lambda terms by local interactions.

A term is translated into an interaction net with leveled nodes.  Level ``n``
is the number of argument positions enclosing a node.  Nodes:

``LAM``   ports: 0 principal, 1 body, 2 binder
``APP``   ports: 0 function (principal), 1 argument, 2 result
``FAN``   ports: 0 principal, 1 left, 2 right            (duplicator)
``DELIM`` ports: 0 principal, 1 auxiliary                (scope delimiter)
``ERA``   port 0 principal                               (eraser)

Delimiters come in two flavours: ``shift=+1`` (a bracket marking a box
border, it lifts what crosses it by one level) and ``shift=-1`` (the delimiter
at a variable occurrence, it lowers what crosses it).  ``ROOT`` and ``FREE``
are interface nodes with no principal port.

Interaction rules, for a principal-to-principal contact:

* ``LAM``/``APP``: beta wiring.
* same kind, same level (and same shift): annihilation.
* otherwise the control node with the lower level passes through the other
  node, copying it; a delimiter shifts the level of the copies it produces.
  ``LAM`` and ``APP`` never act on anything.
* an eraser consumes whatever it meets and propagates to the auxiliary ports.

Readback walks the normal net from the root carrying a context with one
entry per level: fans push and pop their choice on their own level, brackets
pack two adjacent levels into one and delimiters at occurrences insert a
level.  A variable is matched with the abstraction instance that produced it
by comparing the context levels below the abstraction's level.
"""

from __future__ import annotations

import collections
from dataclasses import asdict, dataclass
from typing import Optional

from .terms import Abs, App, Term, Var

LAM, APP, FAN, DELIM, ERA, ROOT, FREE = "lam", "app", "fan", "delim", "era", "root", "free"

ARITY = {LAM: 3, APP: 3, FAN: 3, DELIM: 2, ERA: 1, ROOT: 1, FREE: 1}
CONTROL = (FAN, DELIM, ERA)
ORDERS = ("fifo", "lifo", "lazy")


class Node:
    __slots__ = ("id", "kind", "level", "shift", "name")

    def __init__(self, id: int, kind: str, level: int = 0, shift: int = 0, name: str = ""):
        self.id = id
        self.kind = kind
        self.level = level
        self.shift = shift
        self.name = name

    @property
    def has_principal(self) -> bool:
        return self.kind not in (ROOT, FREE)

    def __repr__(self):
        extra = f"{self.shift:+d}" if self.kind == DELIM else ""
        return f"{self.kind}{extra}#{self.id}@{self.level}"


Port = tuple  # (node id, port index)


class NetError(RuntimeError):
    pass


class ReadbackError(RuntimeError):
    pass


@dataclass
class NetStats:
    beta_interactions: int = 0
    duplications: int = 0
    annihilations: int = 0
    bookkeeping_interactions: int = 0
    peak_nodes: int = 0
    total_interactions: int = 0
    erasures: int = 0  # also counted in annihilations
    readback_steps: int = 0  # wires crossed by readback; not an interaction

    def as_dict(self) -> dict:
        return asdict(self)


class Net:
    def __init__(self):
        self.nodes: dict[int, Node] = {}
        self.wire: dict[Port, Port] = {}
        self.next_id = 0
        self.root: int = self.add(ROOT).id

    # -- construction -----------------------------------------------------
    def add(self, kind: str, level: int = 0, shift: int = 0, name: str = "") -> Node:
        n = Node(self.next_id, kind, level, shift, name)
        self.next_id += 1
        self.nodes[n.id] = n
        return n

    def link(self, a: Port, b: Port):
        self.wire[a] = b
        self.wire[b] = a

    def peer(self, p: Port) -> Port:
        return self.wire[p]

    def remove(self, nid: int):
        node = self.nodes.pop(nid)
        for k in range(ARITY[node.kind]):
            self.wire.pop((nid, k), None)

    def kind_counts(self) -> dict[str, int]:
        return dict(collections.Counter(n.kind for n in self.nodes.values()))

    def __len__(self):
        return len(self.nodes)

    # -- checks -----------------------------------------------------------
    def check(self):
        """Raise :class:`NetError` unless wiring is a perfect matching and levels are valid."""
        for nid, node in self.nodes.items():
            if node.level < 0:
                raise NetError(f"negative level on {node!r}")
            for k in range(ARITY[node.kind]):
                p = (nid, k)
                q = self.wire.get(p)
                if q is None:
                    raise NetError(f"dangling port {p} of {node!r}")
                if q[0] not in self.nodes or self.wire.get(q) != p:
                    raise NetError(f"asymmetric wire {p} -> {q}")
        for p in self.wire:
            if p[0] not in self.nodes:
                raise NetError(f"wire from removed node {p}")

    def is_active(self, a: int, b: int) -> bool:
        na, nb = self.nodes.get(a), self.nodes.get(b)
        if na is None or nb is None or not (na.has_principal and nb.has_principal):
            return False
        return self.wire.get((a, 0)) == (b, 0)


# ---------------------------------------------------------------------------
# Translation


def translate(t: Term, encoding: str = "scope") -> Net:
    """Build the net of ``t``; free variables end in ``FREE`` nodes.

    ``encoding="scope"`` boxes every abstraction: the abstraction node sits
    one level deeper than its surroundings, variables leaving its body cross
    a bracket, and each function port opens the box with a lowering
    delimiter.  ``encoding="argument"`` boxes arguments instead, with a
    lowering delimiter at every variable occurrence.
    """
    if encoding not in ("scope", "argument"):
        raise ValueError(f"unknown encoding {encoding!r}")
    net = Net()
    free_binders: dict[str, list] = {}

    def chain(down: Port, level: int, binder_level: int) -> Port:
        # one bracket per box between the occurrence and its binder
        up = down
        for j in range(level - 1, binder_level - 1, -1):
            b = net.add(DELIM, j, +1)
            net.link(up, (b.id, 1))
            up = (b.id, 0)
        return up

    def go(u: Term, level: int, scope: list) -> Port:
        if isinstance(u, Var):
            if u.index is None:
                binder_level, occs = 0, free_binders.setdefault(u.name, [])
            else:
                binder_level, occs = scope[-1 - u.index]
            if encoding == "argument":
                d = net.add(DELIM, level, -1)
                down, up = (d.id, 1), chain((d.id, 0), level, binder_level)
            else:
                w = net.add(DELIM, 0, 0)  # placeholder wire, removed below
                down, up = (w.id, 1), chain((w.id, 0), level, binder_level)
            occs.append(up)
            return down
        if isinstance(u, Abs):
            inner = level + 1 if encoding == "scope" else level
            lam = net.add(LAM, inner)
            occs: list = []
            body = go(u.body, inner, scope + [(inner, occs)])
            net.link((lam.id, 1), body)
            _share(net, (lam.id, 2), occs, inner)
            return (lam.id, 0)
        app = net.add(APP, level)
        if encoding == "scope":
            d = net.add(DELIM, level, -1)
            net.link((app.id, 0), (d.id, 1))
            net.link((d.id, 0), go(u.fun, level, scope))
            net.link((app.id, 1), go(u.arg, level, scope))
        else:
            net.link((app.id, 0), go(u.fun, level, scope))
            net.link((app.id, 1), go(u.arg, level + 1, scope))
        return (app.id, 2)

    top = go(t, 0, [])
    net.link((net.root, 0), top)
    for name in sorted(free_binders):
        fv = net.add(FREE, name=name)
        _share(net, (fv.id, 0), free_binders[name], 0)
    for nid in [n.id for n in net.nodes.values() if n.kind == DELIM and n.shift == 0]:
        net.link(net.peer((nid, 0)), net.peer((nid, 1)))
        net.remove(nid)
    return net


def _share(net: Net, binder: Port, occs: list, level: int):
    if not occs:
        e = net.add(ERA, level)
        net.link(binder, (e.id, 0))
        return
    port = binder
    for i, occ in enumerate(occs):
        if i == len(occs) - 1:
            net.link(port, occ)
        else:
            f = net.add(FAN, level)
            net.link(port, (f.id, 0))
            net.link((f.id, 1), occ)
            port = (f.id, 2)


# ---------------------------------------------------------------------------
# Reduction


def find_active_pairs(net: Net) -> list[tuple[int, int]]:
    pairs = []
    for nid in sorted(net.nodes):
        node = net.nodes[nid]
        if not node.has_principal:
            continue
        other = net.wire.get((nid, 0))
        if other is not None and other[1] == 0 and nid < other[0] and net.is_active(nid, other[0]):
            pairs.append((nid, other[0]))
    return pairs


def _classify(a: Node, b: Node) -> str:
    if {a.kind, b.kind} == {LAM, APP}:
        return "beta"
    if ERA in (a.kind, b.kind):
        return "erase"
    if a.kind == b.kind and a.level == b.level and a.shift == b.shift and a.kind in (FAN, DELIM):
        return "annihilate"
    if DELIM in (a.kind, b.kind):
        return "bookkeeping"
    if FAN in (a.kind, b.kind):
        return "duplicate"
    raise NetError(f"no rule for {a!r} against {b!r}")


def _actor(a: Node, b: Node) -> tuple[Node, Node]:
    """Pick the node that passes through the other in a commutation."""
    if a.kind == ERA:
        return a, b
    if b.kind == ERA:
        return b, a
    if a.kind not in CONTROL:
        return b, a
    if b.kind not in CONTROL:
        return a, b
    if a.level != b.level:
        return (a, b) if a.level < b.level else (b, a)
    # same level, different flavour: paths through such a pair are never
    # consistent, any orientation is sound; prefer the delimiter as actor
    if a.kind == DELIM and b.kind != DELIM:
        return a, b
    if b.kind == DELIM and a.kind != DELIM:
        return b, a
    return (a, b) if a.shift < b.shift else (b, a)


def interact(net: Net, pair: tuple[int, int], stats: Optional[NetStats] = None) -> str:
    """Rewrite one active pair in place; returns the rule class applied."""
    a_id, b_id = pair
    if not net.is_active(a_id, b_id):
        raise NetError(f"pair {pair} is not active")
    a, b = net.nodes[a_id], net.nodes[b_id]
    rule = _classify(a, b)
    links: list[tuple[Port, Port]] = []
    new_nodes: list[Node] = []

    if rule == "beta":
        lam, app = (a, b) if a.kind == LAM else (b, a)
        if lam.level != app.level:
            raise NetError(f"beta between levels {lam.level} and {app.level}")
        links.append((net.peer((lam.id, 1)), net.peer((app.id, 2))))
        links.append((net.peer((lam.id, 2)), net.peer((app.id, 1))))
    elif rule == "annihilate":
        for k in range(1, ARITY[a.kind]):
            links.append((net.peer((a.id, k)), net.peer((b.id, k))))
    else:
        f, g = _actor(a, b)
        f_aux = list(range(1, ARITY[f.kind]))
        g_aux = list(range(1, ARITY[g.kind]))
        g_level = g.level + (f.shift if f.kind == DELIM and g.kind != ERA else 0)
        g_copies = [net.add(g.kind, g_level, g.shift, g.name) for _ in f_aux]
        f_copies = [net.add(f.kind, f.level, f.shift) for _ in g_aux]
        new_nodes = g_copies + f_copies
        for gc, fa in zip(g_copies, f_aux):
            links.append(((gc.id, 0), net.peer((f.id, fa))))
        for fc, ga in zip(f_copies, g_aux):
            links.append(((fc.id, 0), net.peer((g.id, ga))))
        for i, gc in enumerate(g_copies):
            for j, fc in enumerate(f_copies):
                links.append(((gc.id, g_aux[j]), (fc.id, f_aux[i])))

    _splice(net, (a.id, b.id), links)
    net.remove(a.id)
    net.remove(b.id)

    if stats is not None:
        stats.total_interactions += 1
        if rule == "beta":
            stats.beta_interactions += 1
        elif rule == "duplicate":
            stats.duplications += 1
        elif rule == "bookkeeping":
            stats.bookkeeping_interactions += 1
        else:
            stats.annihilations += 1
            if rule == "erase":
                stats.erasures += 1
        stats.peak_nodes = max(stats.peak_nodes, len(net.nodes))
    return rule


def _splice(net: Net, dying: tuple[int, int], links: list[tuple[Port, Port]]):
    """Apply ``links`` whose endpoints may be ports of the dying pair.

    A dying port stands for its old wire; chains that alternate new links and
    old dying-to-dying wires are collapsed to a single wire.
    """
    old = {}
    for nid in dying:
        for k in range(ARITY[net.nodes[nid].kind]):
            old[(nid, k)] = net.wire[(nid, k)]
    adj: dict[Port, list] = collections.defaultdict(list)
    for x, y in links:
        adj[x].append(y)
        adj[y].append(x)
    done = set()
    for start in list(adj):
        if start[0] in dying or start in done:
            continue
        for first in adj[start]:
            prev, x = start, first
            while x[0] in dying:
                y = old[x]
                nxt = [z for z in adj[y]]
                if not nxt:
                    raise NetError("broken splice chain")
                prev, x = y, nxt[0]
            if x in done or start in done:
                continue
            net.link(start, x)
            done.add(start)
            done.add(x)


def collect_garbage(net: Net) -> int:
    """Drop every node not connected to the root; returns how many were removed."""
    seen = {net.root}
    todo = [net.root]
    while todo:
        nid = todo.pop()
        for k in range(ARITY[net.nodes[nid].kind]):
            q = net.wire.get((nid, k))
            if q is not None and q[0] not in seen:
                seen.add(q[0])
                todo.append(q[0])
    dead = [nid for nid in net.nodes if nid not in seen]
    for nid in dead:
        net.remove(nid)
    return len(dead)


class FuelExhausted(RuntimeError):
    pass


def normalize(net: Net, fuel: int = 10**7, order: str = "lazy") -> tuple[Net, NetStats]:
    """Fire active pairs until none remain or ``fuel`` interactions are spent.

    ``order`` is ``"fifo"`` or ``"lifo"`` over a worklist of all active
    pairs, or ``"lazy"``: always fire the first pair met by a leftmost walk
    from the root, so only needed work is done and pairs stranded in
    discarded arguments are left alone.

    The net is rewritten in place and returned with its statistics; check
    :func:`is_done` to tell exhaustion apart.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    if order not in ORDERS:
        raise ValueError(f"unknown scheduling order {order!r}")
    stats = NetStats(peak_nodes=len(net.nodes))
    if order == "lazy":
        while stats.total_interactions < fuel:
            pair = needed_pair(net)
            if pair is None:
                break
            interact(net, pair, stats)
        collect_garbage(net)
        return net, stats
    work = collections.deque(find_active_pairs(net))
    while work:
        if stats.total_interactions >= fuel:
            break
        pair = work.popleft() if order == "fifo" else work.pop()
        if not net.is_active(*pair):
            continue
        a, b = net.nodes[pair[0]], net.nodes[pair[1]]
        erasing = ERA in (a.kind, b.kind)
        before = net.next_id
        touched = [net.peer((a.id, k)) for k in range(1, ARITY[a.kind])]
        touched += [net.peer((b.id, k)) for k in range(1, ARITY[b.kind])]
        interact(net, pair, stats)
        candidates = {p[0] for p in touched if p[0] in net.nodes}
        candidates.update(range(before, net.next_id))
        if erasing or any(net.nodes[c].kind == ERA for c in candidates if c in net.nodes):
            collect_garbage(net)
        for c in sorted(candidates):
            if c not in net.nodes or not net.nodes[c].has_principal:
                continue
            other = net.wire[(c, 0)]
            if other[1] == 0 and net.is_active(c, other[0]):
                work.append((min(c, other[0]), max(c, other[0])))
    return net, stats


def is_normal(net: Net) -> bool:
    return not find_active_pairs(net)


def needed_pair(net: Net) -> Optional[tuple[int, int]]:
    """First active pair met walking the net from the root, function before argument.

    The walk moves from a term towards its parts: into abstraction bodies,
    into the function and then the argument of an application, through
    delimiters, from a fan's auxiliary port to its principal port and from its
    principal port out of both auxiliaries.  It stops at binders, free
    variables and erasers.
    """
    seen = set()
    stack = [(net.root, 0)]
    while stack:
        src = stack.pop()
        dst = net.wire[src]
        if dst in seen:
            continue
        seen.add(dst)
        nid, k = dst
        node = net.nodes[nid]
        if src[1] == 0 and k == 0 and net.is_active(src[0], nid):
            return (min(src[0], nid), max(src[0], nid))
        if node.kind == LAM:
            if k == 0:
                stack.append((nid, 1))
        elif node.kind == APP:
            if k == 2:
                stack += [(nid, 1), (nid, 0)]
        elif node.kind == FAN:
            stack += [(nid, 0)] if k else [(nid, 2), (nid, 1)]
        elif node.kind == DELIM:
            stack.append((nid, 1 - k))
    return None


def is_done(net: Net, order: str = "lazy") -> bool:
    """Normal for the worklist orders; no needed pair left for ``"lazy"``."""
    return needed_pair(net) is None if order == "lazy" else is_normal(net)


# ---------------------------------------------------------------------------
# Readback

_CROISSANT = "C"


def _get(ctx: tuple, i: int):
    return ctx[i] if i < len(ctx) else None


def _set(ctx: tuple, i: int, v) -> tuple:
    ctx = ctx + (None,) * (i + 1 - len(ctx))
    return ctx[:i] + (v,) + ctx[i + 1:]


def _trim(ctx: tuple) -> tuple:
    n = len(ctx)
    while n and ctx[n - 1] is None:
        n -= 1
    return ctx[:n]


def _insert(ctx: tuple, i: int, v) -> tuple:
    ctx = ctx + (None,) * max(0, i - len(ctx))
    return _trim(ctx[:i] + (v,) + ctx[i:])


def _delete(ctx: tuple, i: int) -> tuple:
    if i >= len(ctx):
        return ctx
    return _trim(ctx[:i] + ctx[i + 1:])


def _pack(ctx: tuple, i: int) -> tuple:
    a, b = _get(ctx, i), _get(ctx, i + 1)
    v = None if a is None and b is None else ("P", a, b)
    return _trim(_set(_delete(ctx, i + 1), i, v))


def _unpack(ctx: tuple, i: int) -> tuple:
    v = _get(ctx, i)
    if v is None:
        a = b = None
    elif isinstance(v, tuple) and v[0] == "P":
        a, b = v[1], v[2]
    else:
        raise ReadbackError(f"unpacking a non-packed level {v!r}")
    return _insert(_trim(_set(ctx, i, a)), i + 1, b)


def _prefix(ctx: tuple, k: int) -> tuple:
    return tuple(_get(ctx, i) for i in range(k))


def readback(net: Net, fuel: int = 10**7, require_normal: bool = True) -> Term:
    """Reconstruct the lambda term denoted by a normal net.

    With ``require_normal=False`` a net that still has active pairs is read
    as it stands; freshly translated nets read back to their source term.
    ``fuel`` bounds the number of wires crossed.
    """
    return readback_with_cost(net, fuel, require_normal)[0]


def readback_with_cost(net: Net, fuel: int = 10**7, require_normal: bool = True) -> tuple[Term, int]:
    """:func:`readback` plus the number of wires it crossed."""
    if require_normal and not is_normal(net):
        raise ReadbackError("net still has active pairs")
    budget = [fuel]
    binders: dict[tuple, tuple[int, str]] = {}

    def tick():
        budget[0] -= 1
        if budget[0] < 0:
            raise ReadbackError("readback fuel exhausted")

    def walk(p: Port, ctx: tuple, depth: int) -> Term:
        """Read the subterm found across the wire leaving port ``p``."""
        while True:
            tick()
            nid, k = net.peer(p)
            node = net.nodes[nid]
            kind = node.kind
            if kind == LAM:
                if k == 0:
                    key = (nid, _prefix(ctx, node.level))
                    if key in binders:
                        raise ReadbackError("abstraction instance read twice on one branch")
                    binders[key] = (depth, "x")
                    try:
                        body = walk((nid, 1), ctx, depth + 1)
                    finally:
                        _, name = binders.pop(key)
                    return Abs(name, body)
                if k == 2:
                    key = (nid, _prefix(ctx, node.level))
                    if key not in binders:
                        raise ReadbackError(f"unbound variable reaching {node!r}")
                    bdepth, name = binders[key]
                    return Var(name, depth - 1 - bdepth)
                raise ReadbackError(f"entered abstraction body port of {node!r}")
            if kind == APP:
                if k == 2:
                    return App(walk((nid, 0), ctx, depth), walk((nid, 1), ctx, depth))
                raise ReadbackError(f"entered application {node!r} at port {k}")
            if kind == FAN:
                i = node.level
                if k == 0:
                    v = _get(ctx, i)
                    if not (isinstance(v, tuple) and v[0] in (1, 2)):
                        raise ReadbackError(f"fan {node!r} finds no choice on level {i}")
                    ctx = _trim(_set(ctx, i, v[1]))
                    p = (nid, v[0])
                else:
                    ctx = _set(ctx, i, (k, _get(ctx, i)))
                    p = (nid, 0)
                continue
            if kind == DELIM:
                i = node.level
                if node.shift > 0:
                    ctx = _pack(ctx, i) if k == 1 else _unpack(ctx, i)
                else:
                    ctx = _insert(ctx, i, _CROISSANT) if k == 1 else _delete(ctx, i)
                p = (nid, 1 - k)
                continue
            if kind == FREE:
                return Var(node.name)
            raise ReadbackError(f"readback reached {node!r}")

    term = walk((net.root, 0), (), 0)
    return term, fuel - budget[0]


# ---------------------------------------------------------------------------
# Visualization


def to_dot(net: Net) -> str:
    """Deterministic Graphviz description of ``net``."""
    lines = ["graph net {"]
    for nid in sorted(net.nodes):
        node = net.nodes[nid]
        if node.kind == DELIM:
            label = f"{'[' if node.shift > 0 else ']'}{node.level}"
        elif node.kind == FREE:
            label = node.name
        elif node.kind == ROOT:
            label = "root"
        else:
            label = f"{node.kind} {node.level}"
        lines.append(f'  n{nid} [kind="{node.kind}", level={node.level}, label="{label}"];')
    seen = set()
    for (nid, k) in sorted(net.wire):
        q = net.wire[(nid, k)]
        if (nid, k) in seen:
            continue
        seen.add(q)
        lines.append(f'  n{nid} -- n{q[0]} [taillabel="{k}", headlabel="{q[1]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def reduce_optimal(t: Term, fuel: int = 10**7, order: str = "lazy",
                   encoding: str = "scope") -> tuple[Optional[Term], NetStats, str]:
    """Translate, normalize and read back; returns ``(term, stats, status)``."""
    net = translate(t, encoding)
    net, stats = normalize(net, fuel, order)
    if not is_done(net, order):
        return None, stats, "fuel_exhausted"
    nf, stats.readback_steps = readback_with_cost(net, fuel, require_normal=(order != "lazy"))
    return nf, stats, "normalized"
