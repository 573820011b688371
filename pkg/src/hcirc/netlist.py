"""Netlist text format, circuit value types, and fundamental mesh generation.

Grammar, one directive per line (``#`` starts a comment)::

    node <id>
    branch <id> <tail> <head> R=<value> [E=<value>]
    mesh <id> <+branch|-branch>...

``E`` is the source voltage rising from tail to head. Values are integers,
decimals or ``p/q`` rationals and are kept exact. Declaration order of nodes,
branches and meshes fixes the basis order of the chain spaces.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction

_ID = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*\Z")
_NUMBER = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?(/\d+)?\Z")


class NetlistError(ValueError):
    """Invalid netlist text or an invalid circuit."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Node:
    id: str
    index: int


@dataclass(frozen=True)
class Branch:
    id: str
    tail: str
    head: str
    resistance: Fraction
    emf: Fraction = Fraction(0)


@dataclass(frozen=True)
class Mesh:
    id: str
    entries: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class Circuit:
    nodes: tuple[Node, ...]
    branches: tuple[Branch, ...]
    meshes: tuple[Mesh, ...] = ()
    _node_index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "branches", tuple(self.branches))
        object.__setattr__(self, "meshes", tuple(self.meshes))
        object.__setattr__(self, "_node_index", {n.id: n.index for n in self.nodes})
        validate(self)

    @classmethod
    def build(cls, node_ids, branches, meshes=()) -> "Circuit":
        """Convenience constructor from plain tuples.

        ``branches`` holds ``(id, tail, head, R, E)`` and ``meshes`` holds
        ``(id, [(branch_id, sign), ...])``.
        """
        nodes = [Node(nid, k) for k, nid in enumerate(node_ids)]
        brs = [Branch(b, t, h, Fraction(r), Fraction(e)) for b, t, h, r, e in branches]
        ms = [Mesh(m, tuple((b, int(s)) for b, s in ent)) for m, ent in meshes]
        return cls(nodes, brs, ms)

    @property
    def node_ids(self) -> list[str]:
        return [n.id for n in self.nodes]

    @property
    def branch_ids(self) -> list[str]:
        return [b.id for b in self.branches]

    @property
    def mesh_ids(self) -> list[str]:
        return [m.id for m in self.meshes]

    def node_index(self, node_id: str) -> int:
        return self._node_index[node_id]

    def components(self) -> list[list[int]]:
        """Connected components as lists of node indices, ordered by lowest index."""
        parent = list(range(len(self.nodes)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for b in self.branches:
            ra, rb = find(self.node_index(b.tail)), find(self.node_index(b.head))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for k in range(len(self.nodes)):
            groups.setdefault(find(k), []).append(k)
        return sorted(groups.values(), key=lambda g: g[0])


def validate(circuit: Circuit) -> None:
    """Check every type invariant; raises NetlistError on the first violation."""
    if not circuit.nodes:
        raise NetlistError("circuit has no nodes")
    if not circuit.branches:
        raise NetlistError("circuit has no branches")
    seen: set[str] = set()
    for k, n in enumerate(circuit.nodes):
        if n.id in seen:
            raise NetlistError(f"duplicate node id {n.id!r}")
        if n.index != k:
            raise NetlistError(f"node {n.id!r} has index {n.index}, expected {k}")
        seen.add(n.id)
    bseen: dict[str, Branch] = {}
    for b in circuit.branches:
        if b.id in bseen:
            raise NetlistError(f"duplicate branch id {b.id!r}")
        for end in (b.tail, b.head):
            if end not in seen:
                raise NetlistError(f"branch {b.id!r} references unknown node {end!r}")
        if b.tail == b.head:
            raise NetlistError(f"branch {b.id!r} is a self-loop on {b.tail!r}")
        if not b.resistance > 0:
            raise NetlistError(f"branch {b.id!r} has non-positive resistance {b.resistance}")
        bseen[b.id] = b
    mseen: set[str] = set()
    for m in circuit.meshes:
        if m.id in mseen:
            raise NetlistError(f"duplicate mesh id {m.id!r}")
        mseen.add(m.id)
        boundary = dict.fromkeys(seen, 0)
        for bid, sign in m.entries:
            if bid not in bseen:
                raise NetlistError(f"mesh {m.id!r} references unknown branch {bid!r}")
            if sign not in (1, -1):
                raise NetlistError(f"mesh {m.id!r} has sign {sign} on {bid!r}")
            b = bseen[bid]
            boundary[b.head] += sign
            boundary[b.tail] -= sign
        if any(boundary.values()):
            raise NetlistError(f"mesh {m.id!r} is not a closed loop")


def parse_number(token: str) -> Fraction:
    if not _NUMBER.match(token):
        raise ValueError(f"bad number {token!r}")
    if "/" in token:
        num, den = token.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator in {token!r}")
        return Fraction(num) / int(den)
    return Fraction(token)


def format_number(x: Fraction) -> str:
    """Lowest-terms ``p/q`` (or plain integer) text for an exact value."""
    return str(Fraction(x))


def _tokens(line: str):
    """Yield (column, token) pairs; columns are 1-based."""
    for m in re.finditer(r"\S+", line):
        yield m.start() + 1, m.group()


def parse_netlist(text: str) -> Circuit:
    nodes: list[Node] = []
    branches: list[Branch] = []
    meshes: list[Mesh] = []
    # id -> (line, column) of the declaration and of each reference
    declared: dict[tuple[str, str], tuple[int, int]] = {}
    node_refs: list[tuple[str, int, int]] = []
    branch_refs: list[tuple[str, int, int]] = []

    def declare(kind, ident, ln, col):
        if not _ID.match(ident):
            raise NetlistError(f"invalid {kind} id {ident!r}", ln, col)
        if (kind, ident) in declared:
            first = declared[(kind, ident)][0]
            raise NetlistError(f"duplicate {kind} id {ident!r} (first declared on line {first})", ln, col)
        declared[(kind, ident)] = (ln, col)

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = list(_tokens(line))
        if not toks:
            continue
        col0, directive = toks[0]
        args = toks[1:]
        if directive == "node":
            if len(args) != 1:
                raise NetlistError("expected: node <id>", ln, col0)
            declare("node", args[0][1], ln, args[0][0])
            nodes.append(Node(args[0][1], len(nodes)))
        elif directive == "branch":
            if len(args) < 4:
                raise NetlistError("expected: branch <id> <tail> <head> R=<value> [E=<value>]", ln, col0)
            (cid, bid), (ct, tail), (ch, head) = args[:3]
            declare("branch", bid, ln, cid)
            node_refs += [(tail, ln, ct), (head, ln, ch)]
            if tail == head:
                raise NetlistError(f"branch {bid!r} is a self-loop on {tail!r}", ln, ch)
            params: dict[str, Fraction] = {}
            for col, tok in args[3:]:
                key, sep, val = tok.partition("=")
                key = key.upper()
                if not sep or key not in ("R", "E"):
                    raise NetlistError(f"expected R=<value> or E=<value>, got {tok!r}", ln, col)
                if key in params:
                    raise NetlistError(f"{key} given twice", ln, col)
                try:
                    params[key] = parse_number(val)
                except ValueError as exc:
                    raise NetlistError(str(exc), ln, col + len(key) + 1) from None
                if key == "R" and params[key] <= 0:
                    raise NetlistError(f"resistance must be positive, got {val}", ln, col)
            if "R" not in params:
                raise NetlistError(f"branch {bid!r} has no R=<value>", ln, col0)
            branches.append(Branch(bid, tail, head, params["R"], params.get("E", Fraction(0))))
        elif directive == "mesh":
            if len(args) < 2:
                raise NetlistError("expected: mesh <id> <+branch|-branch>...", ln, col0)
            declare("mesh", args[0][1], ln, args[0][0])
            entries = []
            for col, tok in args[1:]:
                sign = -1 if tok[0] == "-" else 1
                bid = tok[1:] if tok[0] in "+-" else tok
                if not bid:
                    raise NetlistError(f"bad mesh entry {tok!r}", ln, col)
                branch_refs.append((bid, ln, col))
                entries.append((bid, sign))
            meshes.append(Mesh(args[0][1], tuple(entries)))
        else:
            raise NetlistError(f"unknown directive {directive!r}", ln, col0)

    for ident, ln, col in node_refs:
        if ("node", ident) not in declared:
            raise NetlistError(f"unknown node {ident!r}", ln, col)
    for ident, ln, col in branch_refs:
        if ("branch", ident) not in declared:
            raise NetlistError(f"unknown branch {ident!r}", ln, col)
    if not nodes:
        raise NetlistError("no node declarations", 1, 1)
    if not branches:
        raise NetlistError("no branch declarations", 1, 1)
    try:
        return Circuit(nodes, branches, meshes)
    except NetlistError as exc:
        # only mesh closure can still fail here; point at the mesh line
        mid = re.search(r"mesh '([^']+)'", exc.message)
        pos = declared.get(("mesh", mid.group(1))) if mid else None
        raise NetlistError(exc.message, *(pos or (None, None))) from None


def load_netlist(path) -> Circuit:
    with open(path, encoding="utf-8") as fh:
        return parse_netlist(fh.read())


def serialize_netlist(circuit: Circuit) -> str:
    lines = [f"node {n.id}" for n in circuit.nodes]
    for b in circuit.branches:
        lines.append(f"branch {b.id} {b.tail} {b.head} "
                     f"R={format_number(b.resistance)} E={format_number(b.emf)}")
    for m in circuit.meshes:
        ent = " ".join(("+" if s > 0 else "-") + bid for bid, s in m.entries)
        lines.append(f"mesh {m.id} {ent}")
    return "\n".join(lines) + "\n"


def generate_meshes(circuit: Circuit, prefix: str = "m") -> Circuit:
    """Fill in a fundamental cycle basis when the circuit declares no meshes.

    A BFS spanning forest is grown from each component's lowest-index node,
    visiting branches in file order. Every non-tree branch closes one mesh:
    the branch itself with sign +1, followed by the tree path from its head
    back to its tail.
    """
    if circuit.meshes:
        return circuit
    nv = len(circuit.nodes)
    incident: list[list[int]] = [[] for _ in range(nv)]
    ends = []
    for k, b in enumerate(circuit.branches):
        t, h = circuit.node_index(b.tail), circuit.node_index(b.head)
        ends.append((t, h))
        incident[t].append(k)
        incident[h].append(k)

    parent_edge = [-1] * nv
    depth = [-1] * nv
    tree = set()
    for root in range(nv):
        if depth[root] >= 0:
            continue
        depth[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for k in incident[u]:
                t, h = ends[k]
                w = h if t == u else t
                if depth[w] < 0:
                    depth[w] = depth[u] + 1
                    parent_edge[w] = k
                    tree.add(k)
                    queue.append(w)

    def step_up(u):
        # walk from u to its parent along the tree branch; sign is +1 when
        # that matches the branch's own tail->head direction
        k = parent_edge[u]
        t, h = ends[k]
        return (t, (k, -1)) if h == u else (h, (k, 1))

    taken = {m for m in circuit.branch_ids}
    meshes = []
    serial = 0
    for k, (t, h) in enumerate(ends):
        if k in tree:
            continue
        # path head -> tail through the tree: climb from both ends to the LCA
        up_from_head, down_to_tail = [], []
        a, b = h, t
        while depth[a] > depth[b]:
            a, e = step_up(a)
            up_from_head.append(e)
        while depth[b] > depth[a]:
            b, (kk, s) = step_up(b)
            down_to_tail.append((kk, -s))
        while a != b:
            a, e = step_up(a)
            up_from_head.append(e)
            b, (kk, s) = step_up(b)
            down_to_tail.append((kk, -s))
        entries = [(k, 1)] + up_from_head + down_to_tail[::-1]
        serial += 1
        while f"{prefix}{serial}" in taken:
            serial += 1
        mid = f"{prefix}{serial}"
        taken.add(mid)
        meshes.append(Mesh(mid, tuple((circuit.branches[i].id, s) for i, s in entries)))
    return replace(circuit, meshes=tuple(meshes))


def strip_meshes(circuit: Circuit) -> Circuit:
    return replace(circuit, meshes=())
