"""Jacobi diagrams: vertex-oriented uni-trivalent graphs on labelled flags.

A diagram is stored at flag level. Flags are 1-based integers, every flag lies
on exactly one edge and exactly one vertex. The listed order of a trivalent
triple, up to cyclic rotation, is the vertex orientation.

Canonical forms ignore orientation; the orientation is carried by a sign
relative to a fixed representative of the isomorphism class. Reversing one
cyclic order flips the sign (the AS relation), and diagrams with an
orientation-reversing automorphism get sign 0.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "MalformedDiagram",
    "JacobiDiagram",
    "build",
    "empty",
    "strut",
    "theta",
    "tripod",
    "h_diagram",
    "wheel",
    "wheel_with_sign",
    "disjoint_union",
    "glue_legs",
    "relabel",
    "reverse_vertex",
    "components",
    "canonicalize",
    "diagram_from_key",
    "is_in_B_prime",
    "parse_diagram",
    "format_diagram",
]


class MalformedDiagram(ValueError):
    pass


@dataclass(frozen=True)
class JacobiDiagram:
    num_flags: int
    edges: tuple[tuple[int, int], ...]
    trivalent: tuple[tuple[int, int, int], ...]
    univalent: tuple[int, ...]

    @property
    def bidegree(self) -> tuple[int, int]:
        return len(self.trivalent), len(self.univalent)

    @property
    def degree(self) -> int:
        return len(self.trivalent) + len(self.univalent)

    def partner(self) -> dict[int, int]:
        """Map each flag to the other flag on its edge."""
        out = {}
        for a, b in self.edges:
            out[a] = b
            out[b] = a
        return out

    def vertex_of(self) -> dict[int, int]:
        """Map each flag to a vertex index: trivalent vertices first, in listed order."""
        out = {}
        for i, t in enumerate(self.trivalent):
            for f in t:
                out[f] = i
        k = len(self.trivalent)
        for j, u in enumerate(self.univalent):
            out[u] = k + j
        return out

    def __str__(self) -> str:
        return format_diagram(self)


def build(
    num_flags: int,
    edges: Iterable[Sequence[int]],
    trivalent: Iterable[Sequence[int]] = (),
    univalent: Iterable[int] = (),
) -> JacobiDiagram:
    edges = tuple(tuple(int(x) for x in e) for e in edges)
    trivalent = tuple(tuple(int(x) for x in t) for t in trivalent)
    univalent = tuple(int(u) for u in univalent)
    if num_flags < 0 or num_flags % 2:
        raise MalformedDiagram(f"num_flags must be even and nonnegative, got {num_flags}")
    if any(len(e) != 2 for e in edges):
        raise MalformedDiagram("every edge needs exactly two flags")
    if any(len(t) != 3 for t in trivalent):
        raise MalformedDiagram("every trivalent vertex needs exactly three flags")
    if 2 * len(edges) != num_flags or 3 * len(trivalent) + len(univalent) != num_flags:
        raise MalformedDiagram(
            f"inconsistent counts: {num_flags} flags, {len(edges)} edges, "
            f"{len(trivalent)} trivalent, {len(univalent)} univalent"
        )
    universe = set(range(1, num_flags + 1))
    edge_flags = [f for e in edges for f in e]
    vertex_flags = [f for t in trivalent for f in t] + list(univalent)
    for name, flags in (("edge", edge_flags), ("vertex", vertex_flags)):
        if len(set(flags)) != len(flags):
            raise MalformedDiagram(f"a flag is used by two {name}s")
        if set(flags) != universe:
            raise MalformedDiagram(f"{name} flags do not cover 1..{num_flags}")
    return JacobiDiagram(num_flags, edges, trivalent, univalent)


def empty() -> JacobiDiagram:
    return build(0, ())


def strut() -> JacobiDiagram:
    return build(2, [(1, 2)], (), (1, 2))


def theta() -> JacobiDiagram:
    # Orientation chosen so that gluing the two legs of wheel(1) gives +theta.
    return build(6, [(1, 2), (3, 4), (5, 6)], [(1, 3, 5), (2, 6, 4)], ())


def tripod() -> JacobiDiagram:
    """One trivalent vertex with three legs."""
    return build(6, [(1, 2), (3, 4), (5, 6)], [(1, 3, 5)], (2, 4, 6))


def h_diagram() -> JacobiDiagram:
    """Two trivalent vertices joined by an edge, two legs on each."""
    return build(10, [(1, 2), (3, 4), (5, 6), (7, 8), (9, 10)], [(1, 3, 9), (5, 7, 10)], (2, 4, 6, 8))


def wheel(k: int) -> JacobiDiagram:
    """The 2k-wheel with legs on flags 2, 4, ..., 4k.

    Spoke edges are (2i-1, 2i); rim edges are (4k+2i-1, 4k+2i) running from
    vertex i to vertex i+1. Each vertex is ordered (spoke, forward rim, backward
    rim), i.e. all vertices turn the same way in a planar drawing.
    """
    if k < 1:
        raise ValueError("wheel(k) needs k >= 1")
    m = 2 * k
    edges = [(2 * i - 1, 2 * i) for i in range(1, 4 * k + 1)]
    tri = []
    for i in range(1, m + 1):
        fwd = 2 * m + 2 * i - 1
        back = 2 * m + 2 * (i - 1) if i > 1 else 4 * m
        tri.append((2 * i - 1, fwd, back))
    uni = [2 * i for i in range(1, m + 1)]
    return build(4 * m, edges, tri, uni)


def wheel_with_sign(k: int) -> tuple[JacobiDiagram, int]:
    """wheel(k) together with the sign of its flag labelling against its orientation."""
    from .symplectic import orientation_sign

    d = wheel(k)
    return d, orientation_sign(d)


def relabel(d: JacobiDiagram, mapping: dict[int, int]) -> JacobiDiagram:
    """Apply a bijection of flags; orientation data moves with the flags."""
    return build(
        d.num_flags,
        [(mapping[a], mapping[b]) for a, b in d.edges],
        [tuple(mapping[f] for f in t) for t in d.trivalent],
        [mapping[u] for u in d.univalent],
    )


def disjoint_union(d1: JacobiDiagram, d2: JacobiDiagram) -> JacobiDiagram:
    off = d1.num_flags
    return build(
        d1.num_flags + d2.num_flags,
        list(d1.edges) + [(a + off, b + off) for a, b in d2.edges],
        list(d1.trivalent) + [tuple(f + off for f in t) for t in d2.trivalent],
        list(d1.univalent) + [u + off for u in d2.univalent],
    )


def reverse_vertex(d: JacobiDiagram, i: int) -> JacobiDiagram:
    """Reverse the cyclic order at the i-th trivalent vertex."""
    tri = list(d.trivalent)
    a, b, c = tri[i]
    tri[i] = (a, c, b)
    return JacobiDiagram(d.num_flags, d.edges, tuple(tri), d.univalent)


def _compact(num_flags, edges, trivalent, univalent) -> JacobiDiagram:
    used = sorted(f for e in edges for f in e)
    new = {f: i + 1 for i, f in enumerate(used)}
    return build(
        len(used),
        [(new[a], new[b]) for a, b in edges],
        [tuple(new[f] for f in t) for t in trivalent],
        [new[u] for u in univalent],
    )


def glue_legs(d: JacobiDiagram, u: int, v: int) -> JacobiDiagram:
    """Remove univalent flags u, v and join their partners by a new edge.

    Trivalent vertices keep their listed order and cyclic orders, the new
    edge is appended last, and the remaining flags are renumbered in order.
    """
    uni = set(d.univalent)
    if u == v or u not in uni or v not in uni:
        raise MalformedDiagram("glue_legs needs two distinct univalent flags")
    p = d.partner()
    a, b = p[u], p[v]
    if a == v:
        raise MalformedDiagram("cannot glue the two ends of a strut")
    edges = [e for e in d.edges if u not in e and v not in e] + [(a, b)]
    return _compact(
        d.num_flags - 2, edges, d.trivalent, [w for w in d.univalent if w not in (u, v)]
    )


def components(d: JacobiDiagram) -> list[JacobiDiagram]:
    """Connected components, each with flags renumbered from 1."""
    vof = d.vertex_of()
    nv = len(d.trivalent) + len(d.univalent)
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in d.edges:
        ra, rb = find(vof[a]), find(vof[b])
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for v in range(nv):
        groups.setdefault(find(v), []).append(v)
    out = []
    for verts in sorted(groups.values()):
        vs = set(verts)
        edges = [e for e in d.edges if vof[e[0]] in vs]
        tri = [t for i, t in enumerate(d.trivalent) if i in vs]
        k = len(d.trivalent)
        uni = [u for j, u in enumerate(d.univalent) if k + j in vs]
        out.append(_compact(None, edges, tri, uni))
    return out


def is_in_B_prime(d: JacobiDiagram) -> bool:
    """True iff no connected component is a strut."""
    uni = set(d.univalent)
    return not any(a in uni and b in uni for a, b in d.edges)


# --- canonical form -------------------------------------------------------

def _vertex_graph(d: JacobiDiagram):
    """Vertex-level multigraph: colors (0 trivalent, 1 univalent) and adjacency counts."""
    vof = d.vertex_of()
    nv = len(d.trivalent) + len(d.univalent)
    adj: list[dict[int, int]] = [dict() for _ in range(nv)]
    for a, b in d.edges:
        x, y = vof[a], vof[b]
        adj[x][y] = adj[x].get(y, 0) + 1
        if x != y:
            adj[y][x] = adj[y].get(x, 0) + 1
    colors = [0] * len(d.trivalent) + [1] * len(d.univalent)
    return adj, colors


def _refine(adj, colors):
    ncells = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted((colors[w], m) for w, m in adj[v].items())))
            for v in range(len(colors))
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [rank[s] for s in sigs]
        if len(rank) == ncells:
            return colors
        ncells = len(rank)


def _encode(adj, order):
    pos = {v: i for i, v in enumerate(order)}
    out = []
    for v in order:
        for w, m in adj[v].items():
            if pos[w] >= pos[v]:
                out.extend([(pos[v], pos[w])] * m)
    return tuple(sorted(out))


def _search(adj, colors):
    """Individualization-refinement; returns the minimal encoding and all orders achieving it."""
    colors = _refine(adj, colors)
    best = [None, []]

    def visit(cols):
        n = len(cols)
        if len(set(cols)) == n:
            order = sorted(range(n), key=lambda v: cols[v])
            code = _encode(adj, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, [order]
            elif code == best[0]:
                best[1].append(order)
            return
        counts: dict[int, int] = {}
        for c in cols:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(n):
            if cols[v] == target:
                new = [2 * c + (1 if c >= target else 0) for c in cols]
                new[v] = 2 * target
                visit(_refine(adj, new))

    visit(colors)
    return best[0], best[1]


def _flag_map(d: JacobiDiagram, order: list[int], code) -> dict[int, int]:
    """Map d's flags to canonical flags given a canonical vertex order.

    Canonical edge number e (0-based, in code order) owns flags 2e+1 (at the
    lower position) and 2e+2 (at the higher position).
    """
    vof = d.vertex_of()
    pos = {v: i for i, v in enumerate(order)}
    slots: dict[tuple[int, int], list[int]] = {}
    for e, pair in enumerate(code):
        slots.setdefault(pair, []).append(e)
    taken = {pair: 0 for pair in slots}
    mapping = {}
    for a, b in d.edges:
        pa, pb = pos[vof[a]], pos[vof[b]]
        if pa > pb:
            a, b, pa, pb = b, a, pb, pa
        e = slots[(pa, pb)][taken[(pa, pb)]]
        taken[(pa, pb)] += 1
        mapping[a] = 2 * e + 1
        mapping[b] = 2 * e + 2
    return mapping


def _cyclic_sign(triple, target) -> int:
    """+1 if `triple` is a cyclic rotation of `target`, -1 if of its reverse."""
    a, b, c = target
    if tuple(triple) in ((a, b, c), (b, c, a), (c, a, b)):
        return 1
    return -1


def _orientation_sign(d: JacobiDiagram, mapping: dict[int, int]) -> int:
    s = 1
    for t in d.trivalent:
        img = tuple(mapping[f] for f in t)
        s *= _cyclic_sign(img, tuple(sorted(img)))
    return s


def _key(n_tri: int, n_uni: int, code) -> bytes:
    flat = [n_tri, n_uni]
    for a, b in code:
        flat.extend((a, b))
    return bytes(flat)


def canonicalize(d: JacobiDiagram) -> tuple[bytes, int]:
    """Return (key, sign) with d equal to sign times the representative of key.

    The representative (see diagram_from_key) orients each trivalent vertex by
    increasing flag label. Sign 0 marks diagrams equal to their own negative.
    Components are canonicalized separately and merged in key order, so
    swapping isomorphic components never contributes a sign.
    """
    comps = components(d)
    if len(comps) == 1:
        return _canonicalize_connected(comps[0])
    parts = sorted(_canonicalize_connected(c) for c in comps)
    sign = 1
    for _, s in parts:
        sign *= s
    return _merge_keys([k for k, _ in parts]), sign


def _merge_keys(keys: list[bytes]) -> bytes:
    n_tri = sum(k[0] for k in keys)
    n_uni = sum(k[1] for k in keys)
    code = []
    tri_off, uni_off = 0, n_tri
    for k in keys:
        kt = k[0]

        def place(p, kt=kt, tri_off=tri_off, uni_off=uni_off):
            return tri_off + p if p < kt else uni_off + p - kt

        code.extend((place(k[i]), place(k[i + 1])) for i in range(2, len(k), 2))
        tri_off += kt
        uni_off += k[1]
    return _key(n_tri, n_uni, sorted(code))


@lru_cache(maxsize=None)
def _canonicalize_connected(d: JacobiDiagram) -> tuple[bytes, int]:
    adj, colors = _vertex_graph(d)
    code, orders = _search(adj, colors)
    code = code or ()
    key = _key(len(d.trivalent), len(d.univalent), code)
    k = len(d.trivalent)
    # a loop at a trivalent vertex gives an odd flag swap
    if any(adj[v].get(v, 0) for v in range(k)):
        return key, 0
    signs = {_orientation_sign(d, _flag_map(d, order, code)) for order in orders}
    if len(signs) > 1:
        return key, 0
    return key, signs.pop()


def diagram_from_key(key: bytes) -> JacobiDiagram:
    n_tri, n_uni = key[0], key[1]
    code = [(key[i], key[i + 1]) for i in range(2, len(key), 2)]
    at: list[list[int]] = [[] for _ in range(n_tri + n_uni)]
    edges = []
    for e, (a, b) in enumerate(code):
        edges.append((2 * e + 1, 2 * e + 2))
        at[a].append(2 * e + 1)
        at[b].append(2 * e + 2)
    tri = [tuple(sorted(at[v])) for v in range(n_tri)]
    uni = [at[v][0] for v in range(n_tri, n_tri + n_uni)]
    return build(2 * len(code), edges, tri, uni)


# --- literal format ---------------------------------------------------------

_FIELD = re.compile(r"^\s*(flags|edges|tri|uni)\s*=\s*(.*?)\s*$", re.S)
_GROUP = re.compile(r"\(([^()]*)\)")


def parse_diagram(text: str) -> JacobiDiagram:
    """Parse `flags=N; edges=(a b)...; tri=(p q r)...; uni=(u)...`."""
    fields: dict[str, str] = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        m = _FIELD.match(part)
        if not m:
            raise MalformedDiagram(f"cannot parse field {part.strip()!r}")
        fields[m.group(1)] = m.group(2)
    if "flags" not in fields:
        raise MalformedDiagram("missing flags=N")

    def groups(name):
        body = fields.get(name, "")
        found = _GROUP.findall(body)
        if _GROUP.sub("", body).strip():
            raise MalformedDiagram(f"stray text in {name}=")
        return [tuple(int(x) for x in g.split()) for g in found]

    return build(
        int(fields["flags"]),
        groups("edges"),
        groups("tri"),
        [g[0] if len(g) == 1 else _bad_uni(g) for g in groups("uni")],
    )


def _bad_uni(g):
    raise MalformedDiagram(f"univalent vertex must be a single flag, got {g}")


def format_diagram(d: JacobiDiagram) -> str:
    e = "".join(f"({a} {b})" for a, b in d.edges)
    t = "".join("(" + " ".join(map(str, x)) + ")" for x in d.trivalent)
    u = "".join(f"({x})" for x in d.univalent)
    return f"flags={d.num_flags}; edges={e}; tri={t}; uni={u}"
