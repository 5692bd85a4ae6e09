"""Half-edge fat graphs.

A fat graph is stored as three parallel arrays over a dense half-edge index
set 0..k-1: the source vertex of each half edge, the edge-pairing involution,
and a permutation `sigma` whose restriction to the half edges at each vertex
is the counterclockwise cyclic order there.  Leaves are univalent vertices
carrying an ordered (index, direction) label.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import GraphError, ValidationError

IN = "in"
OUT = "out"


class CombinatorialGraph:
    """A finite graph as (source, pairing) arrays over half edges."""

    __slots__ = ("source", "pairing", "num_vertices")

    def __init__(self, source: Sequence[int], pairing: Sequence[int]):
        self.source = tuple(source)
        self.pairing = tuple(pairing)
        if len(self.source) != len(self.pairing):
            raise GraphError("source and pairing must have equal length")
        k = len(self.source)
        for h in range(k):
            p = self.pairing[h]
            if not 0 <= p < k or p == h or self.pairing[p] != h:
                raise GraphError("pairing is not a fixed-point-free involution")
        nv = max(self.source, default=-1) + 1
        used = set(self.source)
        if used != set(range(nv)):
            raise GraphError("isolated vertex: every vertex needs a half edge")
        self.num_vertices = nv

    @property
    def num_half_edges(self) -> int:
        return len(self.source)

    @property
    def num_edges(self) -> int:
        return len(self.source) // 2

    def edge_of(self, h: int) -> int:
        """Canonical edge handle: the smaller half edge of the pair."""
        return min(h, self.pairing[h])

    def edges(self) -> list[int]:
        return sorted({self.edge_of(h) for h in range(len(self.source))})

    def valence(self, v: int) -> int:
        return sum(1 for s in self.source if s == v)


class FatGraph(CombinatorialGraph):
    """Fat graph with leaves.

    `sigma` is a permutation of the half edges; its restriction to the half
    edges at each vertex must be a single cycle.  `leaves` is an ordered
    tuple of (vertex, direction) pairs with direction "in" or "out"; leaf
    vertices must be univalent.
    """

    __slots__ = ("sigma", "leaves")

    def __init__(self, source, pairing, sigma, leaves=()):
        super().__init__(source, pairing)
        self.sigma = tuple(sigma)
        self.leaves = tuple((int(v), str(d)) for v, d in leaves)
        if len(self.sigma) != len(self.source):
            raise GraphError("sigma must permute the half edges")
        if sorted(self.sigma) != list(range(len(self.source))):
            raise GraphError("sigma is not a permutation")
        for h, nxt in enumerate(self.sigma):
            if self.source[nxt] != self.source[h]:
                raise GraphError("sigma must preserve vertices")
        for v in range(self.num_vertices):
            germs = [h for h in range(len(self.source)) if self.source[h] == v]
            seen = {germs[0]}
            cur = self.sigma[germs[0]]
            while cur not in seen:
                seen.add(cur)
                cur = self.sigma[cur]
            if len(seen) != len(germs):
                raise GraphError(f"sigma at vertex {v} is not a single cycle")
        leaf_vs = [v for v, _ in self.leaves]
        if len(set(leaf_vs)) != len(leaf_vs):
            raise GraphError("repeated leaf vertex")
        for v, d in self.leaves:
            if d not in (IN, OUT):
                raise GraphError(f"bad leaf direction {d!r}")
            if self.valence(v) != 1:
                raise GraphError(f"leaf vertex {v} is not univalent")

    # -- convenience views ------------------------------------------------

    def incoming_leaves(self) -> list[int]:
        return [v for v, d in self.leaves if d == IN]

    def outgoing_leaves(self) -> list[int]:
        return [v for v, d in self.leaves if d == OUT]

    def leaf_half_edge(self, v: int) -> int:
        for h in range(len(self.source)):
            if self.source[h] == v:
                return h
        raise GraphError(f"no half edge at {v}")

    def vertex_cycle(self, v: int) -> list[int]:
        """The sigma cycle at v, starting from its least half edge."""
        start = min(h for h in range(len(self.source)) if self.source[h] == v)
        cyc = [start]
        cur = self.sigma[start]
        while cur != start:
            cyc.append(cur)
            cur = self.sigma[cur]
        return cyc

    def is_leaf_vertex(self, v: int) -> bool:
        return any(lv == v for lv, _ in self.leaves)

    def is_leaf_edge(self, e: int) -> bool:
        h = e
        return self.is_leaf_vertex(self.source[h]) or self.is_leaf_vertex(
            self.source[self.pairing[h]])


class MetricAssignment:
    """Edge lengths as exact rationals in [0, 1], keyed by edge handle."""

    __slots__ = ("lengths",)

    def __init__(self, lengths: Mapping[int, Fraction]):
        self.lengths = {int(e): Fraction(x) for e, x in lengths.items()}


# -- boundary structure ---------------------------------------------------


def boundary_permutation(g: FatGraph) -> tuple[tuple[int, ...], ...]:
    """Cycle decomposition of omega = sigma o pairing.

    The cycles partition the half edges; each corresponds to a boundary
    component of the thickened surface.  Cycles are rotated to start at
    their least half edge and sorted by it.
    """
    omega = [g.sigma[g.pairing[h]] for h in range(g.num_half_edges)]
    seen = [False] * len(omega)
    cycles = []
    for start in range(len(omega)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        cur = omega[start]
        while cur != start:
            cyc.append(cur)
            seen[cur] = True
            cur = omega[cur]
        cycles.append(tuple(cyc))
    return tuple(sorted(cycles))


def connected_components(g: CombinatorialGraph) -> list[set[int]]:
    """Vertex sets of the connected components."""
    adj: dict[int, set[int]] = {v: set() for v in range(g.num_vertices)}
    for h in range(g.num_half_edges):
        u, w = g.source[h], g.source[g.pairing[h]]
        adj[u].add(w)
        adj[w].add(u)
    comps = []
    todo = set(range(g.num_vertices))
    while todo:
        start = min(todo)
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
        todo -= comp
    return comps


def surface_type(g: FatGraph) -> tuple[int, int]:
    """(genus, boundary count) of the thickened surface of a connected graph."""
    comps = connected_components(g)
    if len(comps) != 1:
        raise GraphError(
            "graph is disconnected; components: "
            + ", ".join(str(sorted(c)) for c in comps))
    b = len(boundary_permutation(g))
    chi = g.num_vertices - g.num_edges
    genus2 = 2 - chi - b
    if genus2 < 0 or genus2 % 2:
        raise GraphError(f"non-integral genus from chi={chi}, boundary={b}")
    return genus2 // 2, b


# -- closed / admissible fat graphs ---------------------------------------


def closed_violations(g: FatGraph) -> list[tuple[str, str]]:
    """Check the closed-fat-graph conditions."""
    out = []
    leaf_vs = {v for v, _ in g.leaves}
    for v in range(g.num_vertices):
        if v in leaf_vs:
            continue
        if g.valence(v) < 3:
            out.append(("valence", f"inner vertex {v} has valence < 3"))
    cycles = boundary_permutation(g)
    for cyc in cycles:
        leaves_on = [v for v in leaf_vs
                     if any(g.source[h] == v for h in cyc)]
        if len(leaves_on) != 1:
            out.append(("leaf-count",
                        f"boundary cycle {cyc} carries {len(leaves_on)} leaves"))
    return out


def require_closed(g: FatGraph) -> None:
    bad = closed_violations(g)
    if bad:
        raise ValidationError(bad)


def _incoming_cycle(g: FatGraph, leaf_vertex: int) -> tuple[int, ...]:
    h = g.leaf_half_edge(leaf_vertex)
    for cyc in boundary_permutation(g):
        if h in cyc:
            return cyc
    raise GraphError("unreachable")


def admissible_cycle_edges(g: FatGraph) -> list[list[int]]:
    """For each incoming leaf in order, the edges of its boundary circle.

    Only meaningful when the graph is admissible; edges are listed in
    traversal order starting at the leaf attachment.
    """
    require_closed(g)
    out = []
    for lv in g.incoming_leaves():
        cyc = _incoming_cycle(g, lv)
        leaf_edge = g.edge_of(g.leaf_half_edge(lv))
        edges = []
        for h in cyc:
            e = g.edge_of(h)
            if e != leaf_edge and e not in edges:
                edges.append(e)
        out.append(edges)
    return out


def is_admissible(g: FatGraph) -> bool:
    """True iff every incoming boundary graph minus its leaf is an embedded
    circle and these circles are pairwise disjoint."""
    require_closed(g)
    used_vertices: set[int] = set()
    used_edges: set[int] = set()
    for lv in g.incoming_leaves():
        cyc = _incoming_cycle(g, lv)
        leaf_edge = g.edge_of(g.leaf_half_edge(lv))
        edges = {g.edge_of(h) for h in cyc} - {leaf_edge}
        if not edges:
            return False
        germs = []
        for e in edges:
            germs.extend([e, g.pairing[e]])
        verts = [g.source[h] for h in germs]
        attach = g.source[g.pairing[g.leaf_half_edge(lv)]]
        vset = set(verts) - {lv}
        if attach not in vset:
            return False
        # embedded circle: every vertex meets exactly two germs of the circle
        for v in vset:
            if sum(1 for w in verts if w == v) != 2:
                return False
        if len(edges) != len(vset):
            return False
        # connectivity of the circle subgraph
        adj = {v: [] for v in vset}
        for e in edges:
            u, w = g.source[e], g.source[g.pairing[e]]
            adj[u].append(w)
            adj[w].append(u)
        comp = {next(iter(vset))}
        stack = [next(iter(vset))]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        if comp != vset:
            return False
        if vset & used_vertices or edges & used_edges:
            return False
        used_vertices |= vset
        used_edges |= edges
    return True


# -- forest collapse -------------------------------------------------------


def collapse_forest(g: FatGraph, forest: Iterable[int]) -> FatGraph:
    """Contract a set of edges that forms a forest without leaf edges.

    The cyclic order at a merged vertex is spliced by the standard ribbon
    contraction: the fan of one endpoint is inserted in place of the
    contracted half-edge slot at the other.
    """
    edges = sorted({g.edge_of(int(e)) for e in forest})
    for e in edges:
        if g.is_leaf_edge(e):
            raise GraphError(f"leaf collapse forbidden (edge {e})")
    parent = list(range(g.num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        u, v = find(g.source[e]), find(g.source[g.pairing[e]])
        if u == v:
            raise GraphError("not a forest: chosen edges contain a cycle")
        parent[u] = v

    sigma = list(g.sigma)
    pairing = list(g.pairing)
    source = list(g.source)
    dead_h: set[int] = set()
    dead_v: set[int] = set()

    def prev_of(h: int) -> int:
        cur = h
        while sigma[cur] != h:
            cur = sigma[cur]
        return cur

    for e in edges:
        h, hb = e, pairing[e]
        u, v = source[h], source[hb]
        ph, phb = prev_of(h), prev_of(hb)
        if ph == h or phb == hb:
            raise GraphError("cannot collapse an edge at a univalent vertex")
        # merged cycle: u's fan after h, then v's fan after hb
        sigma[ph] = sigma[hb]
        sigma[phb] = sigma[h]
        for k in range(len(source)):
            if source[k] == v and k not in dead_h:
                source[k] = u
        dead_h.update((h, hb))
        dead_v.add(v)
        sigma[h] = h
        sigma[hb] = hb
        source[h] = u
        source[hb] = u

    hmap = {}
    for h in range(len(source)):
        if h not in dead_h:
            hmap[h] = len(hmap)
    vmap = {}
    for h in sorted(hmap):
        v = source[h]
        if v not in vmap:
            vmap[v] = len(vmap)
    new_source = [vmap[source[h]] for h in sorted(hmap)]
    new_pairing = [hmap[pairing[h]] for h in sorted(hmap)]
    new_sigma = [hmap[sigma[h]] for h in sorted(hmap)]
    new_leaves = [(vmap[v], d) for v, d in g.leaves]
    return FatGraph(new_source, new_pairing, new_sigma, new_leaves)


def smooth_bivalent(g: FatGraph) -> FatGraph:
    """Erase non-leaf bivalent vertices, merging their two edges."""
    source = list(g.source)
    pairing = list(g.pairing)
    leaf_vs = {v for v, _ in g.leaves}
    dead_h: set[int] = set()
    changed = True
    while changed:
        changed = False
        counts: dict[int, list[int]] = {}
        for h in range(len(source)):
            if h in dead_h:
                continue
            counts.setdefault(source[h], []).append(h)
        for v, germs in counts.items():
            if v in leaf_vs or len(germs) != 2:
                continue
            g1, g2 = germs
            a, b = pairing[g1], pairing[g2]
            if a == g2:
                raise GraphError("cannot smooth an isolated circle")
            pairing[a] = b
            pairing[b] = a
            dead_h.update((g1, g2))
            changed = True
            break

    hmap = {}
    for h in range(len(source)):
        if h not in dead_h:
            hmap[h] = len(hmap)
    vmap = {}
    for h in sorted(hmap):
        if source[h] not in vmap:
            vmap[source[h]] = len(vmap)
    # rebuild sigma: drop dead germs from each vertex cycle
    sigma = list(g.sigma)
    new_sigma = [0] * len(hmap)
    for h in sorted(hmap):
        nxt = sigma[h]
        while nxt in dead_h:
            nxt = sigma[nxt]
        new_sigma[hmap[h]] = hmap[nxt]
    new_source = [vmap[source[h]] for h in sorted(hmap)]
    new_pairing = [hmap[pairing[h]] for h in sorted(hmap)]
    new_leaves = [(vmap[v], d) for v, d in g.leaves]
    return FatGraph(new_source, new_pairing, new_sigma, new_leaves)


# -- canonical labeling ----------------------------------------------------


def _traverse(g: FatGraph, seed: int, assigned: dict[int, int]) -> None:
    queue = [seed]
    assigned[seed] = len(assigned)
    i = 0
    while i < len(queue):
        h = queue[i]
        i += 1
        for nb in (g.sigma[h], g.pairing[h]):
            if nb not in assigned:
                assigned[nb] = len(assigned)
                queue.append(nb)


def _encode_with(g: FatGraph, assigned: dict[int, int]) -> tuple:
    inv = sorted(assigned, key=assigned.get)
    sig = tuple(assigned[g.sigma[h]] for h in inv)
    pai = tuple(assigned[g.pairing[h]] for h in inv)
    leaf_code = []
    for v, d in g.leaves:
        h = g.leaf_half_edge(v)
        leaf_code.append((assigned.get(h, -1), d))
    return (sig, pai, tuple(leaf_code))


def canonical_label(g: FatGraph) -> bytes:
    """Canonical byte encoding, equal for two graphs iff they are isomorphic
    as fat graphs respecting leaf order and directions.

    The labeling is a breadth-first traversal seeded at the leaves in order;
    leafless components fall back to the least encoding over all seeds.
    """
    assigned: dict[int, int] = {}
    for v, _ in g.leaves:
        h = g.leaf_half_edge(v)
        if h not in assigned:
            _traverse(g, h, assigned)
    while len(assigned) < g.num_half_edges:
        rest = [h for h in range(g.num_half_edges) if h not in assigned]
        best = None
        for seed in rest:
            trial = dict(assigned)
            _traverse(g, seed, trial)
            code = _encode_with(g, trial)
            if best is None or code < best[0]:
                best = (code, trial)
        assigned = best[1]
    return repr(_encode_with(g, assigned)).encode()


# -- metric validation -----------------------------------------------------


def validate_metric(g: FatGraph, metric: MetricAssignment) -> None:
    """Check a length function: leaves have length 1, the zero set is a
    forest whose collapse stays admissible, and each admissible circle has
    total length exactly 1.  Raises ValidationError listing all failures."""
    bad = []
    lengths = metric.lengths
    edges = g.edges()
    missing = [e for e in edges if e not in lengths]
    if missing:
        bad.append(("missing", f"no length for edges {missing}"))
        raise ValidationError(bad)
    for e in edges:
        if not 0 <= lengths[e] <= 1:
            bad.append(("range", f"edge {e} length outside [0, 1]"))
    for e in edges:
        if g.is_leaf_edge(e) and lengths[e] != 1:
            bad.append(("leaf-length", f"leaf edge {e} must have length 1"))
    zero = [e for e in edges if lengths[e] == 0]
    try:
        collapsed = collapse_forest(g, zero)
        if not is_admissible(collapsed):
            bad.append(("zero-set", "collapsing the zero set breaks admissibility"))
    except GraphError as exc:
        bad.append(("zero-set", f"zero set is not collapsible: {exc}"))
    for i, cyc_edges in enumerate(admissible_cycle_edges(g)):
        total = sum(lengths[e] for e in cyc_edges)
        if total != 1:
            bad.append(("cycle-sum", f"admissible circle {i} has length {total}"))
    if bad:
        raise ValidationError(bad)


def barycentric_metric(g: FatGraph) -> MetricAssignment:
    """The uniform exact metric: each admissible-circle edge gets 1/(circle
    edge count), leaves get 1, every other edge gets 1."""
    lengths: dict[int, Fraction] = {e: Fraction(1) for e in g.edges()}
    for cyc_edges in admissible_cycle_edges(g):
        k = len(cyc_edges)
        for e in cyc_edges:
            lengths[e] = Fraction(1, k)
    return MetricAssignment(lengths)


# -- serialization ---------------------------------------------------------


def to_json_dict(g: FatGraph) -> dict:
    return {
        "half_edges": g.num_half_edges,
        "source": list(g.source),
        "pairing": list(g.pairing),
        "sigma": list(g.sigma),
        "leaves": [
            {"vertex": v, "index": i, "direction": d}
            for i, (v, d) in enumerate(g.leaves)
        ],
    }


def from_json_dict(data: dict) -> FatGraph:
    leaves = [(entry["vertex"], entry["direction"])
              for entry in sorted(data["leaves"], key=lambda e: e["index"])]
    return FatGraph(data["source"], data["pairing"], data["sigma"], leaves)


def to_dot(g: FatGraph, name: str = "fatgraph") -> str:
    """Graphviz rendering; leaf vertices are labeled, admissible-circle
    edges are drawn in blue when the graph is admissible."""
    admissible_edges: set[int] = set()
    try:
        if is_admissible(g):
            for cyc in admissible_cycle_edges(g):
                admissible_edges.update(cyc)
    except (ValidationError, GraphError):
        pass
    lines = [f"graph {name} {{"]
    in_idx = out_idx = 0
    labels = {}
    for v, d in g.leaves:
        if d == IN:
            in_idx += 1
            labels[v] = f"in {in_idx}"
        else:
            out_idx += 1
            labels[v] = f"out {out_idx}"
    for v in range(g.num_vertices):
        if v in labels:
            lines.append(f'  v{v} [label="{labels[v]}", shape=plaintext];')
        else:
            lines.append(f'  v{v} [label="", shape=point];')
    for e in g.edges():
        u, w = g.source[e], g.source[g.pairing[e]]
        style = " [color=blue]" if e in admissible_edges else ""
        lines.append(f"  v{u} -- v{w}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
