"""Sullivan diagrams as chord data on parametrized circles.

A diagram lists, per circle, the attachment sites counterclockwise from the
basepoint, each site an ordered tuple of chord ends.  Ends 0..2c-1 belong to
two-ended chords glued by `pairing`; ends 2c..2c+m-1 are the free ends of
the one-ended chords carrying the outgoing leaves, in leaf order.  This is
the same shape of data as a unilevel radial type, but all operations here
are defined through the induced fat graph, which keeps the two models
independently checkable.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from . import _combi
from .errors import GraphError, ParameterError, ValidationError
from .fatgraph import (FatGraph, IN, OUT, boundary_permutation,
                       admissible_cycle_edges, canonical_label,
                       closed_violations, collapse_forest, is_admissible,
                       surface_type)


class Circle:
    """One parametrized circle: sites counterclockwise from the basepoint;
    `at_base` marks a site sitting at the basepoint itself."""

    __slots__ = ("at_base", "sites", "_key")

    def __init__(self, at_base: bool, sites: Sequence[Sequence[int]]):
        self.at_base = bool(at_base)
        self.sites = tuple(tuple(int(x) for x in s) for s in sites)
        self._key = (self.at_base, self.sites)

    def __eq__(self, other):
        return isinstance(other, Circle) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Circle(at_base={self.at_base}, sites={self.sites})"

    def sequence(self) -> list[int]:
        return [x for site in self.sites for x in site]


class SullivanDiagram:
    """Chord data; immutable and hashable."""

    __slots__ = ("m", "circles", "pairing", "_key")

    def __init__(self, m: int, circles: Sequence[Circle],
                 pairing: Sequence[int]):
        self.m = int(m)
        self.circles = tuple(circles)
        self.pairing = tuple(int(x) for x in pairing)
        self._key = (self.m, tuple(c._key for c in self.circles), self.pairing)

    @property
    def n(self) -> int:
        return len(self.circles)

    @property
    def num_chord_ends(self) -> int:
        return len(self.pairing)

    def is_free(self, end: int) -> bool:
        return end >= self.num_chord_ends

    def __eq__(self, other):
        return isinstance(other, SullivanDiagram) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"SullivanDiagram{self._key!r}"

    def location(self, end: int) -> tuple[int, int, int]:
        for c, circ in enumerate(self.circles):
            for s, site in enumerate(circ.sites):
                for p, x in enumerate(site):
                    if x == end:
                        return c, s, p
        raise KeyError(end)


def encode(d: SullivanDiagram) -> tuple:
    return d._key


def text_form(d: SullivanDiagram) -> str:
    parts = [f"n={d.n}", f"m={d.m}", f"c={d.num_chord_ends // 2}"]
    for i, circ in enumerate(d.circles):
        z = "@0" if circ.at_base else "@+"
        sites = " ".join("[" + ",".join(map(str, s)) + "]" for s in circ.sites)
        parts.append(f"C{i}{z}: {sites}")
    pairs = sorted({tuple(sorted((i, d.pairing[i])))
                    for i in range(d.num_chord_ends)})
    parts.append("chords " + " ".join(f"{i}-{j}" for i, j in pairs))
    return " | ".join(parts)


def to_json_dict(d: SullivanDiagram) -> dict:
    locs = {}
    for c, circ in enumerate(d.circles):
        for s, site in enumerate(circ.sites):
            for p, x in enumerate(site):
                locs[x] = {"circle": c, "site": s, "slot": p}
    c2 = d.num_chord_ends
    chords = []
    for i in range(0, c2):
        j = d.pairing[i]
        if i < j:
            chords.append({"ends": [locs[i], locs[j]]})
    free_order = []
    for k in range(d.m):
        free_order.append(locs[c2 + k])
    return {
        "circles": [{"basepoint_site": c.at_base,
                     "sites": [list(s) for s in c.sites]} for c in d.circles],
        "chords": chords,
        "free_order": free_order,
    }


# -- the induced fat graph --------------------------------------------------


def induced_fat_graph(d: SullivanDiagram) -> FatGraph:
    """Attach the chords on the outside of the circles: the cyclic order at
    a site is (incoming arc, chord ends in site order, outgoing arc), with
    the incoming leaf after the outgoing arc at the basepoint."""
    source: list[int] = []
    pairing: list[int] = []
    cycles: dict[int, list[int]] = {}
    nv = 0

    def new_vertex() -> int:
        nonlocal nv
        nv += 1
        return nv - 1

    def add_edge(u: int, v: int) -> tuple[int, int]:
        g = len(source)
        source.extend((u, v))
        pairing.extend((g + 1, g))
        return g, g + 1

    end_germ: dict[int, int] = {}
    site_vertex: dict[tuple[int, int], int] = {}
    incoming: list[int] = []
    base_cycle_extra: dict[int, int] = {}

    for ci, circ in enumerate(d.circles):
        for si in range(len(circ.sites)):
            site_vertex[(ci, si)] = new_vertex()
        base_v = site_vertex[(ci, 0)] if circ.at_base else new_vertex()
        order = ([site_vertex[(ci, si)] for si in range(len(circ.sites))]
                 if circ.at_base else
                 [base_v] + [site_vertex[(ci, si)]
                             for si in range(len(circ.sites))])
        eplus: dict[int, int] = {}
        eminus: dict[int, int] = {}
        for idx, v in enumerate(order):
            w = order[(idx + 1) % len(order)]
            g1, g2 = add_edge(v, w)
            eplus[idx] = g1
            eminus[(idx + 1) % len(order)] = g2
        leaf_v = new_vertex()
        gl, _ = add_edge(base_v, leaf_v)
        incoming.append(leaf_v)
        for idx, v in enumerate(order):
            cycles[v] = [eminus[idx], ("site", ci, idx if circ.at_base
                                       else idx - 1), eplus[idx]]
            if v == base_v:
                cycles[v].append(gl)

    out_leaf_vertex: dict[int, int] = {}
    c2 = d.num_chord_ends
    for i in range(c2):
        j = d.pairing[i]
        if i < j:
            ci, si, _ = d.location(i)
            cj, sj, _ = d.location(j)
            g1, g2 = add_edge(site_vertex[(ci, si)], site_vertex[(cj, sj)])
            end_germ[i] = g1
            end_germ[j] = g2
    for k in range(d.m):
        end = c2 + k
        ci, si, _ = d.location(end)
        leaf_v = new_vertex()
        g1, _ = add_edge(site_vertex[(ci, si)], leaf_v)
        end_germ[end] = g1
        out_leaf_vertex[k] = leaf_v

    sigma = [0] * len(source)
    for v in range(nv):
        cyc = cycles.get(v)
        if cyc is None:
            germs = [h for h in range(len(source)) if source[h] == v]
            if len(germs) != 1:
                raise GraphError("unexpected vertex in the chord assembly")
            cyc = germs
        else:
            expanded: list[int] = []
            for item in cyc:
                if isinstance(item, tuple):
                    _, ci, si = item
                    if si >= 0:
                        expanded.extend(end_germ[x]
                                        for x in d.circles[ci].sites[si])
                else:
                    expanded.append(item)
            cyc = expanded
        for i, g in enumerate(cyc):
            sigma[g] = cyc[(i + 1) % len(cyc)]
    leaves = [(v, IN) for v in incoming]
    leaves += [(out_leaf_vertex[k], OUT) for k in range(d.m)]
    return FatGraph(source, pairing, sigma, leaves)


# -- validation ---------------------------------------------------------------


def diagram_violations(d: SullivanDiagram) -> list[tuple[str, str]]:
    bad: list[tuple[str, str]] = []
    c2 = d.num_chord_ends
    if c2 % 2:
        bad.append(("structure", "odd number of chord ends"))
        return bad
    for i in range(c2):
        j = d.pairing[i]
        if not 0 <= j < c2 or j == i or d.pairing[j] != i:
            bad.append(("structure", "chord pairing is not an involution"))
            return bad
    seen: set[int] = set()
    for ci, circ in enumerate(d.circles):
        if not circ.sites:
            bad.append(("attachment", f"circle {ci} carries no chord"))
        for site in circ.sites:
            if not site:
                bad.append(("structure", f"empty site on circle {ci}"))
            for x in site:
                if x in seen:
                    bad.append(("structure", f"end {x} appears twice"))
                seen.add(x)
    if seen != set(range(c2 + d.m)):
        bad.append(("free-count",
                    f"attached ends {sorted(seen)} do not match {c2} chord "
                    f"ends plus {d.m} free ends"))
        return bad
    if bad:
        return bad
    graph = induced_fat_graph(d)
    for code, msg in closed_violations(graph):
        bad.append(("boundary", f"induced graph: {msg}"))
    if not bad and not is_admissible(graph):
        bad.append(("admissible", "induced graph is not admissible"))
    return bad


def validate_diagram(d: SullivanDiagram) -> None:
    bad = diagram_violations(d)
    if bad:
        raise ValidationError(bad)


def topological_type(d: SullivanDiagram) -> tuple[int, int, int]:
    """(genus, circles, free ends) via the induced fat graph."""
    validate_diagram(d)
    genus, b = surface_type(induced_fat_graph(d))
    assert b == d.n + d.m
    return genus, d.n, d.m


# -- slide moves and the canonical representative -----------------------------


def _remove_at(d: SullivanDiagram, c: int, s: int, p: int):
    sites = [[list(site) for site in circ.sites] for circ in d.circles]
    del sites[c][s][p]
    return sites


def _locate(sites, end: int) -> tuple[int, int, int]:
    for c, circ in enumerate(sites):
        for s, site in enumerate(circ):
            for p, x in enumerate(site):
                if x == end:
                    return c, s, p
    raise KeyError(end)


def _rebuild(d: SullivanDiagram, sites) -> SullivanDiagram:
    assert all(all(site for site in circ) for circ in sites)
    circles = [Circle(d.circles[c].at_base, sites[c])
               for c in range(d.n)]
    return SullivanDiagram(d.m, circles, d.pairing)


def slide_moves(d: SullivanDiagram) -> Iterator[SullivanDiagram]:
    """Single slides of a chord end past an adjacent two-ended chord end at
    the same site, re-attaching next to the partner end."""
    c2 = d.num_chord_ends
    for c, circ in enumerate(d.circles):
        for s, site in enumerate(circ.sites):
            for p, end in enumerate(site):
                if p + 1 < len(site):
                    nb = site[p + 1]
                    if nb < c2 and d.pairing[nb] != end:
                        target = d.pairing[nb]
                        sites = _remove_at(d, c, s, p)
                        tc, ts, tp = _locate(sites, target)
                        sites[tc][ts].insert(tp + 1, end)
                        yield _rebuild(d, sites)
                if p > 0:
                    nb = site[p - 1]
                    if nb < c2 and d.pairing[nb] != end:
                        target = d.pairing[nb]
                        sites = _remove_at(d, c, s, p)
                        tc, ts, tp = _locate(sites, target)
                        sites[tc][ts].insert(tp, end)
                        yield _rebuild(d, sites)


def relabel_canonical(d: SullivanDiagram) -> SullivanDiagram:
    """Renumber two-ended chord ends in scan order; free ends are pinned."""
    c2 = d.num_chord_ends
    perm: dict[int, int] = {}
    for circ in d.circles:
        for x in circ.sequence():
            if x < c2 and x not in perm:
                perm[x] = len(perm)
    circles = [Circle(circ.at_base,
                      [tuple(perm[x] if x < c2 else x for x in site)
                       for site in circ.sites])
               for circ in d.circles]
    new_pairing = [0] * c2
    for old, new in perm.items():
        new_pairing[new] = perm[d.pairing[old]]
    return SullivanDiagram(d.m, circles, new_pairing)


def slide_orbit(d: SullivanDiagram) -> frozenset[SullivanDiagram]:
    start = relabel_canonical(d)
    seen = {start}
    frontier = [start]
    while frontier:
        cur = frontier.pop()
        for nxt in slide_moves(cur):
            r = relabel_canonical(nxt)
            if r not in seen:
                seen.add(r)
                frontier.append(r)
    return frozenset(seen)


def canonical_diagram(d: SullivanDiagram) -> SullivanDiagram:
    return min(slide_orbit(d), key=encode)


# -- chord form of an admissible fat graph ------------------------------------


def _circle_vertices(g: FatGraph) -> set[int]:
    verts: set[int] = set()
    for cyc_edges in admissible_cycle_edges(g):
        for e in cyc_edges:
            verts.add(g.source[e])
            verts.add(g.source[g.pairing[e]])
    return verts


def _chord_form(g: FatGraph) -> FatGraph:
    """Contract non-admissible, non-leaf, non-loop edges with an endpoint
    off the circles until every vertex lies on an admissible circle."""
    while True:
        circle_vs = _circle_vertices(g)
        admissible_edges: set[int] = set()
        for cyc_edges in admissible_cycle_edges(g):
            admissible_edges.update(cyc_edges)
        candidate = None
        for e in g.edges():
            if e in admissible_edges or g.is_leaf_edge(e):
                continue
            u, w = g.source[e], g.source[g.pairing[e]]
            if u == w:
                continue
            if u not in circle_vs or w not in circle_vs:
                candidate = e
                break
        if candidate is None:
            off = [v for v in range(g.num_vertices)
                   if v not in circle_vs and not g.is_leaf_vertex(v)]
            if off:
                raise GraphError(
                    f"vertices {off} cannot be slid onto the circles")
            return g
        g = collapse_forest(g, [candidate])


def from_admissible(g: FatGraph) -> SullivanDiagram:
    """The canonical diagram of the slide class of an admissible fat graph."""
    if not is_admissible(g):
        raise GraphError("graph is not admissible")
    g = _chord_form(g)
    d = _read_chord_data(g)
    return canonical_diagram(d)


def _read_chord_data(g: FatGraph) -> SullivanDiagram:
    sigma = g.sigma
    end_ids: dict[int, int] = {}
    free_of_germ: dict[int, int] = {}
    out_order = {v: k for k, v in enumerate(g.outgoing_leaves())}
    germ_sites: list[tuple[bool, list[list[int]]]] = []

    # first pass: collect chord germs per circle in scan order
    for lv in g.incoming_leaves():
        leaf_h = g.leaf_half_edge(lv)
        base = g.source[g.pairing[leaf_h]]
        leaf_germ = g.pairing[leaf_h]
        e_minus = sigma[leaf_germ]
        sites: list[list[int]] = []
        at_base = False
        v, arriving = base, e_minus
        while True:
            cyc = [arriving]
            cur = sigma[arriving]
            while cur != arriving:
                cyc.append(cur)
                cur = sigma[cur]
            if v == base:
                if cyc[-1] != leaf_germ:
                    raise GraphError("leaf out of place on its circle")
                chords = cyc[1:-2]
                e_plus = cyc[-2]
                at_base = bool(chords)
                if chords:
                    sites.append(chords)
            else:
                chords = cyc[1:-1]
                e_plus = cyc[-1]
                if not chords:
                    raise GraphError("bare vertex on an admissible circle")
                sites.append(chords)
            nxt = g.source[g.pairing[e_plus]]
            arriving = g.pairing[e_plus]
            v = nxt
            if v == base and arriving == e_minus:
                break
        germ_sites.append((at_base, sites))

    germs_in_order = [x for _, sites in germ_sites
                      for site in sites for x in site]
    for germ in germs_in_order:
        ov = g.source[g.pairing[germ]]
        if ov in out_order:
            free_of_germ[germ] = out_order[ov]
    c2 = len(germs_in_order) - len(free_of_germ)
    nxt = 0
    for germ in germs_in_order:
        if germ in free_of_germ:
            end_ids[germ] = c2 + free_of_germ[germ]
        else:
            end_ids[germ] = nxt
            nxt += 1
    pairing = [0] * c2
    for germ, i in end_ids.items():
        if i < c2:
            j = end_ids[g.pairing[germ]]
            pairing[i] = j
            pairing[j] = i
    circles = [Circle(at_base, [tuple(end_ids[x] for x in site)
                                for site in sites])
               for at_base, sites in germ_sites]
    return SullivanDiagram(len(out_order), circles, pairing)


# -- the two transcriptions ---------------------------------------------------


def f_map(t) -> SullivanDiagram:
    """Unilevel radial type to diagram, through its unfolded graph."""
    from . import critical, radial
    radial.validate_type(t)
    if not radial.is_unilevel(t):
        raise GraphError("the diagram map needs a unilevel type")
    return from_admissible(critical.unfolded_graph(t))


def g_map(d: SullivanDiagram):
    """Diagram to canonical unilevel radial type: sites become coinciding
    stacks, two-ended chords become slit pairs, free ends become
    parametrization points."""
    from . import radial
    validate_diagram(d)
    annuli = [radial.Annulus(c.at_base, c.sites) for c in d.circles]
    c2 = d.num_chord_ends
    t = radial.CombinatorialType(d.m, annuli, d.pairing, (1,) * c2,
                                 False, c2 > 0)
    radial.validate_type(t)
    return radial.canonicalize(t)


# -- face maps ----------------------------------------------------------------


def sd_face(d: SullivanDiagram, i: int, j: int) -> SullivanDiagram:
    """Collapse the j-th admissible edge on circle i (edges counted
    counterclockwise from the basepoint), merging its two endpoint sites."""
    if not 0 <= i < d.n:
        raise IndexError(f"circle {i} out of range")
    circ = d.circles[i]
    k = len(circ.sites)
    q = k - 1 if circ.at_base else k
    if not 0 <= j <= q or q == 0:
        raise IndexError(f"admissible edge {j} out of range on circle {i}")
    sites = [list(s) for s in circ.sites]
    if circ.at_base:
        if j < q:
            merged = sites[j] + sites[j + 1]
            new = sites[:j] + [merged] + sites[j + 2:]
        else:
            merged = sites[-1] + sites[0]
            new = [merged] + sites[1:-1]
        new_circ = Circle(True, new)
    else:
        if j == 0:
            new_circ = Circle(True, sites)
        elif j < q:
            merged = sites[j - 1] + sites[j]
            new_circ = Circle(False, sites[:j - 1] + [merged] + sites[j + 1:])
        else:
            new_circ = Circle(True, [sites[-1]] + sites[:-1])
    circles = list(d.circles)
    circles[i] = new_circ
    return SullivanDiagram(d.m, circles, d.pairing)


def degrees(d: SullivanDiagram) -> tuple[int, ...]:
    out = []
    for circ in d.circles:
        k = len(circ.sites)
        out.append(k - 1 if circ.at_base else k)
    return tuple(out)


# -- enumeration --------------------------------------------------------------


FREE_BASE = None


def _circle_arrangements(items: list) -> Iterator[Circle]:
    for order in _combi.distinct_permutations(items):
        for blocks in _combi.segmentations(order):
            yield Circle(False, blocks)
            yield Circle(True, blocks)


def enumerate_diagrams(genus: int, n: int, m: int) -> list[SullivanDiagram]:
    """All canonical connected diagrams of one topological type."""
    if n < 1 or m < 1:
        raise ParameterError(f"need n, m >= 1, got n={n} m={m}")
    if genus < 0:
        raise ParameterError(f"genus must be nonnegative, got {genus}")
    c = 2 * genus - 2 + n + m
    if c < 0:
        raise ParameterError(
            f"no diagrams with genus={genus}, n={n}, m={m}: the chord count "
            f"2g - 2 + n + m is negative")
    c2 = 2 * c
    SLOT = -1
    results: set[SullivanDiagram] = set()
    seen: set[SullivanDiagram] = set()
    for counts in _combi.compositions(c2, n):
        for assignment in itertools.product(range(n), repeat=m):
            items_per = [[SLOT] * counts[ci] for ci in range(n)]
            for k, ci in enumerate(assignment):
                items_per[ci].append(c2 + k)
            if any(not items for items in items_per):
                continue
            per = [list(_circle_arrangements(items)) for items in items_per]
            for combo in itertools.product(*per):
                counter = 0
                circles = []
                for circ in combo:
                    sites = []
                    for site in circ.sites:
                        new = []
                        for x in site:
                            if x == SLOT:
                                new.append(counter)
                                counter += 1
                            else:
                                new.append(x)
                        sites.append(tuple(new))
                    circles.append(Circle(circ.at_base, sites))
                for pairs in _combi.perfect_matchings(range(c2)):
                    pairing = [0] * c2
                    for i, j in pairs:
                        pairing[i] = j
                        pairing[j] = i
                    d = SullivanDiagram(m, circles, pairing)
                    if diagram_violations(d):
                        continue
                    graph = induced_fat_graph(d)
                    try:
                        gg, _ = surface_type(graph)
                    except GraphError:
                        continue
                    if gg != genus:
                        continue
                    r = relabel_canonical(d)
                    if r in seen:
                        continue
                    orbit = slide_orbit(r)
                    seen |= orbit
                    results.add(min(orbit, key=encode))
    return sorted(results, key=encode)
