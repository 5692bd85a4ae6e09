"""Critical, unfolded and partially unfolded graphs of radial slit types.

The construction assembles, per radial segment, the tree obtained by gluing
the radial edges of coinciding slits and parametrization points up to the
smaller tip on each folded consecutive pair, attaches these trees to the
admissible circles, glues slit tips pairwise, and reads the cyclic order at
each glued vertex by sweeping counterclockwise around it, crossing from the
clockwise bank of a slit cut to the counterclockwise bank of its partner.
Radii are purely ordinal: slit levels 1..l, parametrization points above
every slit level, circle attachment at level 0.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from . import radial
from .errors import GraphError, ValidationError
from .fatgraph import (FatGraph, IN, OUT, canonical_label, collapse_forest,
                       is_admissible, require_closed, smooth_bivalent)
from .radial import CombinatorialType

FOLD = "fold"
UNFOLD = "unfold"


def unfolding_length(t: CombinatorialType) -> int:
    """d = sum over radial segments of (stack size - 1)."""
    return sum(len(stack) - 1
               for ann in t.annuli for stack in ann.stacks)


def _nested_bits(t: CombinatorialType, bits: Sequence) -> dict:
    flat = []
    for b in bits:
        if b in (FOLD, True, 1):
            flat.append(True)
        elif b in (UNFOLD, False, 0):
            flat.append(False)
        else:
            raise GraphError(f"bad unfolding entry {b!r}")
    if len(flat) != unfolding_length(t):
        raise GraphError(
            f"unfolding vector has length {len(flat)}, expected "
            f"{unfolding_length(t)}")
    nested: dict[tuple[int, int], tuple[bool, ...]] = {}
    pos = 0
    for a, ann in enumerate(t.annuli):
        for s, stack in enumerate(ann.stacks):
            k = len(stack) - 1
            nested[(a, s)] = tuple(flat[pos:pos + k])
            pos += k
    return nested


class _Assembly:
    """Mutable scratch state while building one graph."""

    def __init__(self):
        self.germ_vertex: list[int] = []
        self.pairing: list[int] = []
        self.edge_info: dict[int, tuple] = {}
        self.vertex_count = 0
        self.cycles: dict[int, list[int]] = {}
        self.sites: list[tuple[int, list]] = []
        self.tip_at: dict[int, tuple[int, int]] = {}
        self.out_leaves: dict[int, int] = {}

    def new_vertex(self) -> int:
        self.vertex_count += 1
        return self.vertex_count - 1

    def add_edge(self, u: int, v: int, info: tuple) -> tuple[int, int]:
        g1 = len(self.germ_vertex)
        self.germ_vertex.extend((u, v))
        self.pairing.extend((g1 + 1, g1))
        self.edge_info[g1] = info
        return g1, g1 + 1


def _build_run(asm: _Assembly, t: CombinatorialType, a: int, s: int,
               elems: list[int], bottom_level: int, bottom_v: int,
               heights: dict[int, int], top: int) -> int:
    """Glued tree of a maximal folded run; returns its bottom germ."""
    hmin = min(heights[e] for e in elems)
    v = asm.new_vertex()
    g_lo, g_hi = asm.add_edge(bottom_v, v, ("rad", a, s, bottom_level, hmin))
    if hmin == top:
        if len(elems) != 1 or not t.is_param(elems[0]):
            raise GraphError("coinciding parametrization points")
        asm.out_leaves[elems[0] - t.num_slits] = v
        asm.edge_info[g_lo] = ("leafout", elems[0] - t.num_slits, a, s,
                               bottom_level)
        return g_lo
    items: list[tuple] = [("g", g_hi)]
    tip_positions: list[tuple[int, int]] = []
    i = 0
    while i < len(elems):
        e = elems[i]
        if heights[e] == hmin:
            if t.is_param(e):
                raise GraphError("parametrization point below a slit level")
            items.append(("cw", e))
            items.append(("ccw", e))
            tip_positions.append((e, len(items) - 1))
            i += 1
        else:
            j = i
            while j < len(elems) and heights[elems[j]] > hmin:
                j += 1
            g_sub = _build_run(asm, t, a, s, elems[i:j], hmin, v, heights, top)
            items.append(("g", g_sub))
            i = j
    site_idx = len(asm.sites)
    asm.sites.append((v, items))
    for e, pos in tip_positions:
        asm.tip_at[e] = (site_idx, pos)
    return g_lo


def _sweep(asm: _Assembly, t: CombinatorialType, site_ids: list[int]) -> list[int]:
    """Counterclockwise germ order around a glued vertex class."""
    total = sum(1 for sid in site_ids
                for item in asm.sites[sid][1] if item[0] == "g")
    start_sid = min(site_ids)
    start_idx = next(i for i, item in enumerate(asm.sites[start_sid][1])
                     if item[0] == "g")
    emitted: list[int] = []
    sid, idx = start_sid, start_idx
    while True:
        items = asm.sites[sid][1]
        kind = items[idx][0]
        if kind == "g":
            if (sid, idx) == (start_sid, start_idx) and emitted:
                break
            emitted.append(items[idx][1])
            idx = (idx + 1) % len(items)
        elif kind == "cw":
            partner = t.pairing[items[idx][1]]
            sid, pidx = asm.tip_at[partner]
            if sid not in site_ids:
                raise GraphError("slit pair glued across distinct vertices")
            idx = (pidx + 1) % len(asm.sites[sid][1])
        else:
            raise GraphError("degenerate gluing at a slit tip")
        if len(emitted) > total:
            raise GraphError("sweep does not close up")
    if len(emitted) != total:
        raise GraphError("local structure at a glued tip is not a disk")
    return emitted


def _assemble(t: CombinatorialType, nested_bits: dict
              ) -> tuple[FatGraph, dict[int, tuple]]:
    """Raw (unsmoothed) graph plus per-edge structural tags."""
    h2 = t.num_slits
    if t.at_inner:
        raise GraphError("a slit sits on the inner boundary")
    top = t.num_levels + 1
    heights = {xi: t.level_of(xi) for ann in t.annuli
               for xi in ann.sequence()}
    asm = _Assembly()
    incoming: list[int] = []

    base_vertex: dict[tuple[int, int], int] = {}
    zero_vertex: dict[int, int] = {}
    for a, ann in enumerate(t.annuli):
        for s in range(len(ann.stacks)):
            base_vertex[(a, s)] = asm.new_vertex()
        if ann.at_zero:
            zero_vertex[a] = base_vertex[(a, 0)]
        else:
            zero_vertex[a] = asm.new_vertex()

    trunk_germs: dict[tuple[int, int], list[int]] = {}
    for a, ann in enumerate(t.annuli):
        for s, stack in enumerate(ann.stacks):
            bits = nested_bits[(a, s)]
            germs = []
            run = [stack[0]]
            for i in range(1, len(stack)):
                if bits[i - 1]:
                    run.append(stack[i])
                else:
                    germs.append(_build_run(asm, t, a, s, run, 0,
                                            base_vertex[(a, s)], heights, top))
                    run = [stack[i]]
            germs.append(_build_run(asm, t, a, s, run, 0,
                                    base_vertex[(a, s)], heights, top))
            trunk_germs[(a, s)] = germs

    for a, ann in enumerate(t.annuli):
        order = ([base_vertex[(a, s)] for s in range(len(ann.stacks))]
                 if ann.at_zero else
                 [zero_vertex[a]] + [base_vertex[(a, s)]
                                     for s in range(len(ann.stacks))])
        eplus: dict[int, int] = {}
        eminus: dict[int, int] = {}
        for idx, v in enumerate(order):
            w = order[(idx + 1) % len(order)]
            g1, g2 = asm.add_edge(v, w, ("arc", a, idx))
            eplus[idx] = g1
            eminus[(idx + 1) % len(order)] = g2
        leaf_v = asm.new_vertex()
        gl, _ = asm.add_edge(zero_vertex[a], leaf_v, ("leafin", a))
        incoming.append(leaf_v)
        for idx, v in enumerate(order):
            if ann.at_zero:
                stack_here = idx
            else:
                stack_here = idx - 1 if idx else None
            cyc = [eminus[idx]]
            if stack_here is not None:
                cyc.extend(trunk_germs[(a, stack_here)])
            cyc.append(eplus[idx])
            if v == zero_vertex[a]:
                cyc.append(gl)
            asm.cycles[v] = cyc

    # glue slit tips pairwise and read the merged cyclic orders
    parent = list(range(asm.vertex_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(h2):
        vi = asm.sites[asm.tip_at[i][0]][0]
        vj = asm.sites[asm.tip_at[t.pairing[i]][0]][0]
        a, b = find(vi), find(vj)
        if a != b:
            parent[a] = b

    classes: dict[int, list[int]] = {}
    for sid, (v, _) in enumerate(asm.sites):
        classes.setdefault(find(v), []).append(sid)
    cycles_by_root: dict[int, list[int]] = {}
    for v, cyc in asm.cycles.items():
        cycles_by_root[find(v)] = cyc
    for root, site_ids in classes.items():
        cycles_by_root[root] = _sweep(asm, t, site_ids)

    vmap: dict[int, int] = {}
    source = []
    for g in range(len(asm.germ_vertex)):
        r = find(asm.germ_vertex[g])
        if r not in vmap:
            vmap[r] = len(vmap)
        source.append(vmap[r])
    germs_by_root: dict[int, list[int]] = {}
    for g in range(len(source)):
        germs_by_root.setdefault(find(asm.germ_vertex[g]), []).append(g)
    sigma = [0] * len(asm.germ_vertex)
    for root, germs in germs_by_root.items():
        cyc = cycles_by_root.get(root)
        if cyc is None:
            if len(germs) != 1:
                raise GraphError("vertex without a cyclic order")
            cyc = germs
        if sorted(cyc) != sorted(germs):
            raise GraphError("cyclic order does not match the vertex germs")
        for i, g in enumerate(cyc):
            sigma[g] = cyc[(i + 1) % len(cyc)]
    leaves = [(vmap[find(v)], IN) for v in incoming]
    for p in range(t.m):
        leaves.append((vmap[find(asm.out_leaves[p])], OUT))
    graph = FatGraph(source, asm.pairing, sigma, leaves)
    info = {min(e, asm.pairing[e]): inf
            for e, inf in asm.edge_info.items()}
    return graph, info


def _reject_squeezed(t: CombinatorialType) -> None:
    if t.at_inner:
        raise GraphError("degenerate type: slit on the inner boundary")
    if any(radial._squeezed(u) for u in radial.jump_orbit(t)):
        raise GraphError("degenerate type: squeezed slit pair")


def _all_fold(t: CombinatorialType) -> dict:
    return {(a, s): (True,) * (len(stack) - 1)
            for a, ann in enumerate(t.annuli)
            for s, stack in enumerate(ann.stacks)}


def _all_unfold(t: CombinatorialType) -> dict:
    return {(a, s): (False,) * (len(stack) - 1)
            for a, ann in enumerate(t.annuli)
            for s, stack in enumerate(ann.stacks)}


def _finish(raw: FatGraph) -> FatGraph:
    g = smooth_bivalent(raw)
    require_closed(g)
    if not is_admissible(g):
        raise GraphError("construction produced a non-admissible graph")
    return g


def critical_graph(t: CombinatorialType) -> FatGraph:
    """The admissible fat graph of a type, all coinciding segments glued.

    Invariant under jumps.  Types with a squeezed pair or a slit on the
    inner boundary are rejected; slits on the outer radius are fine.
    """
    radial.validate_type(t)
    _reject_squeezed(t)
    raw, _ = _assemble(t, _all_fold(t))
    return _finish(raw)


def unfolded_graph(t: CombinatorialType) -> FatGraph:
    """No gluing between coinciding radial edges; tips still glue pairwise.
    Depends on the representative, not just its jump class."""
    radial.validate_type(t)
    if t.at_inner:
        raise GraphError("degenerate type: slit on the inner boundary")
    raw, _ = _assemble(t, _all_unfold(t))
    return _finish(raw)


def partial_graph(t: CombinatorialType, bits: Sequence) -> FatGraph:
    """Glue each consecutive coinciding pair exactly where its bit folds.

    `bits` has one entry ("fold"/"unfold" or truthy/falsy) per consecutive
    pair, segments in annulus order, pairs bottom to top.
    """
    radial.validate_type(t)
    raw, _ = _assemble(t, _nested_bits(t, bits))
    return _finish(raw)


def corner_family(t: CombinatorialType) -> list[FatGraph]:
    """All distinct graphs over the jump orbit and all fold-corner vectors,
    sorted by canonical label.  Always contains the critical graph."""
    radial.validate_type(t)
    _reject_squeezed(t)
    out: dict[bytes, FatGraph] = {}
    for rep in sorted(radial.jump_orbit(t), key=radial.encode):
        d = unfolding_length(rep)
        for bits in itertools.product((True, False), repeat=d):
            raw, _ = _assemble(rep, _nested_bits(rep, bits))
            g = _finish(raw)
            out.setdefault(canonical_label(g), g)
    return [out[k] for k in sorted(out)]


# -- chamber collapse maps -----------------------------------------------


class ChamberCollapse:
    """An annular collapse: forest in the (subdivided) source graph whose
    contraction lands on the target's critical graph."""

    __slots__ = ("source", "forest", "result")

    def __init__(self, source: FatGraph, forest: frozenset[int],
                 result: FatGraph):
        self.source = source
        self.forest = forest
        self.result = result


class Zigzag:
    """A radial collapse zigzag: forests on both sides contract onto the
    common middle graph."""

    __slots__ = ("source", "source_forest", "middle", "target", "target_forest")

    def __init__(self, source, source_forest, middle, target, target_forest):
        self.source = source
        self.source_forest = source_forest
        self.middle = middle
        self.target = target
        self.target_forest = target_forest


def _annular_sets(t: CombinatorialType, drop: int) -> Iterable[frozenset[int]]:
    p = len(radial.interior_levels(t))
    return (frozenset(c) for c in itertools.combinations(range(p + 1), drop))


def collapse_annular_set(t: CombinatorialType, chambers: frozenset[int]
                         ) -> CombinatorialType:
    out = t
    for j in sorted(chambers, reverse=True):
        out = radial.face(out, t.n + 1, j)
    return out


def annular_collapse(t: CombinatorialType, t_prime: CombinatorialType
                     ) -> ChamberCollapse:
    """Forest of the critical graph inside collapsed annular chambers.

    `t_prime` must arise from `t` by collapsing annular chambers only; both
    nondegenerate.  The returned forest contains no leaf edge and its
    contraction equals the target critical graph.
    """
    radial.validate_type(t)
    radial.validate_type(t_prime)
    if radial.is_degenerate(t) or radial.is_degenerate(t_prime):
        raise GraphError("annular collapse requires nondegenerate types")
    want = radial.canonicalize(t_prime)
    drop = multi_drop(t, t_prime, annular=True)
    matches = [S for S in _annular_sets(t, drop)
               if radial.canonicalize(collapse_annular_set(t, S)) == want]
    if not matches:
        raise GraphError("target is not an annular collapse of the source")
    chambers = min(matches, key=lambda S: tuple(sorted(S)))
    raw, info = _assemble(t, _all_fold(t))
    forest = set()
    for e, inf in info.items():
        if inf[0] != "rad":
            continue
        lo, hi = inf[3], inf[4]
        if all(gap in chambers for gap in range(lo, hi)):
            forest.add(e)
    collapsed = _finish_collapse(raw, forest)
    target = critical_graph(collapse_annular_set(t, chambers))
    if canonical_label(collapsed) != canonical_label(target):
        raise GraphError("annular collapse does not land on the target graph")
    return ChamberCollapse(raw, frozenset(forest), collapsed)


def multi_drop(t: CombinatorialType, t2: CombinatorialType, annular: bool
               ) -> int:
    d1, d2 = radial.multi_degree(t), radial.multi_degree(t2)
    if annular:
        if d1.radial != d2.radial:
            raise GraphError("radial degrees must agree for an annular collapse")
        drop = d1.annular - d2.annular
    else:
        if d1.annular != d2.annular:
            raise GraphError("annular degrees must agree for a radial collapse")
        drop = sum(d1.radial) - sum(d2.radial)
    if drop < 0:
        raise GraphError("target has larger degree than source")
    return drop


def _finish_collapse(raw: FatGraph, forest: set[int]) -> FatGraph:
    g = collapse_forest(raw, forest)
    return _finish(g)


def _merge_groups(ann: radial.Annulus, chambers: frozenset[int]
                  ) -> tuple[bool, list[list[int]]]:
    """Mirror of the radial face arithmetic on stack indices.

    Returns the collapsed annulus's at-zero flag and, per resulting
    segment, the merged original stack indices (counterclockwise order).
    """
    at_zero = ann.at_zero
    groups: list[list[int]] = [[s] for s in range(len(ann.stacks))]
    for j in sorted(chambers, reverse=True):
        k = len(groups)
        q = k - 1 if at_zero else k
        if not 0 <= j <= q or q == 0:
            raise IndexError(f"radial chamber {j} out of range")
        if at_zero:
            if j < q:
                groups = (groups[:j] + [groups[j] + groups[j + 1]]
                          + groups[j + 2:])
            else:
                groups = [groups[-1] + groups[0]] + groups[1:-1]
        else:
            if j == 0:
                at_zero = True
            elif j < q:
                groups = (groups[:j - 1] + [groups[j - 1] + groups[j]]
                          + groups[j + 1:])
            else:
                groups = [groups[-1]] + groups[:-1]
                at_zero = True
    return at_zero, groups


def _radial_sets(t: CombinatorialType, drop: int
                 ) -> Iterable[dict[int, frozenset[int]]]:
    per_axis = []
    qs = radial.radial_degrees(t)
    for a in range(t.n):
        opts = []
        for size in range(0, min(qs[a], drop) + 1):
            opts.extend(frozenset(c)
                        for c in itertools.combinations(range(qs[a] + 1), size))
        per_axis.append(opts)
    for combo in itertools.product(*per_axis):
        if sum(len(S) for S in combo) == drop:
            yield {a: combo[a] for a in range(t.n)}


def collapse_radial_set(t: CombinatorialType, spec: dict[int, frozenset[int]]
                        ) -> CombinatorialType:
    out = t
    for a in range(t.n):
        for j in sorted(spec.get(a, ()), reverse=True):
            out = radial.face(out, a + 1, j)
    return out


def radial_collapse_zigzag(t: CombinatorialType, t2: CombinatorialType
                           ) -> Zigzag:
    """Zigzag of forest collapses linking the critical graphs of a type and
    a radial-chamber collapse of it.

    The middle graph contracts, on both sides, every radial edge sitting on
    a segment formed by merging two or more segments, together with the
    arcs of the collapsed chambers on the source side.
    """
    radial.validate_type(t)
    radial.validate_type(t2)
    if radial.is_degenerate(t) or radial.is_degenerate(t2):
        raise GraphError("radial collapse requires nondegenerate types")
    want = radial.canonicalize(t2)
    drop = multi_drop(t, t2, annular=False)
    match = None
    for spec in _radial_sets(t, drop):
        try:
            image = collapse_radial_set(t, spec)
        except IndexError:
            continue
        if radial.canonicalize(image) == want:
            match = spec
            break
    if match is None:
        raise GraphError("target is not a radial collapse of the source")
    t2_rep = collapse_radial_set(t, match)

    special_src: set[tuple[int, int]] = set()
    special_dst: set[tuple[int, int]] = set()
    for a in range(t.n):
        at_zero, groups = _merge_groups(t.annuli[a], match.get(a, frozenset()))
        assert at_zero == t2_rep.annuli[a].at_zero
        for s_new, group in enumerate(groups):
            if len(group) >= 2:
                special_dst.add((a, s_new))
                special_src.update((a, s_old) for s_old in group)

    raw_src, info_src = _assemble(t, _all_fold(t))
    forest_src = set()
    for e, inf in info_src.items():
        if inf[0] == "arc" and inf[2] in match.get(inf[1], frozenset()):
            forest_src.add(e)
        elif inf[0] == "rad" and (inf[1], inf[2]) in special_src:
            forest_src.add(e)
    middle_left = _finish_collapse(raw_src, forest_src)

    raw_dst, info_dst = _assemble(t2_rep, _all_fold(t2_rep))
    forest_dst = set()
    for e, inf in info_dst.items():
        if inf[0] == "rad" and (inf[1], inf[2]) in special_dst:
            forest_dst.add(e)
    middle_right = _finish_collapse(raw_dst, forest_dst)

    if canonical_label(middle_left) != canonical_label(middle_right):
        raise GraphError("zigzag sides disagree on the middle graph")
    return Zigzag(raw_src, frozenset(forest_src), middle_left,
                  raw_dst, frozenset(forest_dst))
