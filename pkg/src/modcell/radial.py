"""Combinatorial types of radial slit configurations.

A combinatorial type records, per annulus, the counterclockwise sequence of
radial segments starting from angle 0 (each segment carrying a bottom-to-top
stack of coinciding slit ends and parametrization points), together with the
slit pairing, the radial level of each slit, and flags telling whether the
extreme levels sit on the inner or outer boundary.  Slit indices run over
0..2h-1 and parametrization points over 2h..2h+m-1; positions and radii are
never stored numerically.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from . import _combi
from .errors import ParameterError, ValidationError

NONDEGENERATE = "nondegenerate"
UNILEVEL = "unilevel"
ALL = "all"


class Annulus:
    """One annulus: segment stacks counterclockwise from angle 0.

    `at_zero` marks whether the first segment lies on the positive real
    line.  Each stack lists its indices bottom to top, i.e. in the order the
    successor permutation traverses a coinciding segment.
    """

    __slots__ = ("at_zero", "stacks", "_key")

    def __init__(self, at_zero: bool, stacks: Sequence[Sequence[int]]):
        self.at_zero = bool(at_zero)
        self.stacks = tuple(tuple(int(x) for x in s) for s in stacks)
        self._key = (self.at_zero, self.stacks)

    def __eq__(self, other):
        return isinstance(other, Annulus) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Annulus(at_zero={self.at_zero}, stacks={self.stacks})"

    def sequence(self) -> list[int]:
        """All indices in counterclockwise successor order."""
        return [x for stack in self.stacks for x in stack]


class CombinatorialType:
    """A discrete radial slit configuration; immutable and hashable."""

    __slots__ = ("m", "annuli", "pairing", "levels", "at_inner", "at_outer",
                 "_key")

    def __init__(self, m: int, annuli: Sequence[Annulus],
                 pairing: Sequence[int], levels: Sequence[int],
                 at_inner: bool = False, at_outer: bool = False):
        self.m = int(m)
        self.annuli = tuple(annuli)
        self.pairing = tuple(int(x) for x in pairing)
        self.levels = tuple(int(x) for x in levels)
        self.at_inner = bool(at_inner)
        self.at_outer = bool(at_outer)
        self._key = (self.m, tuple(a._key for a in self.annuli), self.pairing,
                     self.levels, self.at_inner, self.at_outer)

    # -- basic views --------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.annuli)

    @property
    def num_slits(self) -> int:
        return len(self.pairing)

    @property
    def num_levels(self) -> int:
        return max(self.levels, default=0)

    def is_param(self, xi: int) -> bool:
        return xi >= self.num_slits

    def level_of(self, xi: int) -> int:
        """Radial level; parametrization points sit above every slit level."""
        if self.is_param(xi):
            return self.num_levels + 1
        return self.levels[xi]

    def __eq__(self, other):
        return isinstance(other, CombinatorialType) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"CombinatorialType{self._key!r}"

    def annulus_of(self, xi: int) -> int:
        for a, ann in enumerate(self.annuli):
            for stack in ann.stacks:
                if xi in stack:
                    return a
        raise KeyError(xi)

    def location(self, xi: int) -> tuple[int, int, int]:
        """(annulus, stack index, position in stack)."""
        for a, ann in enumerate(self.annuli):
            for s, stack in enumerate(ann.stacks):
                for p, x in enumerate(stack):
                    if x == xi:
                        return a, s, p
        raise KeyError(xi)


class MultiDegree:
    """Cell shape: one simplex degree per annulus plus the annular degree."""

    __slots__ = ("radial", "annular")

    def __init__(self, radial: Sequence[int], annular: int):
        self.radial = tuple(int(q) for q in radial)
        self.annular = int(annular)

    @property
    def total(self) -> int:
        return sum(self.radial) + self.annular

    def __eq__(self, other):
        return (isinstance(other, MultiDegree)
                and (self.radial, self.annular) == (other.radial, other.annular))

    def __hash__(self):
        return hash((self.radial, self.annular))

    def __repr__(self):
        return f"MultiDegree({self.radial}, {self.annular})"


# -- derived permutation data ----------------------------------------------


def successor_cycles(t: CombinatorialType) -> list[list[int]]:
    """Per annulus, the cyclic counterclockwise order of its indices."""
    return [ann.sequence() for ann in t.annuli]


def slit_successor(t: CombinatorialType) -> dict[int, int]:
    """The successor restricted to slit indices (cyclic per annulus)."""
    omega: dict[int, int] = {}
    for seq in successor_cycles(t):
        slits = [x for x in seq if not t.is_param(x)]
        for i, x in enumerate(slits):
            omega[x] = slits[(i + 1) % len(slits)]
    return omega


def boundary_cycles(t: CombinatorialType) -> list[list[int]]:
    """Cycles of the boundary permutation (pairing o successor) over slits.

    Annuli without slits contribute no cycle here; they each bound one
    outgoing circle by themselves.
    """
    omega = slit_successor(t)
    perm = {x: t.pairing[omega[x]] for x in omega}
    cycles = []
    seen: set[int] = set()
    for start in sorted(perm):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        cur = perm[start]
        while cur != start:
            cyc.append(cur)
            seen.add(cur)
            cur = perm[cur]
        cycles.append(cyc)
    return cycles


def param_owner(t: CombinatorialType, p: int) -> int | None:
    """The slit whose outer-boundary arc carries parametrization point p:
    the previous slit in counterclockwise order on p's annulus."""
    a = t.annulus_of(p)
    seq = t.annuli[a].sequence()
    if all(t.is_param(x) for x in seq):
        return None
    i = seq.index(p)
    for k in range(1, len(seq) + 1):
        x = seq[(i - k) % len(seq)]
        if not t.is_param(x):
            return x
    raise AssertionError("unreachable")


def outgoing_components(t: CombinatorialType) -> list[tuple]:
    """One handle per outgoing boundary circle: either ("cycle", least slit
    of a boundary cycle) or ("annulus", index) for a slitless annulus."""
    comps: list[tuple] = [("cycle", min(c)) for c in boundary_cycles(t)]
    for a, ann in enumerate(t.annuli):
        if not any(not t.is_param(x) for x in ann.sequence()):
            comps.append(("annulus", a))
    return comps


def component_of_param(t: CombinatorialType, p: int) -> tuple:
    owner = param_owner(t, p)
    if owner is None:
        return ("annulus", t.annulus_of(p))
    cycles = boundary_cycles(t)
    for cyc in cycles:
        if owner in cyc:
            return ("cycle", min(cyc))
    raise AssertionError("unreachable")


def is_connected(t: CombinatorialType) -> bool:
    """True iff the glued surface is connected: annuli linked by slit pairs."""
    if t.n == 1:
        return True
    parent = list(range(t.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(t.num_slits):
        a, b = find(t.annulus_of(i)), find(t.annulus_of(t.pairing[i]))
        if a != b:
            parent[a] = b
    return len({find(a) for a in range(t.n)}) == 1


# -- validation --------------------------------------------------------------


def type_violations(t: CombinatorialType) -> list[tuple[str, str]]:
    """All violated conditions, tagged (ii)-(vi) plus structural tags."""
    bad: list[tuple[str, str]] = []
    h2 = t.num_slits
    if h2 % 2:
        bad.append(("structure", "odd number of slit indices"))
        return bad
    if len(t.levels) != h2:
        bad.append(("structure", "levels must assign one level per slit"))
        return bad
    for i in range(h2):
        p = t.pairing[i]
        if not 0 <= p < h2 or p == i or t.pairing[p] != i:
            bad.append(("structure", "pairing is not a fixed-point-free involution"))
            return bad
    seen: dict[int, int] = {}
    for a, ann in enumerate(t.annuli):
        for stack in ann.stacks:
            if not stack:
                bad.append(("(iii)", f"empty segment stack on annulus {a}"))
            for x in stack:
                if x in seen:
                    bad.append(("(iii)", f"index {x} appears more than once"))
                seen[x] = a
    expected = set(range(h2 + t.m))
    if set(seen) != expected:
        bad.append(("(iii)", "indices must cover all slits and parametrization points"))
        return bad
    # (ii): paired slits share a level
    for i in range(h2):
        if t.levels[i] != t.levels[t.pairing[i]]:
            bad.append(("(ii)", f"slits {i} and {t.pairing[i]} are paired across levels"))
    # levels surjective onto 1..num_levels, flags consistent
    ell = t.num_levels
    if h2:
        if set(t.levels) != set(range(1, ell + 1)):
            bad.append(("levels", "levels must be surjective onto 1..max"))
        if ell == 1 and t.at_inner and t.at_outer:
            bad.append(("levels", "a single level cannot sit on both boundaries"))
    else:
        if t.at_inner or t.at_outer:
            bad.append(("levels", "boundary flags require at least one slit"))
    # (iv): m outgoing boundary circles
    comps = outgoing_components(t)
    if len(comps) != t.m:
        bad.append(("(iv)", f"boundary permutation yields {len(comps)} outgoing "
                            f"circles, expected {t.m}"))
        return bad
    # (v): each outgoing circle carries exactly one parametrization point
    locations: dict[tuple, list[int]] = {c: [] for c in comps}
    for p in range(h2, h2 + t.m):
        locations[component_of_param(t, p)].append(p)
    for comp, ps in sorted(locations.items()):
        if len(ps) != 1:
            bad.append(("(v)", f"outgoing circle {comp} carries {len(ps)} "
                               "parametrization points"))
    return bad


def validate_type(t: CombinatorialType) -> None:
    bad = type_violations(t)
    if bad:
        raise ValidationError(bad)


# -- multidegree --------------------------------------------------------------


def radial_degrees(t: CombinatorialType) -> tuple[int, ...]:
    out = []
    for ann in t.annuli:
        k = len(ann.stacks)
        out.append(k - 1 if ann.at_zero else k)
    return tuple(out)


def interior_levels(t: CombinatorialType) -> list[int]:
    ell = t.num_levels
    levels = list(range(1, ell + 1))
    if t.at_inner and levels:
        levels = levels[1:]
    if t.at_outer and levels:
        levels = levels[:-1]
    return levels


def multi_degree(t: CombinatorialType) -> MultiDegree:
    return MultiDegree(radial_degrees(t), len(interior_levels(t)))


def is_unilevel(t: CombinatorialType) -> bool:
    if t.num_slits == 0:
        return True
    return t.num_levels == 1 and t.at_outer and not t.at_inner


def unilevel_projection(t: CombinatorialType) -> CombinatorialType:
    """Push every slit to the outer radius, keeping all radial data."""
    if t.num_slits == 0:
        return t
    return CombinatorialType(t.m, t.annuli, t.pairing,
                             (1,) * t.num_slits, False, True)


# -- relabeling (slit labels are arbitrary) ----------------------------------


def relabel_canonical(t: CombinatorialType) -> CombinatorialType:
    """Renumber slits in order of first appearance (annuli in order, stacks
    counterclockwise, bottom to top).  Parametrization points keep their
    labels; this is the canonical representative under relabeling."""
    h2 = t.num_slits
    perm: dict[int, int] = {}
    for ann in t.annuli:
        for x in ann.sequence():
            if x < h2 and x not in perm:
                perm[x] = len(perm)
    new_annuli = []
    for ann in t.annuli:
        stacks = tuple(tuple(perm[x] if x < h2 else x for x in stack)
                       for stack in ann.stacks)
        new_annuli.append(Annulus(ann.at_zero, stacks))
    new_pairing = [0] * h2
    new_levels = [0] * h2
    for old, new in perm.items():
        new_pairing[new] = perm[t.pairing[old]]
        new_levels[new] = t.levels[old]
    return CombinatorialType(t.m, new_annuli, new_pairing, new_levels,
                             t.at_inner, t.at_outer)


def encode(t: CombinatorialType) -> tuple:
    """Total order key; compare only relabel-canonical forms."""
    return t._key


def text_form(t: CombinatorialType) -> str:
    """Compact one-line form, stable across runs (golden-file friendly)."""
    parts = [f"n={t.n}", f"m={t.m}", f"h2={t.num_slits}"]
    for a, ann in enumerate(t.annuli):
        z = "@0" if ann.at_zero else "@+"
        stacks = " ".join("[" + ",".join(map(str, s)) + "]" for s in ann.stacks)
        parts.append(f"A{a}{z}: {stacks}")
    pairs = sorted({tuple(sorted((i, t.pairing[i]))) for i in range(t.num_slits)})
    parts.append("pair " + " ".join(f"{i}-{j}" for i, j in pairs))
    parts.append("lev " + ",".join(map(str, t.levels)))
    flags = ("I" if t.at_inner else "-") + ("O" if t.at_outer else "-")
    parts.append(flags)
    return " | ".join(parts)


def to_json_dict(t: CombinatorialType) -> dict:
    return {
        "annuli_count": t.n,
        "outgoing_count": t.m,
        "slit_count": t.num_slits,
        "annuli": [{"first_at_zero": a.at_zero,
                    "stacks": [list(s) for s in a.stacks]} for a in t.annuli],
        "pairing": list(t.pairing),
        "levels": list(t.levels),
        "at_inner": t.at_inner,
        "at_outer": t.at_outer,
    }


def from_json_dict(data: dict) -> CombinatorialType:
    annuli = [Annulus(a["first_at_zero"], a["stacks"]) for a in data["annuli"]]
    return CombinatorialType(data["outgoing_count"], annuli, data["pairing"],
                             data["levels"], data["at_inner"], data["at_outer"])


# -- jump moves ---------------------------------------------------------------


def _remove_at(t: CombinatorialType, a: int, s: int, p: int) -> list[list[list[int]]]:
    stacks = [[list(stack) for stack in ann.stacks] for ann in t.annuli]
    del stacks[a][s][p]
    return stacks


def _rebuild(t: CombinatorialType, stacks) -> CombinatorialType:
    assert all(all(s for s in ann) for ann in stacks)
    annuli = [Annulus(t.annuli[a].at_zero, stacks[a]) for a in range(t.n)]
    return CombinatorialType(t.m, annuli, t.pairing, t.levels,
                             t.at_inner, t.at_outer)


def jump_moves(t: CombinatorialType) -> Iterator[CombinatorialType]:
    """All single jumps in either direction.

    Forward: an index xi immediately below a slit j in the same stack, with
    level(xi) >= level(j), moves just above the partner of j.  Backward is
    the inverse: xi immediately above a slit k moves just below k's partner.
    A jump over xi's own partner is no move at all.
    """
    h2 = t.num_slits
    for a, ann in enumerate(t.annuli):
        for s, stack in enumerate(ann.stacks):
            for p, xi in enumerate(stack):
                # forward: neighbor above is a slit
                if p + 1 < len(stack):
                    j = stack[p + 1]
                    if (j < h2 and t.pairing[j] != xi
                            and t.level_of(xi) >= t.level_of(j)):
                        target = t.pairing[j]
                        stacks = _remove_at(t, a, s, p)
                        ta, ts, tp = _locate(stacks, target)
                        stacks[ta][ts].insert(tp + 1, xi)
                        yield _rebuild(t, stacks)
                # backward: neighbor below is a slit
                if p > 0:
                    k = stack[p - 1]
                    if (k < h2 and t.pairing[k] != xi
                            and t.level_of(xi) >= t.level_of(k)):
                        target = t.pairing[k]
                        stacks = _remove_at(t, a, s, p)
                        ta, ts, tp = _locate(stacks, target)
                        stacks[ta][ts].insert(tp, xi)
                        yield _rebuild(t, stacks)


def _locate(stacks, xi: int) -> tuple[int, int, int]:
    for a, ann in enumerate(stacks):
        for s, stack in enumerate(ann):
            for p, x in enumerate(stack):
                if x == xi:
                    return a, s, p
    raise KeyError(xi)


def jump_orbit(t: CombinatorialType) -> frozenset[CombinatorialType]:
    """Closure of {t} under jumps, as relabel-canonical representatives."""
    start = relabel_canonical(t)
    seen = {start}
    frontier = [start]
    while frontier:
        cur = frontier.pop()
        for nxt in jump_moves(cur):
            r = relabel_canonical(nxt)
            if r not in seen:
                seen.add(r)
                frontier.append(r)
    return frozenset(seen)


def canonicalize(t: CombinatorialType) -> CombinatorialType:
    """The least relabel-canonical representative of the jump orbit."""
    return min(jump_orbit(t), key=encode)


# -- degeneracy ---------------------------------------------------------------


def _squeezed(t: CombinatorialType) -> bool:
    h2 = t.num_slits
    for i in range(h2):
        j = t.pairing[i]
        if j < i:
            continue
        try:
            ai, si, pi = t.location(i)
            aj, sj, pj = t.location(j)
        except KeyError:
            continue
        if (ai, si) != (aj, sj):
            continue
        seq = t.annuli[ai].sequence()
        slit_seq = [x for x in seq if not t.is_param(x)]
        one_point = (len({(t.location(x)[1]) for x in slit_seq}) == 1
                     and len({t.levels[x] for x in slit_seq}) == 1)
        lvl = t.levels[i]
        for a, b in ((i, j), (j, i)):
            ia, ib = slit_seq.index(a), slit_seq.index(b)
            between = []
            k = (ia + 1) % len(slit_seq)
            while k != ib:
                between.append(slit_seq[k])
                k = (k + 1) % len(slit_seq)
            if any(t.levels[x] < lvl for x in between):
                continue
            if one_point:
                pa = t.location(a)[2]
                pb = t.location(b)[2]
                if not pa < pb:
                    continue
            return True
    return False


def is_degenerate(t: CombinatorialType) -> bool:
    """True iff some equivalent configuration has a slit on the inner or
    outer boundary, or a squeezed pair of coinciding paired slits."""
    if t.at_inner or t.at_outer:
        return True
    return any(_squeezed(u) for u in jump_orbit(t))


# -- face maps ----------------------------------------------------------------


def face(t: CombinatorialType, i: int, j: int) -> CombinatorialType:
    """Collapse the j-th chamber on axis i.

    Axes 1..n collapse radial chambers on that annulus (chamber 0 starts at
    angle 0); axis n+1 collapses the j-th annular chamber (innermost first).
    """
    if not 1 <= i <= t.n + 1:
        raise IndexError(f"axis {i} out of range 1..{t.n + 1}")
    if i <= t.n:
        return _radial_face(t, i - 1, j)
    return _annular_face(t, j)


def _radial_face(t: CombinatorialType, a: int, j: int) -> CombinatorialType:
    ann = t.annuli[a]
    k = len(ann.stacks)
    q = k - 1 if ann.at_zero else k
    if not 0 <= j <= q or q == 0:
        raise IndexError(f"radial chamber {j} out of range on annulus {a}")
    stacks = [list(s) for s in ann.stacks]
    if ann.at_zero:
        if j < q:
            merged = stacks[j] + stacks[j + 1]
            new = stacks[:j] + [merged] + stacks[j + 2:]
        else:
            merged = stacks[-1] + stacks[0]
            new = [merged] + stacks[1:-1]
        new_ann = Annulus(True, new)
    else:
        if j == 0:
            new_ann = Annulus(True, stacks)
        elif j < q:
            merged = stacks[j - 1] + stacks[j]
            new_ann = Annulus(False, stacks[:j - 1] + [merged] + stacks[j + 1:])
        else:
            new_ann = Annulus(True, [stacks[-1]] + stacks[:-1])
    annuli = list(t.annuli)
    annuli[a] = new_ann
    return CombinatorialType(t.m, annuli, t.pairing, t.levels,
                             t.at_inner, t.at_outer)


def _annular_face(t: CombinatorialType, j: int) -> CombinatorialType:
    interior = interior_levels(t)
    p = len(interior)
    if not 0 <= j <= p or p == 0:
        raise IndexError(f"annular chamber {j} out of range")
    at_inner, at_outer = t.at_inner, t.at_outer
    levels = list(t.levels)
    if j == 0:
        if not at_inner:
            at_inner = True  # the lowest level lands on the inner boundary
        else:
            upper = interior[0]  # merges downward into the boundary level
            levels = [lv - 1 if lv >= upper else lv for lv in levels]
    elif j == p:
        if not at_outer:
            at_outer = True  # the top level lands on the outer radius
        else:
            upper = interior[-1] + 1
            levels = [lv - 1 if lv >= upper else lv for lv in levels]
    else:
        upper = interior[j]  # merge two adjacent interior levels
        levels = [lv - 1 if lv >= upper else lv for lv in levels]
    return CombinatorialType(t.m, t.annuli, t.pairing, levels,
                             at_inner, at_outer)


# -- enumeration --------------------------------------------------------------


def check_parameters(h: int, n: int, m: int) -> int:
    """Return the genus; raise when 2h = 2(2g - 2 + n + m) has no valid g."""
    if n < 1 or m < 1 or h < 0:
        raise ParameterError(f"need n, m >= 1 and h >= 0, got h={h} n={n} m={m}")
    genus2 = h - n - m + 2
    if genus2 < 0 or genus2 % 2:
        raise ParameterError(
            f"no surface with h={h}, n={n}, m={m}: 2h = 2(2g - 2 + n + m) "
            f"forces 2g = {genus2}")
    return genus2 // 2


def _annulus_arrangements(items: list[int]) -> Iterator[Annulus]:
    for order in _combi.distinct_permutations(items):
        for blocks in _combi.segmentations(order):
            yield Annulus(False, blocks)
            yield Annulus(True, blocks)


SLIT = -1


def _patterns(h2: int, n: int, m: int) -> Iterator[list[Annulus]]:
    """Annulus structures with anonymous slit slots and labeled points."""
    for slit_counts in _combi.compositions(h2, n):
        for assignment in itertools.product(range(n), repeat=m):
            items_per = [[SLIT] * slit_counts[a] for a in range(n)]
            for p, a in enumerate(assignment):
                items_per[a].append(h2 + p)
            if any(not items for items in items_per):
                continue
            per_annulus = [list(_annulus_arrangements(items))
                           for items in items_per]
            for combo in itertools.product(*per_annulus):
                yield list(combo)


def _label_slits(annuli: list[Annulus], h2: int) -> list[Annulus]:
    counter = 0
    out = []
    for ann in annuli:
        stacks = []
        for stack in ann.stacks:
            new = []
            for x in stack:
                if x == SLIT:
                    new.append(counter)
                    counter += 1
                else:
                    new.append(x)
            stacks.append(tuple(new))
        out.append(Annulus(ann.at_zero, stacks))
    assert counter == h2
    return out


def _level_choices(h2: int, pairing: tuple[int, ...], kind: str
                   ) -> Iterator[tuple[tuple[int, ...], bool, bool]]:
    if h2 == 0:
        yield (), False, False
        return
    pairs = sorted({tuple(sorted((i, pairing[i]))) for i in range(h2)})
    if kind == UNILEVEL:
        yield (1,) * h2, False, True
        return
    flag_options = ([(False, False)] if kind == NONDEGENERATE
                    else [(False, False), (True, False), (False, True),
                          (True, True)])
    for grading in _combi.surjective_gradings(len(pairs)):
        levels = [0] * h2
        for (i, j), lv in zip(pairs, grading):
            levels[i] = lv
            levels[j] = lv
        ell = max(grading)
        for at_inner, at_outer in flag_options:
            if ell == 1 and at_inner and at_outer:
                continue
            yield tuple(levels), at_inner, at_outer


def enumerate_types(h: int, n: int, m: int, kind: str = NONDEGENERATE
                    ) -> list[CombinatorialType]:
    """All canonical combinatorial types of connected configurations.

    `kind` selects nondegenerate types, unilevel types (the compactified
    outer-radius subcomplex, degenerate cells included), or every type.
    Deterministic order.
    """
    if kind not in (NONDEGENERATE, UNILEVEL, ALL):
        raise ValueError(f"unknown filter {kind!r}")
    check_parameters(h, n, m)
    h2 = 2 * h
    results: set[CombinatorialType] = set()
    seen: set[CombinatorialType] = set()
    for pattern in _patterns(h2, n, m):
        annuli = _label_slits(pattern, h2)
        for pairing_pairs in _combi.perfect_matchings(range(h2)):
            pairing = [0] * h2
            for i, j in pairing_pairs:
                pairing[i] = j
                pairing[j] = i
            probe = CombinatorialType(m, annuli, pairing, (1,) * h2,
                                      False, h2 > 0)
            if type_violations(probe):
                continue
            if not is_connected(probe):
                continue
            for levels, at_inner, at_outer in _level_choices(h2, tuple(pairing), kind):
                t = CombinatorialType(m, annuli, pairing, levels,
                                      at_inner, at_outer)
                r = relabel_canonical(t)
                if r in seen:
                    continue
                orbit = jump_orbit(r)
                seen |= orbit
                if kind == NONDEGENERATE:
                    if (at_inner or at_outer
                            or any(_squeezed(u) for u in orbit)):
                        continue
                rep = min(orbit, key=encode)
                results.add(rep)
    return sorted(results, key=encode)


# -- independent enumerator over permutation tuples ---------------------------


def _split_cycle(cyc: list[int], bits: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Stacks of a cyclic sequence whose i-th entry has a positive angular
    gap after it exactly when bits[i] is set."""
    k = len(cyc)
    breaks = [i for i in range(k) if bits[i]]
    stacks = []
    idx = (breaks[-1] + 1) % k
    cur = []
    for _ in range(k):
        cur.append(cyc[idx])
        if bits[idx]:
            stacks.append(tuple(cur))
            cur = []
        idx = (idx + 1) % k
    return stacks


def _perm_tuple_stacks(h2: int, n: int, m: int
                       ) -> Iterator[list[list[tuple[int, ...]]]]:
    """Per-annulus stack splittings (in an arbitrary rotation) arising from
    successor permutations with n cycles and coincidence flags."""
    size = h2 + m
    for perm in itertools.permutations(range(size)):
        cycles = _combi.cycles_of(list(perm))
        if len(cycles) != n:
            continue
        for cycle_order in itertools.permutations(range(n)):
            cyc_by_annulus = [cycles[cycle_order[a]] for a in range(n)]
            gap_options = []
            for cyc in cyc_by_annulus:
                per_cycle = [bits
                             for bits in itertools.product((0, 1), repeat=len(cyc))
                             if any(bits)]
                gap_options.append(per_cycle)
            for gaps in itertools.product(*gap_options):
                yield [_split_cycle(cyc, bits)
                       for cyc, bits in zip(cyc_by_annulus, gaps)]


def enumerate_types_permutation(h: int, n: int, m: int,
                                kind: str = NONDEGENERATE
                                ) -> list[CombinatorialType]:
    """Second enumerator, driven by raw symmetric-group tuples.

    Scans every successor permutation of the slit and parametrization-point
    indices together with pairing, coincidence and rotation data; must agree
    with `enumerate_types` on canonical sets.  Slower; kept as an
    independent cross-check of the structural generator.
    """
    if kind not in (NONDEGENERATE, UNILEVEL, ALL):
        raise ValueError(f"unknown filter {kind!r}")
    check_parameters(h, n, m)
    h2 = 2 * h
    matchings = list(_combi.perfect_matchings(range(h2)))
    results: set[CombinatorialType] = set()
    seen: set[CombinatorialType] = set()
    for annuli_stacks in _perm_tuple_stacks(h2, n, m):
        for pairing_pairs in matchings:
            pairing = [0] * h2
            for i, j in pairing_pairs:
                pairing[i] = j
                pairing[j] = i
            # validity does not depend on rotations, angle-zero markers or
            # levels, so check it once per (successor, coincidence, pairing)
            probe = CombinatorialType(
                m, [Annulus(False, stacks) for stacks in annuli_stacks],
                pairing, (1,) * h2, False, h2 > 0)
            if type_violations(probe):
                continue
            if not is_connected(probe):
                continue
            level_data = list(_level_choices(h2, tuple(pairing), kind))
            rotation_options = []
            for stacks in annuli_stacks:
                opts = []
                for r in range(len(stacks)):
                    rotated = tuple(stacks[r:] + stacks[:r])
                    opts.append(Annulus(True, rotated))
                    opts.append(Annulus(False, rotated))
                rotation_options.append(opts)
            for annuli in itertools.product(*rotation_options):
                for levels, at_inner, at_outer in level_data:
                    t = CombinatorialType(m, annuli, pairing, levels,
                                          at_inner, at_outer)
                    r = relabel_canonical(t)
                    if r in seen:
                        continue
                    orbit = jump_orbit(r)
                    seen |= orbit
                    if kind == NONDEGENERATE:
                        if any(_squeezed(u) for u in orbit):
                            continue
                    results.add(min(orbit, key=encode))
    return sorted(results, key=encode)
