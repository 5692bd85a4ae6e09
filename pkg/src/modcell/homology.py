"""Integer cellular chain complexes and Smith-normal-form homology.

Cells come from the enumerated families; the boundary of a cell adds
(-1)^(q_1+...+q_{i-1}+j) times its (i, j)-face, coincident faces summing.
All arithmetic is exact arbitrary-precision integer arithmetic.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .errors import GraphError, ModcellError

Matrix = list[list[int]]


class ChainComplex:
    """Graded cell lists plus integer boundary matrices.

    `boundaries[k]` maps degree-k chains to degree-(k-1) chains; rows are
    indexed by the (k-1)-cells, columns by the k-cells.
    """

    def __init__(self, cells_by_degree: dict[int, Sequence[str]],
                 boundaries: dict[int, Matrix]):
        self.cells_by_degree = {k: tuple(v) for k, v in cells_by_degree.items()
                                if v}
        self.boundaries = {k: [row[:] for row in mat]
                           for k, mat in boundaries.items()}
        for k, mat in self.boundaries.items():
            rows = len(self.cells_by_degree.get(k - 1, ()))
            cols = len(self.cells_by_degree.get(k, ()))
            if len(mat) != rows or any(len(row) != cols for row in mat):
                raise ModcellError(f"boundary {k} has wrong shape")

    @property
    def top_degree(self) -> int:
        return max(self.cells_by_degree, default=-1)

    def dim(self, k: int) -> int:
        return len(self.cells_by_degree.get(k, ()))

    def boundary(self, k: int) -> Matrix:
        return self.boundaries.get(
            k, [[0] * self.dim(k) for _ in range(self.dim(k - 1))])


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return []
    assert len(a[0]) == len(b)
    out = [[0] * len(b[0]) for _ in range(len(a))]
    for i, row in enumerate(a):
        for k, x in enumerate(row):
            if x:
                brow = b[k]
                orow = out[i]
                for j, y in enumerate(brow):
                    if y:
                        orow[j] += x * y
    return out


def boundary_check(c: ChainComplex) -> bool:
    """True iff consecutive boundaries compose to zero."""
    for k in sorted(c.cells_by_degree):
        if k - 1 not in c.cells_by_degree or k + 1 not in c.cells_by_degree:
            continue
        prod = _mat_mul(c.boundary(k), c.boundary(k + 1))
        if any(any(row) for row in prod):
            return False
    return True


def build_complex(cells: Iterable, model: str,
                  face_maps: Callable | None = None,
                  degree_fn: Callable | None = None,
                  key_fn: Callable | None = None) -> ChainComplex:
    """Assemble the cellular chain complex of an enumerated family.

    `model` is "unilevel" or "sd" and fixes the face, degree and naming
    functions; explicit callables override them (used by tests).  The family
    must be closed under faces, canonically; missing faces are an error.
    """
    if model == "unilevel":
        from . import radial

        def degree_fn_(t):
            return sum(radial.radial_degrees(t)) + len(radial.interior_levels(t))

        def face_maps_(t):
            qs = radial.radial_degrees(t)
            for i in range(1, len(qs) + 1):
                if qs[i - 1] == 0:
                    continue
                for j in range(qs[i - 1] + 1):
                    yield i, j, radial.canonicalize(radial.face(t, i, j))

        degree_fn = degree_fn or degree_fn_
        face_maps = face_maps or face_maps_
        key_fn = key_fn or radial.text_form
    elif model == "sd":
        from . import sullivan

        def degree_fn_(d):
            return sum(sullivan.degrees(d))

        def face_maps_(d):
            qs = sullivan.degrees(d)
            for i in range(len(qs)):
                if qs[i] == 0:
                    continue
                for j in range(qs[i] + 1):
                    yield i + 1, j, sullivan.canonical_diagram(
                        sullivan.sd_face(d, i, j))

        degree_fn = degree_fn or degree_fn_
        face_maps = face_maps or face_maps_
        key_fn = key_fn or sullivan.text_form
    elif face_maps is None or degree_fn is None or key_fn is None:
        raise ModcellError(f"unknown model {model!r}")

    cells = list(cells)
    by_degree: dict[int, list] = {}
    for cell in cells:
        by_degree.setdefault(degree_fn(cell), []).append(cell)
    index: dict[str, tuple[int, int]] = {}
    names: dict[int, list[str]] = {}
    for k, group in sorted(by_degree.items()):
        names[k] = []
        for cell in group:
            name = key_fn(cell)
            index[name] = (k, len(names[k]))
            names[k].append(name)

    missing: list[str] = []
    boundaries: dict[int, Matrix] = {}
    for k, group in sorted(by_degree.items()):
        if k == 0:
            continue
        rows = len(names.get(k - 1, ()))
        mat = [[0] * len(group) for _ in range(rows)]
        for col, cell in enumerate(group):
            qs_prefix: dict[int, int] = {}
            if model == "unilevel":
                from . import radial
                qs = radial.radial_degrees(cell)
            elif model == "sd":
                from . import sullivan
                qs = sullivan.degrees(cell)
            else:
                qs = None
            acc = 0
            if qs is not None:
                for i, q in enumerate(qs, start=1):
                    qs_prefix[i] = acc
                    acc += q
                qs_prefix[len(qs) + 1] = acc
            for i, j, face_cell in face_maps(cell):
                name = key_fn(face_cell)
                if name not in index:
                    missing.append(name)
                    continue
                fk, row = index[name]
                if fk != k - 1:
                    raise ModcellError(
                        f"face of a {k}-cell has degree {fk}")
                sign = -1 if (qs_prefix.get(i, 0) + j) % 2 else 1
                mat[row][col] += sign
        boundaries[k] = mat
    if missing:
        raise ModcellError(
            "family is not closed under faces; missing cells: "
            + "; ".join(sorted(set(missing))[:5]))
    return ChainComplex(names, boundaries)


def unilevel_complex(h: int, n: int, m: int) -> ChainComplex:
    from . import radial
    cells = radial.enumerate_types(h, n, m, radial.UNILEVEL)
    return build_complex(cells, "unilevel")


def sd_complex(genus: int, n: int, m: int) -> ChainComplex:
    from . import sullivan
    cells = sullivan.enumerate_diagrams(genus, n, m)
    return build_complex(cells, "sd")


# -- Smith normal form --------------------------------------------------------


def _identity(k: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def smith_normal_form(mat: Matrix) -> tuple[list[int], Matrix, Matrix]:
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns (diagonal, U, V) with U * mat * V diagonal, d_i | d_{i+1}, all
    d_i >= 0.  U and V record the operations and are unimodular.
    """
    m = [row[:] for row in mat]
    rows = len(m)
    cols = len(m[0]) if m else 0
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        m[dst] = [a + c * b for a, b in zip(m[dst], m[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in m:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(rows, cols):
        # least nonzero entry in the remaining block becomes the pivot
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] and (pivot is None
                                or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    add_row(i, t, -q)
                    if m[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    add_col(j, t, -q)
                    if m[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        if m[t][t] < 0:
            negate_row(t)
        t += 1

    # enforce the divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(min(rows, cols) - 1):
            a, b = m[i][i], m[i + 1][i + 1]
            if a and b % a == 0:
                continue
            if not a and not b:
                continue
            if not a and b:
                swap_rows(i, i + 1)
                swap_cols(i, i + 1)
                changed = True
                continue
            # fold entry (i+1, i+1) into row i and rediagonalize the 2x2 block
            add_row(i, i + 1, 1)
            while m[i][i + 1] or m[i + 1][i]:
                if m[i][i + 1]:
                    q = m[i][i + 1] // m[i][i] if m[i][i] else 0
                    add_col(i + 1, i, -q)
                    if m[i][i + 1]:
                        swap_cols(i, i + 1)
                if m[i + 1][i]:
                    q = m[i + 1][i] // m[i][i] if m[i][i] else 0
                    add_row(i + 1, i, -q)
                    if m[i + 1][i]:
                        swap_rows(i, i + 1)
            if m[i][i] < 0:
                negate_row(i)
            if m[i + 1][i + 1] < 0:
                negate_row(i + 1)
            changed = True
    diag = [m[i][i] for i in range(min(rows, cols))]
    return diag, U, V


def rank_of(mat: Matrix) -> int:
    diag, _, _ = smith_normal_form(mat)
    return sum(1 for d in diag if d)


def homology(c: ChainComplex) -> dict[int, tuple[int, tuple[int, ...]]]:
    """Per degree: (Betti number, invariant factors > 1)."""
    if not boundary_check(c):
        raise GraphError("boundary check failed; not a chain complex")
    out: dict[int, tuple[int, tuple[int, ...]]] = {}
    degrees = sorted(c.cells_by_degree)
    for k in degrees:
        dim = c.dim(k)
        r_in = rank_of(c.boundary(k)) if c.dim(k - 1) and dim else 0
        upper = c.boundary(k + 1) if c.dim(k + 1) else []
        if upper and dim:
            diag, _, _ = smith_normal_form(upper)
            r_out = sum(1 for d in diag if d)
            torsion = tuple(d for d in diag if d > 1)
        else:
            r_out = 0
            torsion = ()
        out[k] = (dim - r_in - r_out, torsion)
    return out


def euler_characteristic(c: ChainComplex) -> int:
    return sum((-1) ** k * c.dim(k) for k in c.cells_by_degree)


def homology_table(hom: dict[int, tuple[int, tuple[int, ...]]]) -> str:
    lines = ["degree  betti  torsion"]
    for k in sorted(hom):
        betti, torsion = hom[k]
        tor = ",".join(f"Z/{d}" for d in torsion) or "-"
        lines.append(f"{k:6d}  {betti:5d}  {tor}")
    return "\n".join(lines)
