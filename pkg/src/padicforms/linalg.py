"""Sparse exact linear algebra over Z, Z/p^k and the local ring at p.

Everything here is deterministic and exact: integer Smith and Hermite normal
forms with unimodular transforms, kernels, quotient presentations of
cohomology groups, and lattice membership over the local ring at p (decided by
valuations of an explicit SNF solution).  Matrices are small (desk scale), so
the algorithms favour clarity and small coefficients (minimal-pivot choice)
over asymptotics.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from padicforms.arith import int_valuation, valuation


class StructuralError(RuntimeError):
    """An invariant that the mathematics guarantees failed to hold."""


# ---------------------------------------------------------------------------
# sparse integer matrices
# ---------------------------------------------------------------------------

class SparseIntMatrix:
    """Immutable-by-convention sparse integer matrix; absent entry means 0."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise ValueError(f"index {(i, j)} out of range")
                if v:
                    self.entries[(i, j)] = int(v)

    @classmethod
    def from_rows(cls, data, cols=None):
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = int(v)
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    def to_rows(self):
        data = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            data[i][j] = v
        return data

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def __eq__(self, other):
        return (isinstance(other, SparseIntMatrix)
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self):
        return f"SparseIntMatrix({self.rows}x{self.cols}, {len(self.entries)} nonzero)"

    def transpose(self):
        return SparseIntMatrix(self.cols, self.rows,
                               {(j, i): v for (i, j), v in self.entries.items()})

    def mul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row = {}
        for (i, k), v in self.entries.items():
            by_row.setdefault(i, []).append((k, v))
        by_col = {}
        for (k, j), v in other.entries.items():
            by_col.setdefault(k, []).append((j, v))
        entries = {}
        for i, row in by_row.items():
            acc = {}
            for k, v in row:
                for j, w in by_col.get(k, ()):
                    acc[j] = acc.get(j, 0) + v * w
            for j, s in acc.items():
                if s:
                    entries[(i, j)] = s
        return SparseIntMatrix(self.rows, other.cols, entries)

    def mul_vector(self, vec):
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        out = [0] * self.rows
        for (i, j), v in self.entries.items():
            if vec[j]:
                out[i] += v * vec[j]
        return out

    def column(self, j):
        return [self.entries.get((i, j), 0) for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self):
        return not self.entries


# ---------------------------------------------------------------------------
# dense helpers (internal)
# ---------------------------------------------------------------------------

def _dense(mat):
    return mat.to_rows()


def _matmul(a, b):
    n, m, k = len(a), len(b[0]) if b else 0, len(b)
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            v = ai[t]
            if v:
                bt = b[t]
                for j in range(m):
                    if bt[j]:
                        oi[j] += v * bt[j]
    return out


def det_bareiss(rows):
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def smith_normal_form(mat):
    """U, D, V with U*mat*V = D diagonal, d_i | d_{i+1}, U and V unimodular.

    Pivot choice: nonzero entry of minimal absolute value in the remaining
    block, which keeps coefficient growth tame at this scale.  The factors
    U*mat*V == D and the divisibility chain are verified before returning.
    """
    a = _dense(mat)
    n, m = mat.rows, mat.cols
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def row_op(i, j, q):  # row_i -= q * row_j
        ai, aj = a[i], a[j]
        ui, uj = u[i], u[j]
        for t in range(m):
            ai[t] -= q * aj[t]
        for t in range(n):
            ui[t] -= q * uj[t]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in a:
            r[i] -= q * r[j]
        for r in v:
            r[i] -= q * r[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    rank = min(n, m)
    k = 0
    while k < rank:
        pivot = None
        best = None
        for i in range(k, n):
            for j in range(k, m):
                x = a[i][j]
                if x and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        pi, pj = pivot
        swap_rows(k, pi)
        swap_cols(k, pj)
        if a[k][k] < 0:
            negate_row(k)
        # clear row and column k; restart if remainders appear
        while True:
            d = a[k][k]
            dirty = False
            for i in range(k + 1, n):
                if a[i][k]:
                    q = a[i][k] // d
                    row_op(i, k, q)
                    if a[i][k]:
                        swap_rows(k, i)
                        if a[k][k] < 0:
                            negate_row(k)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(k + 1, m):
                if a[k][j]:
                    q = a[k][j] // d
                    col_op(j, k, q)
                    if a[k][j]:
                        swap_cols(k, j)
                        dirty = True
                        break
            if not dirty:
                break
        k += 1

    # enforce the divisibility chain
    k = 0
    while True:
        changed = False
        diag = [a[i][i] for i in range(min(n, m))]
        for i in range(len(diag) - 1):
            d1, d2 = a[i][i], a[i + 1][i + 1]
            if d1 and d2 and d2 % d1 != 0:
                # fold a[i+1][i+1] into position i via one column add
                col_op(i, i + 1, -1)  # col_i += col_{i+1}
                # re-reduce the 2x2 block
                while a[i + 1][i]:
                    d = a[i][i]
                    if d:
                        q = a[i + 1][i] // d
                        row_op(i + 1, i, q)
                    if a[i + 1][i]:
                        swap_rows(i, i + 1)
                while a[i][i + 1]:
                    d = a[i][i]
                    if d:
                        q = a[i][i + 1] // d
                        col_op(i + 1, i, q)
                    if a[i][i + 1]:
                        swap_cols(i, i + 1)
                if a[i][i] < 0:
                    negate_row(i)
                if a[i + 1][i + 1] < 0:
                    negate_row(i + 1)
                changed = True
        if not changed:
            break
        k += 1
        if k > 10 * (n + m) + 100:
            raise StructuralError("SNF divisibility pass did not converge")

    for i in range(min(n, m)):
        if a[i][i] < 0:
            negate_row(i)

    U = SparseIntMatrix.from_rows(u, n)
    D = SparseIntMatrix.from_rows(a, m)
    V = SparseIntMatrix.from_rows(v, m)
    _check_snf(mat, U, D, V)
    return U, D, V


def _check_snf(mat, U, D, V):
    if U.mul(mat).mul(V) != D:
        raise StructuralError("SNF check failed: U*M*V != D")
    diag = [D[(i, i)] for i in range(min(D.rows, D.cols))]
    for (i, j), val in D.entries.items():
        if i != j and val:
            raise StructuralError("SNF check failed: D not diagonal")
    for d1, d2 in zip(diag, diag[1:]):
        if d1 == 0 and d2 != 0:
            raise StructuralError("SNF check failed: zero before nonzero")
        if d1 and d2 and d2 % d1 != 0:
            raise StructuralError("SNF check failed: divisibility chain broken")


def invariant_factors(mat):
    _, D, _ = smith_normal_form(mat)
    return [D[(i, i)] for i in range(min(D.rows, D.cols)) if D[(i, i)]]


# ---------------------------------------------------------------------------
# Hermite normal form (row-space canonical form)
# ---------------------------------------------------------------------------

def hnf_rows(vectors, width=None):
    """Canonical row-echelon basis of the integer row span of ``vectors``.

    Pivots are positive, entries above each pivot are reduced into [0, pivot).
    Returns a list of rows; the result is a canonical invariant of the lattice
    the rows generate, so two generating sets span the same lattice iff their
    HNFs are equal.
    """
    if width is None:
        width = len(vectors[0]) if vectors else 0
    by_pivot = {}  # pivot column -> row (leading entry at pivot, zeros before)
    for vec in vectors:
        vec = [int(x) for x in vec]
        while True:
            j = next((t for t in range(width) if vec[t]), None)
            if j is None:
                break
            brow = by_pivot.get(j)
            if brow is None:
                if vec[j] < 0:
                    vec = [-x for x in vec]
                by_pivot[j] = vec
                break
            if vec[j] % brow[j] == 0:
                q = vec[j] // brow[j]
                vec = [a - q * b for a, b in zip(vec, brow)]
            else:
                g, x, y = _xgcd(brow[j], vec[j])
                new_b = [x * a + y * b for a, b in zip(brow, vec)]
                new_v = [(brow[j] // g) * b - (vec[j] // g) * a
                         for a, b in zip(brow, vec)]
                by_pivot[j] = new_b
                vec = new_v
    pivots = sorted(by_pivot)
    # reduce entries above pivots, left to right so finished columns stay put
    for idx in range(len(pivots)):
        pcol = pivots[idx]
        prow = by_pivot[pcol]
        for jdx in range(idx):
            row = by_pivot[pivots[jdx]]
            if row[pcol]:
                q = row[pcol] // prow[pcol]
                if q:
                    for t in range(width):
                        row[t] -= q * prow[t]
    return [by_pivot[pc] for pc in pivots]


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def kernel_basis(mat):
    """Saturated integer basis of ker(mat), as a list of column vectors."""
    _, D, V = smith_normal_form(mat)
    rank = sum(1 for i in range(min(D.rows, D.cols)) if D[(i, i)])
    return [V.column(j) for j in range(rank, mat.cols)]


def solve_int(mat, target):
    """One integer solution x of mat*x = target, or None.

    Free coordinates are set to zero, so the solution is deterministic.
    """
    U, D, V = smith_normal_form(mat)
    rhs = U.mul_vector(list(target))
    y = [0] * mat.cols
    for i in range(min(mat.rows, mat.cols)):
        d = D[(i, i)]
        if d:
            if rhs[i] % d:
                return None
            y[i] = rhs[i] // d
    for i in range(mat.cols, mat.rows):
        if rhs[i]:
            return None
    for i in range(min(mat.rows, mat.cols), mat.rows):
        if rhs[i]:
            return None
    return V.mul_vector(y)


def complete_basis(columns, dim):
    """Complete a saturated set of integer columns to a basis of Z^dim.

    Returns the list of complementary columns; raises if the input span is not
    a direct summand (in that case no completion exists).
    """
    if not columns:
        return [[1 if i == j else 0 for i in range(dim)] for j in range(dim)]
    mat = SparseIntMatrix.from_rows([list(r) for r in zip(*columns)], len(columns))
    mat = SparseIntMatrix(dim, len(columns),
                          {(i, j): columns[j][i] for j in range(len(columns))
                           for i in range(dim) if columns[j][i]})
    U, D, V = smith_normal_form(mat)
    s = len(columns)
    for i in range(s):
        if D[(i, i)] not in (1, -1):
            raise StructuralError("columns do not span a direct summand")
    # mat = U^{-1} [I_s; 0] V^{-1}; complement = U^{-1} e_{s..dim}
    uinv = _int_inverse(U.to_rows())
    return [[uinv[i][j] for i in range(dim)] for j in range(s, dim)]


def _int_inverse(rows):
    """Inverse of a unimodular integer matrix, exact."""
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise StructuralError("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        inv[k], inv[piv] = inv[piv], inv[k]
        d = a[k][k]
        a[k] = [x / d for x in a[k]]
        inv[k] = [x / d for x in inv[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[k])]
    out = []
    for r in inv:
        row = []
        for x in r:
            if x.denominator != 1:
                raise StructuralError("matrix is not unimodular")
            row.append(x.numerator)
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# p-local (DVR) elimination on Fraction matrices
# ---------------------------------------------------------------------------

def p_local_snf(rows, p):
    """Smith form over the local ring at p for a matrix of Fractions.

    Returns (U, diag, V) as dense Fraction matrices with U*A*V = diag(p^e_i),
    e_1 <= e_2 <= ...; U and V are invertible over the local ring (their
    entries are p-integral and their determinants are p-units).  All entries
    of A must be p-integral.
    """
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    m = len(a[0]) if a else 0
    u = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    v = [[Fraction(1 if i == j else 0) for j in range(m)] for i in range(m)]
    for r in a:
        for x in r:
            if x.denominator % p == 0:
                raise StructuralError("entry is not p-integral")

    k = 0
    while k < min(n, m):
        pivot = None
        best = None
        for i in range(k, n):
            for j in range(k, m):
                x = a[i][j]
                if x:
                    val = valuation(x, p)
                    if best is None or val < best:
                        best = val
                        pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[k], a[pi] = a[pi], a[k]
        u[k], u[pi] = u[pi], u[k]
        for r in a:
            r[k], r[pj] = r[pj], r[k]
        for r in v:
            r[k], r[pj] = r[pj], r[k]
        # scale the pivot to exactly p^e (multiply row by a p-unit)
        e = valuation(a[k][k], p)
        unit = a[k][k] / Fraction(p) ** e
        a[k] = [x / unit for x in a[k]]
        u[k] = [x / unit for x in u[k]]
        piv = a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                u[i] = [x - f * y for x, y in zip(u[i], u[k])]
        for j in range(k + 1, m):
            if a[k][j]:
                f = a[k][j] / piv
                for r in a:
                    r[j] -= f * r[k]
                for r in v:
                    r[j] -= f * r[k]
        k += 1
    diag = []
    for i in range(min(n, m)):
        diag.append(a[i][i])
    return u, diag, v


def p_local_rank_and_torsion(rows, p):
    """(number of zero exponents, sorted positive exponents) of a p-local SNF."""
    _, diag, _ = p_local_snf(rows, p)
    exps = [valuation(d, p) for d in diag if d]
    free = sum(1 for e in exps if e == 0)
    tors = sorted(int(e) for e in exps if e > 0)
    return free, tors


def p_local_kernel(rows, p, ncols):
    """Basis of the kernel over the local ring at p, as coordinate columns."""
    if not rows:
        return [[Fraction(1) if t == j else Fraction(0) for t in range(ncols)]
                for j in range(ncols)]
    if len(rows[0]) != ncols:
        raise ValueError("ncols mismatch")
    u, diag, v = p_local_snf(rows, p)
    rank = sum(1 for d in diag if d)
    out = []
    for j in range(rank, ncols):
        out.append([v[r][j] for r in range(ncols)])
    return out


def p_local_solve(rows, target, p):
    """One solution of rows * x = target over the local ring at p, or None.

    Free coordinates are zero; the pivot coordinates are unique, so the
    p-integrality decision is exact.
    """
    if not rows:
        return [] if not any(Fraction(t) for t in target) else None
    ncols = len(rows[0])
    if ncols == 0:
        return [] if not any(Fraction(t) for t in target) else None
    u, diag, v = p_local_snf(rows, p)
    rhs = [sum(u[i][j] * Fraction(target[j]) for j in range(len(target)))
           for i in range(len(rows))]
    y = [Fraction(0)] * ncols
    for i in range(len(rows)):
        d = diag[i] if i < len(diag) else Fraction(0)
        if d:
            q = rhs[i] / d
            if valuation(q, p) < 0:
                return None
            y[i] = q
        elif rhs[i]:
            return None
    return [sum(v[r][j] * y[j] for j in range(ncols)) for r in range(ncols)]


def p_local_cohomology(d_prev, d_cur, p):
    """ker(d_cur)/im(d_prev) over the local ring at p (Fraction matrices).

    d_cur has one row per target coordinate; an empty list means the zero map
    out of len(d_prev) coordinates.  Returns an AbelianGroupReport whose class
    coordinate machinery works over the local ring.
    """
    ncols = len(d_cur[0]) if d_cur else (len(d_prev) if d_prev else 0)
    if d_prev and d_cur and d_prev[0] and len(d_prev) != ncols:
        raise StructuralError("differentials do not compose")
    kernel = p_local_kernel(d_cur, p, ncols) if d_cur else \
        [[Fraction(1) if t == j else Fraction(0) for t in range(ncols)]
         for j in range(ncols)]
    s = len(kernel)
    if s == 0:
        return AbelianGroupReport(0, [], [], _plocal_prime=p)
    kmat = [[kernel[j][r] for j in range(s)] for r in range(ncols)]
    img_cols = []
    width = len(d_prev[0]) if d_prev and d_prev[0] else 0
    for j in range(width):
        col = [d_prev[r][j] for r in range(len(d_prev))]
        if any(col):
            sol = p_local_solve(kmat, col, p)
            if sol is None:
                raise StructuralError("image does not land in the kernel")
            img_cols.append(sol)
    if img_cols:
        ymat = [[img_cols[j][r] for j in range(len(img_cols))] for r in range(s)]
        up, diag, _ = p_local_snf(ymat, p)
        orders = []
        for d in diag:
            orders.append(p ** int(valuation(d, p)) if d else 0)
    else:
        up = [[Fraction(1 if i == j else 0) for j in range(s)] for i in range(s)]
        orders = []
    orders = orders + [0] * (s - len(orders))
    uinv = _fraction_inverse(up)
    free_rank = sum(1 for d in orders if d == 0)
    torsion = sorted(d for d in orders if d > 1)
    generators = []
    for i, d in enumerate(orders):
        if d == 1:
            continue
        gen_k = [uinv[r][i] for r in range(s)]
        gen = [sum(kernel[j][t] * gen_k[j] for j in range(s))
               for t in range(ncols)]
        generators.append((0 if d else 1, d, gen))
    generators.sort(key=lambda t: (t[0], t[1]))
    gens = [g for _, _, g in generators]
    rep = AbelianGroupReport(free_rank, torsion, gens, _plocal_prime=p)
    rep._kernel = kernel
    rep._uprime = up
    rep._orders = orders
    return rep


def _fraction_inverse(rows):
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise StructuralError("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        inv[k], inv[piv] = inv[piv], inv[k]
        d = a[k][k]
        a[k] = [x / d for x in a[k]]
        inv[k] = [x / d for x in inv[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[k])]
    return inv


# ---------------------------------------------------------------------------
# lattice membership over the local ring at p
# ---------------------------------------------------------------------------

@dataclass
class InfeasibilityCertificate:
    """Proof that no p-integral combination of the generators hits the target.

    functional is an integer row vector with functional . g == 0 (mod modulus)
    for every generator g, while v_p(functional . target) < v_p(modulus); any
    combination sum(c_i g_i) with p-integral c_i would pair to valuation at
    least v_p(modulus), so the target is unreachable.  modulus == 0 encodes a
    rational obstruction (functional kills every generator but not the target).
    """

    functional: list
    modulus: int
    pairing: Fraction
    prime: int

    def check(self, target, generators):
        pair = sum(Fraction(f) * Fraction(t) for f, t in zip(self.functional, target))
        if pair != self.pairing:
            return False
        for g in generators:
            val = sum(Fraction(f) * Fraction(x) for f, x in zip(self.functional, g))
            if self.modulus == 0:
                if val != 0:
                    return False
            elif valuation(val, self.prime) < int_valuation(self.modulus, self.prime):
                return False
        if self.modulus == 0:
            return pair != 0
        return valuation(pair, self.prime) < int_valuation(self.modulus, self.prime)


def lattice_membership(target, generators, p, with_certificate=False):
    """Coefficients c_i in the local ring at p with sum(c_i g_i) = target.

    target and generators are rational vectors of equal length.  Returns the
    coefficient list (Fractions with p-coprime denominators), or None when no
    p-integral combination exists; with_certificate=True returns
    (coeffs, certificate) where exactly one of the two is None.
    """
    if not generators:
        feasible = all(Fraction(t) == 0 for t in target)
        if feasible:
            return ([], None) if with_certificate else []
        cert = None
        if with_certificate:
            j = next(i for i, t in enumerate(target) if Fraction(t) != 0)
            func = [0] * len(target)
            func[j] = 1
            cert = InfeasibilityCertificate(func, 0, Fraction(target[j]), p)
        return (None, cert) if with_certificate else None

    dim = len(target)
    scale = 1
    for vec in list(generators) + [target]:
        for x in vec:
            scale = scale * Fraction(x).denominator // _gcd_int(scale, Fraction(x).denominator)
    g_int = [[int(Fraction(x) * scale) for x in vec] for vec in generators]
    t_int = [int(Fraction(x) * scale) for x in target]

    mat = SparseIntMatrix(dim, len(generators),
                          {(i, j): g_int[j][i] for j in range(len(generators))
                           for i in range(dim) if g_int[j][i]})
    U, D, V = smith_normal_form(mat)
    rhs = U.mul_vector(t_int)
    y = [Fraction(0)] * mat.cols
    for i in range(mat.rows):
        d = D[(i, i)] if i < min(mat.rows, mat.cols) else 0
        c = rhs[i]
        if d == 0:
            if c != 0:
                if with_certificate:
                    # the functional acts on the raw (unscaled) vectors
                    func = [Fraction(U[(i, j)]) * scale for j in range(dim)]
                    return None, InfeasibilityCertificate(func, 0, Fraction(c), p)
                return None
        else:
            q = Fraction(c, d)
            if valuation(q, p) < 0:
                if with_certificate:
                    func = [Fraction(U[(i, j)]) * scale for j in range(dim)]
                    return None, InfeasibilityCertificate(func, d, Fraction(c), p)
                return None
            y[i] = q
    coeffs = [sum(Fraction(V[(i, j)]) * y[j] for j in range(mat.cols))
              for i in range(mat.cols)]
    if with_certificate:
        return coeffs, None
    return coeffs


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# cohomology of a two-step complex
# ---------------------------------------------------------------------------

@dataclass
class AbelianGroupReport:
    """Finitely generated p-local abelian group with chosen generators.

    free_rank and torsion (p-power orders, ascending) describe the group after
    discarding prime-to-p torsion; the discarded part is kept in
    prime_to_p_torsion for diagnostics.  generators are integer vectors in the
    ambient cochain basis: first the torsion generators (matching ``torsion``
    order), then the free ones.  The private fields carry the quotient
    presentation used to answer membership questions.
    """

    free_rank: int
    torsion: list
    generators: list
    prime_to_p_torsion: list = field(default_factory=list)
    _kernel: list = field(default_factory=list, repr=False)      # columns
    _uprime: list = field(default_factory=list, repr=False)      # rows of U'
    _orders: list = field(default_factory=list, repr=False)      # full d'_i incl. prime-to-p
    _modulus: int = 0
    _gf_image: list = field(default=None, repr=False)            # echelon basis, GF path
    _gf_prime: int = field(default=0, repr=False)
    _plocal_prime: int = field(default=0, repr=False)            # local-ring path

    def invariants(self):
        return self.free_rank, list(self.torsion)

    def order(self):
        if self.free_rank:
            return 0
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def class_coordinates(self, vector):
        """Coordinates of a cocycle's class: torsion coords mod order, then free."""
        if self._gf_prime:
            p = self._gf_prime
            v = [x % p for x in vector]
            for b in self._gf_image:
                lead = next(i for i, x in enumerate(b) if x)
                if v[lead]:
                    f = v[lead]
                    v = [(x - f * y) % p for x, y in zip(v, b)]
            return v
        y = self._kernel_coordinates(vector)
        z = [sum(self._uprime[i][j] * y[j] for j in range(len(y)))
             for i in range(len(y))]
        coords = []
        for i, d in enumerate(self._orders):
            if d > 1:
                coords.append(_residue_mod(z[i], d))
            elif d == 0:
                coords.append(z[i])
        return coords

    def is_coboundary(self, vector):
        return all(c == 0 for c in self.class_coordinates(vector))

    def same_class(self, v1, v2):
        return self.class_coordinates([a - b for a, b in zip(v1, v2)]) == \
            self.class_coordinates([0] * len(v1))

    def _kernel_coordinates(self, vector):
        if not self._kernel:
            if any(vector):
                raise StructuralError("vector is not a cocycle")
            return []
        if self._plocal_prime:
            mat = [[self._kernel[j][r] for j in range(len(self._kernel))]
                   for r in range(len(vector))]
            sol = p_local_solve(mat, vector, self._plocal_prime)
            if sol is None:
                raise StructuralError("vector is not a cocycle")
            return sol
        mat = SparseIntMatrix(len(vector), len(self._kernel),
                              {(i, j): self._kernel[j][i]
                               for j in range(len(self._kernel))
                               for i in range(len(vector)) if self._kernel[j][i]})
        if self._modulus:
            sol = _solve_mod(mat, vector, self._modulus)
        else:
            sol = solve_int(mat, vector)
        if sol is None:
            raise StructuralError("vector is not a cocycle")
        return sol


def _residue_mod(z, d):
    """Canonical residue in [0, d) of a rational with denominator coprime to d."""
    z = Fraction(z)
    if z.denominator == 1:
        return z.numerator % d
    inv = pow(z.denominator % d, -1, d)
    return (z.numerator * inv) % d


def _solve_mod(mat, target, modulus):
    U, D, V = smith_normal_form(mat)
    rhs = U.mul_vector(list(target))
    y = [0] * mat.cols
    for i in range(mat.rows):
        d = D[(i, i)] if i < min(mat.rows, mat.cols) else 0
        c = rhs[i] % modulus
        g = _gcd_int(d % modulus if d else modulus, modulus) or modulus
        if c % g:
            return None
        if i < mat.cols:
            if d % modulus == 0:
                y[i] = 0
            else:
                dd = d % modulus
                gg = _gcd_int(dd, modulus)
                inv = pow(dd // gg, -1, modulus // gg)
                y[i] = ((c // gg) * inv) % (modulus // gg)
    return [x % modulus for x in (V.mul_vector(y))]


def cohomology(d_prev, d_cur, ring, p):
    """ker(d_cur)/im(d_prev) with p-local reporting.

    ring is "Z" (integer complex, prime-to-p torsion stripped into
    diagnostics), "GF" (coefficients F_p) or ("Zmod", p^k).  Composability and
    d_cur o d_prev == 0 are checked and raise StructuralError on failure.
    """
    if d_prev.cols and d_cur.cols and d_prev.rows != d_cur.cols:
        raise StructuralError("differentials do not compose")
    if d_prev.cols and not d_cur.mul(d_prev).is_zero():
        raise StructuralError("d o d != 0 at this degree")
    if ring == "GF":
        return _cohomology_gf(d_prev, d_cur, p)
    if isinstance(ring, tuple) and ring[0] == "Zmod":
        return _cohomology_mod(d_prev, d_cur, ring[1], p)
    if ring != "Z":
        raise ValueError(f"unknown ring tag {ring!r}")

    kernel = kernel_basis(d_cur)
    s = len(kernel)
    ambient = d_cur.cols
    if s == 0:
        return AbelianGroupReport(0, [], [])
    kmat = SparseIntMatrix(ambient, s,
                           {(i, j): kernel[j][i] for j in range(s)
                            for i in range(ambient) if kernel[j][i]})
    # image columns in kernel coordinates
    img_cols = []
    for j in range(d_prev.cols):
        col = d_prev.column(j)
        if any(col):
            sol = solve_int(kmat, col)
            if sol is None:
                raise StructuralError("image does not land in the kernel")
            img_cols.append(sol)
    if img_cols:
        ymat = SparseIntMatrix(s, len(img_cols),
                               {(i, j): img_cols[j][i] for j in range(len(img_cols))
                                for i in range(s) if img_cols[j][i]})
        Up, Dp, _ = smith_normal_form(ymat)
        orders = [Dp[(i, i)] for i in range(min(s, len(img_cols)))]
    else:
        Up = SparseIntMatrix.identity(s)
        orders = []
    orders = orders + [0] * (s - len(orders))
    uprime = Up.to_rows()
    uinv = _int_inverse(uprime)

    free_rank = sum(1 for d in orders if d == 0)
    torsion = []
    prime_to_p = []
    generators = []
    for i, d in enumerate(orders):
        gen_k = [uinv[r][i] for r in range(s)]
        gen = [sum(kernel[j][t] * gen_k[j] for j in range(s)) for t in range(ambient)]
        if d == 0:
            generators.append(("free", gen))
        elif d > 1:
            pk = p ** int_valuation(d, p)
            cof = d // pk
            if cof > 1:
                prime_to_p.append(cof)
            if pk > 1:
                torsion.append(pk)
                # cof * gen has exact order pk in the quotient
                generators.append(("tors", [cof * x for x in gen]))
    torsion.sort()
    gens_sorted = [g for kind, g in generators if kind == "tors"] + \
                  [g for kind, g in generators if kind == "free"]
    return AbelianGroupReport(free_rank, torsion, gens_sorted,
                              prime_to_p_torsion=sorted(prime_to_p),
                              _kernel=kernel, _uprime=uprime, _orders=orders)


def _cohomology_gf(d_prev, d_cur, p):
    """Cohomology with F_p coefficients: a vector space, reported as free rank."""
    ker = _gf_kernel(d_cur.to_rows(), p, d_cur.cols)
    img = []
    for j in range(d_prev.cols):
        col = [x % p for x in d_prev.column(j)]
        if any(col):
            img.append(col)
    img_basis = _gf_echelon(img, p)
    quot_dim = len(_gf_echelon(img_basis + ker, p)) - len(img_basis)
    reps = []
    basis = list(img_basis)
    for v in ker:
        bigger = _gf_echelon(basis + [v], p)
        if len(bigger) > len(basis):
            reps.append(v)
            basis = bigger
        if len(reps) == quot_dim:
            break
    rep = AbelianGroupReport(quot_dim, [], reps, _modulus=p)
    rep._gf_image = img_basis
    rep._gf_prime = p
    return rep


def _gf_kernel(rows, p, ncols):
    """Basis of the kernel of a matrix over F_p (column vectors)."""
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    n, m = len(rows), len(rows[0])
    a = [[x % p for x in r] for r in rows]
    pivots = {}
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if a[i][c] % p), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(n):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots[c] = r
        r += 1
        if r == n:
            break
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for c in free:
        vec = [0] * m
        vec[c] = 1
        for pc, pr in pivots.items():
            vec[pc] = (-a[pr][c]) % p
        basis.append(vec)
    return basis


def _gf_echelon(vectors, p):
    """Reduced echelon basis of the span of the given vectors over F_p."""
    basis = []
    for v in vectors:
        v = [x % p for x in v]
        for b in basis:
            lead = next(i for i, x in enumerate(b) if x)
            if v[lead]:
                f = v[lead]
                v = [(x - f * y) % p for x, y in zip(v, b)]
        if any(v):
            lead = next(i for i, x in enumerate(v) if x)
            inv = pow(v[lead], -1, p)
            v = [(x * inv) % p for x in v]
            basis.append(v)
            basis.sort(key=lambda b: next(i for i, x in enumerate(b) if x))
    # back-substitute
    for i, b in enumerate(basis):
        for j, other in enumerate(basis):
            if i != j:
                lead = next(t for t, x in enumerate(b) if x)
                if other[lead]:
                    f = other[lead]
                    basis[j] = [(x - f * y) % p for x, y in zip(other, b)]
    return [b for b in basis if any(b)]


def _cohomology_mod(d_prev, d_cur, modulus, p):
    """Cohomology of the complex reduced mod p^k, presented by integer SNF."""
    m = modulus
    ambient = d_cur.cols
    # kernel of d_cur mod m: columns x with d_cur x = 0 (mod m)
    # solve via kernel of [d_cur | m I] projected to the first block
    rows = {}
    for (i, j), v in d_cur.entries.items():
        rows[(i, j)] = v
    for i in range(d_cur.rows):
        rows[(i, ambient + i)] = m
    big = SparseIntMatrix(d_cur.rows, ambient + d_cur.rows, rows)
    ker = [col[:ambient] for col in kernel_basis(big)]
    ker = [v for v in hnf_rows(ker, ambient)]
    s = len(ker)
    if s == 0:
        return AbelianGroupReport(0, [], [], _modulus=m)
    kmat = SparseIntMatrix(ambient, s,
                           {(i, j): ker[j][i] for j in range(s)
                            for i in range(ambient) if ker[j][i]})
    rel_cols = []
    for j in range(d_prev.cols):
        col = d_prev.column(j)
        if any(col):
            sol = solve_int(kmat, col)
            if sol is None:
                raise StructuralError("image does not land in the mod-m kernel")
            rel_cols.append(sol)
    # relations: image columns plus m * Z^ambient (all inside the kernel lattice)
    for i in range(ambient):
        col = [m if t == i else 0 for t in range(ambient)]
        sol = solve_int(kmat, col)
        if sol is None:
            raise StructuralError("m * e_i escaped the mod-m kernel lattice")
        rel_cols.append(sol)
    ymat = SparseIntMatrix(s, len(rel_cols),
                           {(i, j): rel_cols[j][i] for j in range(len(rel_cols))
                            for i in range(s) if rel_cols[j][i]})
    Up, Dp, _ = smith_normal_form(ymat)
    orders = [Dp[(i, i)] for i in range(min(s, len(rel_cols)))]
    orders = orders + [0] * (s - len(orders))
    uprime = Up.to_rows()
    uinv = _int_inverse(uprime)
    torsion = []
    generators = []
    for i, d in enumerate(orders):
        if d == 0:
            raise StructuralError("mod-m cohomology must be finite")
        if d > 1:
            gen_k = [uinv[r][i] for r in range(s)]
            gen = [sum(ker[j][t] * gen_k[j] for j in range(s)) % m
                   for t in range(ambient)]
            torsion.append(d)
            generators.append(gen)
    order = sorted(torsion)
    rep = AbelianGroupReport(0, order, generators, _modulus=m)
    rep._kernel = [list(v) for v in ker]
    rep._uprime = uprime
    rep._orders = orders
    return rep
