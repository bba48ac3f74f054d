"""p-shifted cochain lattices and their comparisons.

build_D scales a cocycle basis by p^n and a complement by p^{n+1} inside each
C^n(X; Z); build_V uses the 0/1 exponent rule instead.  eta_p carves
{x in p^n C^n : dx in p^{n+1} C^{n+1}} out of any degreewise-free complex.
All three produce integer sublattices of the ambient cochains, canonicalized
by Hermite normal form, with the induced (integer) differential.

The level families at the bottom feed the section machinery of derham:
V-levels are the shifted lattices of the standard simplices with the
cosimplicial structure maps, and TensorLevels is the degreewise tensor of two
level families with the Koszul differential.
"""

from fractions import Fraction

from padicforms.linalg import (
    SparseIntMatrix,
    StructuralError,
    cohomology,
    complete_basis,
    hnf_rows,
    kernel_basis,
    solve_int,
)
from padicforms.simplicial import delta, normalized_cochain_complex
from padicforms.products import cup_on_vectors


class ShiftedComplex:
    """An integer sublattice complex of the cochains of a space.

    bases[n] is the canonical (HNF) row basis of the degree-n lattice inside
    C^n; diffs[n] expresses the ambient differential in these bases, with
    integer entries (checked).
    """

    def __init__(self, base_complex, bases, label):
        self.base = base_complex
        self.bases = bases
        self.label = label
        self.diffs = []
        for n in range(len(bases)):
            target = bases[n + 1] if n + 1 < len(bases) else []
            amb = base_complex.diff(n)
            cols = []
            for vec in bases[n]:
                img = amb.mul_vector(vec)
                if not any(img):
                    cols.append([0] * len(target))
                    continue
                if not target:
                    raise StructuralError(
                        f"{label}: differential escapes the truncated lattice")
                tmat = SparseIntMatrix(
                    len(img), len(target),
                    {(i, j): target[j][i] for j in range(len(target))
                     for i in range(len(img)) if target[j][i]})
                sol = solve_int(tmat, img)
                if sol is None:
                    raise StructuralError(
                        f"{label}: differential is not lattice-valued in degree {n}")
                cols.append(sol)
            rows = len(target)
            self.diffs.append(SparseIntMatrix(
                rows, len(bases[n]),
                {(i, j): cols[j][i] for j in range(len(cols))
                 for i in range(rows) if cols[j][i]}))

    def dim(self, n):
        return len(self.bases[n]) if 0 <= n < len(self.bases) else 0

    def diff(self, n):
        if 0 <= n < len(self.diffs):
            return self.diffs[n]
        return SparseIntMatrix.zero(self.dim(n + 1), self.dim(n))

    def cohomology(self, n, p):
        d_prev = self.diff(n - 1) if n > 0 else SparseIntMatrix.zero(self.dim(0), 0)
        return cohomology(d_prev, self.diff(n), "Z", p)

    def contains(self, n, vector):
        """Ambient integer vector membership in the degree-n lattice."""
        basis = self.bases[n] if n < len(self.bases) else []
        if not basis:
            return not any(vector)
        mat = SparseIntMatrix(len(vector), len(basis),
                              {(i, j): basis[j][i] for j in range(len(basis))
                               for i in range(len(vector)) if basis[j][i]})
        return solve_int(mat, list(vector)) is not None


def _shift_exponent_d(n, is_cocycle):
    return n if is_cocycle else n + 1


def _shift_exponent_v(n, is_cocycle):
    return 0 if (n == 0 and is_cocycle) else 1


def _shifted_lattice(complex_, p, rule):
    """Row bases of span{p^i sigma} per degree under the given exponent rule."""
    bases = []
    top = complex_.top_degree()
    for n in range(top + 1):
        dim = complex_.dim(n)
        kernel = kernel_basis(complex_.diff(n))
        comp = complete_basis(kernel, dim) if kernel or dim else \
            [[1 if i == j else 0 for i in range(dim)] for j in range(dim)]
        rows = []
        for col in kernel:
            rows.append([p ** rule(n, True) * x for x in col])
        for col in comp:
            rows.append([p ** rule(n, False) * x for x in col])
        bases.append(hnf_rows(rows, dim))
    return bases


def build_D(space, p):
    """The p-shifted lattice: p^n on degree-n cocycles, p^{n+1} elsewhere."""
    cx = normalized_cochain_complex(space)
    bases = _shifted_lattice(cx, p, _shift_exponent_d)
    return ShiftedComplex(cx, bases, f"D({space.name}, p={p})")


def build_V(space, p):
    """The variant with exponent 0 only on degree-0 cocycles, 1 elsewhere."""
    cx = normalized_cochain_complex(space)
    bases = _shifted_lattice(cx, p, _shift_exponent_v)
    return ShiftedComplex(cx, bases, f"V({space.name}, p={p})")


def eta_p(complex_, p):
    """The decalage of a degreewise-free integer complex at the prime p.

    Degree n is {x in p^n C^n : dx in p^{n+1} C^{n+1}} with the restricted
    differential.
    """
    top = complex_.top_degree()
    bases = []
    for n in range(top + 1):
        dim = complex_.dim(n)
        d = complex_.diff(n)
        # y with dy = p z: kernel of [d | pI] projected to the first block
        entries = dict(d.entries)
        for i in range(d.rows):
            entries[(i, dim + i)] = p
        big = SparseIntMatrix(d.rows, dim + d.rows, entries)
        ker = [col[:dim] for col in kernel_basis(big)]
        scaled = [[p ** n * x for x in vec] for vec in ker]
        bases.append(hnf_rows(scaled, dim))
    return ShiftedComplex(complex_, bases, f"eta_{p}")


def eta_equals_shifted(space, p):
    """Compare eta_p(C*(X)) and build_D(X) lattices degree by degree.

    Returns (equal_everywhere, per-degree detail).  D is always contained in
    eta (asserted); equality fails exactly when some mod-p cocycle has a
    non-bounding Bockstein.
    """
    cx = normalized_cochain_complex(space)
    d_side = build_D(space, p)
    e_side = eta_p(cx, p)
    detail = {}
    for n in range(cx.top_degree() + 1):
        equal = d_side.bases[n] == e_side.bases[n]
        for vec in d_side.bases[n]:
            if not e_side.contains(n, vec):
                raise StructuralError(
                    "the p-shifted lattice escaped the decalage lattice")
        detail[n] = equal
    return all(detail.values()), detail


def multiplication_closed(space, p, shifted=None):
    """Cup products of lattice basis elements stay in the lattice (exhaustive)."""
    shifted = shifted or build_D(space, p)
    top = space.dimension
    for q1 in range(top + 1):
        for q2 in range(top + 1 - q1):
            for v1 in shifted.bases[q1]:
                for v2 in shifted.bases[q2]:
                    prod = cup_on_vectors(space, q1, q2, list(v1), list(v2), "Z")
                    if not shifted.contains(q1 + q2, prod):
                        return False, (q1, q2, v1, v2)
    return True, None


# ---------------------------------------------------------------------------
# level families for the section machinery
# ---------------------------------------------------------------------------

def _vertex_map_matrix(source_space, target_space, vertex_map, k):
    """Matrix of the cochain map induced by a simplicial map delta^m -> delta^n
    given on vertices; degenerate images pair to zero."""
    rows = []
    for mon in source_space.simplices[k] if k <= source_space.dimension else []:
        verts = [int(t) for t in mon.split(".")]
        image = [vertex_map[v] for v in verts]
        rows.append(image)
    out = [[0] * (target_space.n_cells(k)) for _ in range(len(rows))]
    for r, image in enumerate(rows):
        if len(set(image)) != len(image):
            continue  # degenerate: dies in normalized cochains
        name = ".".join(str(v) for v in sorted(image))
        out[r][target_space.index_of(k, name)] = 1
    # transpose: cochain map goes from target functions to source functions
    return out


class VLevels:
    """The shifted lattices of the standard simplices as a level family.

    Component (n, k) is the degree-k part of the 0/1-shifted lattice inside
    C^k(delta^n); faces and degeneracies are induced by the cosimplicial
    structure of the simplices and stay lattice-valued (checked).
    """

    def __init__(self, p, max_level, q_max):
        self.prime = p
        self.max_level = max_level
        self.q_max = q_max
        self._spaces = {}
        self._shifted = {}
        self._faces = {}
        self._degens = {}

    def space(self, n):
        if n not in self._spaces:
            self._spaces[n] = delta(n)
        return self._spaces[n]

    def shifted(self, n):
        if n not in self._shifted:
            self._shifted[n] = build_V(self.space(n), self.prime)
        return self._shifted[n]

    def dims(self, n, k):
        return self.shifted(n).dim(k)

    def diff_matrix(self, n, k):
        mat = self.shifted(n).diff(k)
        return [[Fraction(mat[(i, j)]) for j in range(mat.cols)]
                for i in range(mat.rows)]

    def _structure_matrix(self, n, target_n, vertex_map, k):
        """Lattice-to-lattice matrix of a cochain map C^k(delta^n) -> C^k(delta^m)."""
        src = self.shifted(n)
        tgt = self.shifted(target_n)
        amb = _vertex_map_matrix(self.space(target_n), self.space(n),
                                 vertex_map, k)
        cols = []
        for vec in src.bases[k] if k < len(src.bases) else []:
            img = [sum(amb[r][j] * vec[j] for j in range(len(vec)))
                   for r in range(len(amb))]
            if not any(img):
                cols.append([0] * tgt.dim(k))
                continue
            basis = tgt.bases[k]
            tmat = SparseIntMatrix(
                len(img), len(basis),
                {(i, j): basis[j][i] for j in range(len(basis))
                 for i in range(len(img)) if basis[j][i]})
            sol = solve_int(tmat, img)
            if sol is None:
                raise StructuralError("structure map left the shifted lattice")
            cols.append(sol)
        return [[Fraction(cols[j][i]) for j in range(len(cols))]
                for i in range(tgt.dim(k))]

    def face_matrix(self, n, i, k):
        key = (n, i, k)
        if key not in self._faces:
            # the face inclusion delta^{n-1} -> delta^n skips vertex i
            vmap = {v: (v if v < i else v + 1) for v in range(n)}
            self._faces[key] = self._structure_matrix(n, n - 1, vmap, k)
        return self._faces[key]

    def degen_matrix(self, n, i, k):
        key = (n, i, k)
        if key not in self._degens:
            # the collapse delta^{n+1} -> delta^n repeats vertex i
            vmap = {v: (v if v <= i else v - 1) for v in range(n + 2)}
            self._degens[key] = self._structure_matrix(n, n + 1, vmap, k)
        return self._degens[key]

    def multiply(self, n, k1, v1, k2, v2):
        src = self.shifted(n)
        amb1 = [sum(src.bases[k1][j][r] * v1[j] for j in range(len(v1)))
                for r in range(self.space(n).n_cells(k1))]
        amb2 = [sum(src.bases[k2][j][r] * v2[j] for j in range(len(v2)))
                for r in range(self.space(n).n_cells(k2))]
        prod = cup_on_vectors(self.space(n), k1, k2, amb1, amb2, "Z")
        basis = src.bases[k1 + k2] if k1 + k2 < len(src.bases) else []
        if not basis:
            if any(prod):
                raise StructuralError("product left the lattice range")
            return []
        tmat = SparseIntMatrix(
            len(prod), len(basis),
            {(i, j): basis[j][i] for j in range(len(basis))
             for i in range(len(prod)) if basis[j][i]})
        sol = solve_int(tmat, prod)
        if sol is None:
            raise StructuralError("product left the shifted lattice")
        return [Fraction(x) for x in sol]


class TensorLevels:
    """Degreewise tensor product of two level families.

    Component (n, k) has basis pairs (i, a, b) with i + j = k; differential
    d(a x b) = da x b + (-1)^i a x db; faces, degeneracies and products act
    componentwise (with the Koszul sign for products).
    """

    def __init__(self, first, second, q_max):
        self.first = first
        self.second = second
        self.q_max = q_max
        if first.prime != second.prime:
            raise ValueError("level families live at different primes")
        self.prime = first.prime
        self._basis = {}

    def basis(self, n, k):
        if (n, k) not in self._basis:
            out = []
            for i in range(k + 1):
                j = k - i
                for a in range(self.first.dims(n, i)):
                    for b in range(self.second.dims(n, j)):
                        out.append((i, a, b))
            self._basis[(n, k)] = out
        return self._basis[(n, k)]

    def dims(self, n, k):
        return len(self.basis(n, k))

    def diff_matrix(self, n, k):
        src = self.basis(n, k)
        tgt = self.basis(n, k + 1)
        index = {t: pos for pos, t in enumerate(tgt)}
        rows = [[Fraction(0)] * len(src) for _ in range(len(tgt))]
        for col, (i, a, b) in enumerate(src):
            j = k - i
            da = self.first.diff_matrix(n, i)
            for r in range(len(da)):
                if da[r][a]:
                    rows[index[(i + 1, r, b)]][col] += da[r][a]
            db = self.second.diff_matrix(n, j)
            sign = (-1) ** i
            for r in range(len(db)):
                if db[r][b]:
                    rows[index[(i, a, r)]][col] += sign * db[r][b]
        return rows

    def _pointwise(self, n, k, first_mat, second_mat, target_key):
        src = self.basis(n, k)
        tgt = self.basis(target_key, k)
        index = {t: pos for pos, t in enumerate(tgt)}
        rows = [[Fraction(0)] * len(src) for _ in range(len(tgt))]
        for col, (i, a, b) in enumerate(src):
            fm = first_mat(i)
            sm = second_mat(k - i)
            for r1 in range(len(fm)):
                if not fm[r1][a]:
                    continue
                for r2 in range(len(sm)):
                    if sm[r2][b]:
                        rows[index[(i, r1, r2)]][col] += fm[r1][a] * sm[r2][b]
        return rows

    def face_matrix(self, n, i, k):
        return self._pointwise(
            n, k,
            lambda d: self.first.face_matrix(n, i, d),
            lambda d: self.second.face_matrix(n, i, d),
            n - 1)

    def degen_matrix(self, n, i, k):
        return self._pointwise(
            n, k,
            lambda d: self.first.degen_matrix(n, i, d),
            lambda d: self.second.degen_matrix(n, i, d),
            n + 1)

    def multiply(self, n, k1, v1, k2, v2):
        src1 = self.basis(n, k1)
        src2 = self.basis(n, k2)
        tgt = self.basis(n, k1 + k2)
        index = {t: pos for pos, t in enumerate(tgt)}
        out = [Fraction(0)] * len(tgt)
        for c1, (i1, a1, b1) in enumerate(src1):
            if not v1[c1]:
                continue
            for c2, (i2, a2, b2) in enumerate(src2):
                if not v2[c2]:
                    continue
                j1, j2 = k1 - i1, k2 - i2
                sign = (-1) ** (j1 * i2)
                e1 = [Fraction(1) if t == a1 else Fraction(0)
                      for t in range(self.first.dims(n, i1))]
                e2 = [Fraction(1) if t == a2 else Fraction(0)
                      for t in range(self.first.dims(n, i2))]
                fa = self.first.multiply(n, i1, e1, i2, e2)
                f1 = [Fraction(1) if t == b1 else Fraction(0)
                      for t in range(self.second.dims(n, j1))]
                f2 = [Fraction(1) if t == b2 else Fraction(0)
                      for t in range(self.second.dims(n, j2))]
                sb = self.second.multiply(n, j1, f1, j2, f2)
                coeff = v1[c1] * v2[c2] * sign
                for ra, ca in enumerate(fa):
                    if not ca:
                        continue
                    for rb, cb in enumerate(sb):
                        if cb:
                            out[index[(i1 + i2, ra, rb)]] += coeff * ca * cb
        return out


def tensor_cochain_algebra(first, second, q_max):
    """The degreewise tensor of two level families; see TensorLevels."""
    return TensorLevels(first, second, q_max)
