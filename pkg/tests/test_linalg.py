import itertools
import random
from fractions import Fraction

import pytest

from padicforms.linalg import (
    AbelianGroupReport,
    SparseIntMatrix,
    StructuralError,
    cohomology,
    complete_basis,
    det_bareiss,
    hnf_rows,
    kernel_basis,
    lattice_membership,
    p_local_rank_and_torsion,
    p_local_snf,
    smith_normal_form,
    solve_int,
)


def M(rows):
    return SparseIntMatrix.from_rows(rows)


def rand_matrix(rng, rows, cols, lo=-3, hi=3):
    return M([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


# -- Smith normal form -------------------------------------------------------

def test_snf_trivial_cases():
    _, D, _ = smith_normal_form(M([[2]]))
    assert D[(0, 0)] == 2
    _, D, _ = smith_normal_form(M([[1, 0], [0, 1]]))
    assert D[(0, 0)] == 1 and D[(1, 1)] == 1


def test_snf_random_properties():
    rng = random.Random(5)
    for _ in range(120):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        a = rand_matrix(rng, n, m)
        U, D, V = smith_normal_form(a)
        assert U.mul(a).mul(V) == D
        assert abs(det_bareiss(U.to_rows())) == 1
        assert abs(det_bareiss(V.to_rows())) == 1
        diag = [D[(i, i)] for i in range(min(n, m))]
        for d1, d2 in zip(diag, diag[1:]):
            if d2:
                assert d1 != 0 and d2 % d1 == 0


def minor_gcd_invariants(rows):
    """Oracle: d_1...d_k = gcd of all k x k minors (determinantal divisors)."""
    import math
    n = len(rows)
    m = len(rows[0])
    prev = 1
    out = []
    for k in range(1, min(n, m) + 1):
        g = 0
        for ris in itertools.combinations(range(n), k):
            for cis in itertools.combinations(range(m), k):
                sub = [[rows[i][j] for j in cis] for i in ris]
                g = math.gcd(g, det_bareiss(sub))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def test_snf_matches_minor_gcd_oracle():
    a = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    _, D, _ = smith_normal_form(M(a))
    diag = [D[(i, i)] for i in range(3) if D[(i, i)]]
    assert diag == minor_gcd_invariants(a) == [2, 2, 156]
    rng = random.Random(13)
    for _ in range(30):
        rows = [[rng.randint(-4, 4) for _ in range(rng.randint(1, 4))]]
        rows = [[rng.randint(-4, 4) for _ in range(len(rows[0]))]
                for _ in range(rng.randint(1, 4))]
        _, D, _ = smith_normal_form(M(rows))
        diag = [D[(i, i)] for i in range(min(len(rows), len(rows[0]))) if D[(i, i)]]
        assert diag == minor_gcd_invariants(rows)


def test_kernel_basis_exactness():
    rng = random.Random(7)
    for _ in range(60):
        a = rand_matrix(rng, rng.randint(1, 4), rng.randint(1, 5))
        ker = kernel_basis(a)
        for v in ker:
            assert all(x == 0 for x in a.mul_vector(v))
        # saturation: kernel rank equals cols - rank
        _, D, _ = smith_normal_form(a)
        rank = sum(1 for i in range(min(a.rows, a.cols)) if D[(i, i)])
        assert len(ker) == a.cols - rank


def test_solve_int():
    a = M([[2, 0], [0, 3]])
    assert solve_int(a, [4, 9]) == [2, 3]
    assert solve_int(a, [1, 0]) is None


def test_complete_basis():
    cols = [[1, 0, 2], [0, 1, 3]]
    comp = complete_basis(cols, 3)
    full = [list(c) for c in cols] + [list(c) for c in comp]
    assert abs(det_bareiss([list(r) for r in zip(*full)])) == 1


# -- Hermite form / lattices -------------------------------------------------

def test_hnf_canonical_for_equal_lattices():
    basis1 = [[2, 0, 1], [0, 3, 1]]
    # same lattice, different generators
    basis2 = [[2, 3, 2], [2, -3, 0], [2, 0, 1]]
    assert hnf_rows(basis1) == hnf_rows(basis2)


def test_hnf_membership_iff_row_span():
    rng = random.Random(9)
    for _ in range(40):
        gens = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(3)]
        h = hnf_rows(gens, 4)
        coeffs = [rng.randint(-2, 2) for _ in gens]
        combo = [sum(c * g[t] for c, g in zip(coeffs, gens)) for t in range(4)]
        assert hnf_rows(h + [combo], 4) == h


# -- p-local SNF --------------------------------------------------------------

def test_p_local_snf_diag_powers():
    a = [[Fraction(2), Fraction(1, 3)], [Fraction(4), Fraction(6)]]
    u, diag, v = p_local_snf(a, 2)
    from padicforms.arith import valuation
    exps = [valuation(d, 2) for d in diag if d]
    assert exps == sorted(exps)
    # unit pivot exists because 1/3 is a 2-adic unit
    assert exps[0] == 0


def test_p_local_rank_matches_integer_snf():
    rng = random.Random(21)
    for _ in range(60):
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        a = [[rng.randint(-6, 6) for _ in range(m)] for _ in range(n)]
        for p in (2, 3):
            free, tors = p_local_rank_and_torsion(
                [[Fraction(x) for x in row] for row in a], p)
            _, D, _ = smith_normal_form(M(a))
            diag = [D[(i, i)] for i in range(min(n, m)) if D[(i, i)]]
            from padicforms.arith import int_valuation
            exps = sorted(int_valuation(d, p) for d in diag)
            assert free == sum(1 for e in exps if e == 0)
            assert tors == [e for e in exps if e > 0]


# -- lattice membership -------------------------------------------------------

def brute_membership(target, gens, p, bound):
    """Oracle: exhaustive search over small integer coefficients divided by p-units."""
    if not gens:
        return all(Fraction(t) == 0 for t in target)
    coeff_range = [Fraction(c) for c in range(-bound, bound + 1)]
    for combo in itertools.product(coeff_range, repeat=len(gens)):
        vec = [sum(c * Fraction(g[t]) for c, g in zip(combo, gens))
               for t in range(len(target))]
        if vec == [Fraction(t) for t in target]:
            return True
    return False


def test_membership_basic():
    gens = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    coeffs = lattice_membership([Fraction(3), Fraction(5)], gens, 2)
    assert coeffs == [3, 5]


def test_membership_identity_generator():
    gens = [[Fraction(2), Fraction(4)]]
    coeffs = lattice_membership([Fraction(2), Fraction(4)], gens, 3)
    assert coeffs == [1]


def test_membership_requires_p_integrality():
    g1 = [Fraction(2), Fraction(0)]
    target = [Fraction(1), Fraction(0)]  # (1/2) * g1, not 2-integral
    assert lattice_membership(target, [g1], 2) is None
    # but it is 3-integral
    coeffs = lattice_membership(target, [g1], 3)
    assert coeffs == [Fraction(1, 2)]


def test_membership_agrees_with_bruteforce():
    rng = random.Random(31)
    for _ in range(80):
        dim = rng.randint(1, 4)
        k = rng.randint(1, 3)
        gens = [[Fraction(rng.randint(-2, 2)) for _ in range(dim)] for _ in range(k)]
        target = [Fraction(rng.randint(-4, 4)) for _ in range(dim)]
        for p in (2, 3):
            got = lattice_membership(target, gens, p)
            if got is not None:
                vec = [sum(c * g[t] for c, g in zip(got, gens)) for t in range(dim)]
                assert vec == target
                assert all(c.denominator % p for c in got)
            else:
                # brute force over integer coefficients cannot certify
                # infeasibility over the local ring, but feasibility found by
                # brute force must also be found by the solver
                assert not brute_membership(target, gens, p, p ** 2)


def test_membership_certificate():
    g1 = [Fraction(2), Fraction(0)]
    target = [Fraction(1), Fraction(0)]
    coeffs, cert = lattice_membership(target, [g1], 2, with_certificate=True)
    assert coeffs is None and cert is not None
    assert cert.check(target, [g1])


# -- cohomology ---------------------------------------------------------------

def zero_map(rows, cols):
    return SparseIntMatrix.zero(rows, cols)


def test_cohomology_free():
    rep = cohomology(zero_map(3, 0), zero_map(0, 3), "Z", 2)
    assert rep.free_rank == 3 and rep.torsion == []


def test_cohomology_times_two():
    # 0 -> Z --x2--> Z -> 0 at p = 2, degree 1: cokernel Z/2
    d_prev = M([[2]])
    d_cur = zero_map(0, 1)
    rep = cohomology(d_prev, d_cur, "Z", 2)
    assert rep.free_rank == 0 and rep.torsion == [2]
    # at p = 3 the torsion is prime to p and is stripped into diagnostics
    rep3 = cohomology(d_prev, d_cur, "Z", 3)
    assert rep3.free_rank == 0 and rep3.torsion == []
    assert rep3.prime_to_p_torsion == [2]


def test_cohomology_checks_composability():
    with pytest.raises(StructuralError):
        cohomology(M([[1], [1]]), M([[1, 1]]), "Z", 2)


def brute_cohomology_orders(d_prev, d_cur, p, N):
    """Oracle: enumerate the quotient ker/im of the complex reduced mod p^N."""
    m = p ** N
    ncells = d_cur.cols
    vectors = list(itertools.product(range(m), repeat=ncells))
    kernel = [v for v in vectors
              if all(x % m == 0 for x in d_cur.mul_vector(list(v)))]
    image = set()
    for w in itertools.product(range(m), repeat=d_prev.cols):
        image.add(tuple(x % m for x in d_prev.mul_vector(list(w))))
    # order of the quotient group
    return len(kernel) // len(image)


def test_cohomology_mod_matches_bruteforce():
    rng = random.Random(41)
    trials = 0
    while trials < 25:
        rows_b, cols_b = rng.randint(1, 2), rng.randint(1, 3)
        cols_a = rng.randint(0, 2)
        d_cur = rand_matrix(rng, rows_b, cols_b, -3, 3)
        if cols_a:
            ker = kernel_basis(d_cur)
            if not ker:
                continue
            cols = []
            for _ in range(cols_a):
                combo = [0] * d_cur.cols
                for v in ker:
                    c = rng.randint(-2, 2)
                    combo = [x + c * y for x, y in zip(combo, v)]
                cols.append(combo)
            d_prev = SparseIntMatrix(d_cur.cols, cols_a,
                                     {(i, j): cols[j][i] for j in range(cols_a)
                                      for i in range(d_cur.cols) if cols[j][i]})
        else:
            d_prev = zero_map(d_cur.cols, 0)
        for p, N in ((2, 2), (3, 1)):
            if d_cur.cols > 2 and p ** N > 4:
                continue
            rep = cohomology(d_prev, d_cur, ("Zmod", p ** N), p)
            want = brute_cohomology_orders(d_prev, d_cur, p, N)
            assert rep.order() == want, (d_prev.to_rows(), d_cur.to_rows(), p, N)
        trials += 1


def test_cohomology_gf():
    # over F_2: 0 -> Z --x2--> Z -> 0 becomes 0 map, so H^1 = F_2
    rep = cohomology(M([[2]]), zero_map(0, 1), "GF", 2)
    assert rep.free_rank == 1
    rep = cohomology(M([[1]]), zero_map(0, 1), "GF", 2)
    assert rep.free_rank == 0


def test_class_coordinates_and_membership():
    # H = Z/2 generated by the kernel vector itself
    d_prev = M([[2]])
    d_cur = zero_map(0, 1)
    rep = cohomology(d_prev, d_cur, "Z", 2)
    assert rep.class_coordinates([1]) != rep.class_coordinates([0])
    assert rep.same_class([1], [3])
    assert rep.is_coboundary([2])
