import itertools
import random

import pytest

from padicforms.simplicial import (
    Cochain,
    basis_cochain,
    coboundary,
    delta,
    normalized_cochain_complex,
    rp2,
    sphere,
    zero_cochain,
)
from padicforms.products import (
    block_compose,
    cohomology_ring,
    cup,
    cup_i,
    cup_i_coboundary_defect,
    hirsch_check,
    hirsch_defect,
    steenrod_square,
)


def all_basis(space, q, ring="Z"):
    return [basis_cochain(space, q, i, ring) for i in range(space.n_cells(q))]


def constant_one(space, ring="Z"):
    return Cochain(space, 0, ring, tuple([1] * space.n_cells(0)))


# -- cup ------------------------------------------------------------------------

def test_cup_unit():
    for space in (rp2(), sphere(2), delta(2)):
        one = constant_one(space)
        assert cup(one, one).values == one.values
        for q in range(space.dimension + 1):
            for f in all_basis(space, q):
                assert cup(one, f).values == f.values
                assert cup(f, one).values == f.values


def test_cup_leibniz_exhaustive():
    for space in (rp2(), sphere(2), delta(2)):
        for p_deg in range(space.dimension + 1):
            for q_deg in range(space.dimension - p_deg + 1):
                for a in all_basis(space, p_deg):
                    for b in all_basis(space, q_deg):
                        lhs = coboundary(cup(a, b))
                        rhs = cup(coboundary(a), b) + \
                            cup(a, coboundary(b)).scale((-1) ** p_deg)
                        assert (lhs - rhs).is_zero()


def test_s1_top_cup_is_zero():
    s1 = sphere(1)
    x = basis_cochain(s1, 1, 0)
    sq = cup(x, x)
    assert sq.degree == 2 and sq.values == ()


def test_rp2_mod2_cup_square_nonzero():
    # brute force against the printed face table: for x = a* + b* (the H^1
    # generator mod 2), (x cup x)(U) = x(b)x(c)... front edge (01), back (12)
    space = rp2()
    cx = normalized_cochain_complex(space)
    h1 = cx.cohomology(1, "GF", 2)
    assert h1.free_rank == 1
    x = Cochain(space, 1, ("GF", 2), tuple(h1.generators[0]))
    sq = cup(x, x)
    h2 = cx.cohomology(2, "GF", 2)
    assert not h2.is_coboundary(list(sq.values))


# -- cup_i ------------------------------------------------------------------------

def test_cup_0_equals_cup_exhaustive():
    space = rp2()
    for p_deg in range(3):
        for q_deg in range(3 - p_deg):
            for a in all_basis(space, p_deg):
                for b in all_basis(space, q_deg):
                    assert cup_i(a, b, 0).values == cup(a, b).values


def test_cup_i_range_errors():
    space = rp2()
    a = basis_cochain(space, 1, 0)
    with pytest.raises(ValueError):
        cup_i(a, a, 2)
    with pytest.raises(ValueError):
        cup_i(a, a, -1)


def test_cup1_coboundary_identity_exhaustive():
    # the fixed sign convention, over Z and over F_2, on every basis pair
    for space in (rp2(), sphere(2)):
        for ring in ("Z", ("GF", 2)):
            for p_deg in range(1, space.dimension + 1):
                for q_deg in range(1, space.dimension + 1):
                    for a in all_basis(space, p_deg, ring):
                        for b in all_basis(space, q_deg, ring):
                            d = cup_i_coboundary_defect(a, b, 1)
                            assert d.is_zero(), (space.name, ring, p_deg, q_deg)


def test_cup2_coboundary_identity():
    space = rp2()
    for ring in ("Z", ("GF", 2)):
        for a in all_basis(space, 2, ring):
            for b in all_basis(space, 2, ring):
                assert cup_i_coboundary_defect(a, b, 2).is_zero()


def test_cup1_random_cochains_delta3():
    rng = random.Random(17)
    space = delta(3)
    for _ in range(40):
        p_deg = rng.randint(1, 2)
        q_deg = rng.randint(1, 2)
        a = Cochain(space, p_deg, "Z",
                    tuple(rng.randint(-2, 2) for _ in range(space.n_cells(p_deg))))
        b = Cochain(space, q_deg, "Z",
                    tuple(rng.randint(-2, 2) for _ in range(space.n_cells(q_deg))))
        assert cup_i_coboundary_defect(a, b, 1).is_zero()


# -- Hirsch identity ---------------------------------------------------------------

def test_hirsch_degree_zero_vacuous():
    space = rp2()
    a = basis_cochain(space, 1, 0, ("GF", 2))
    b = basis_cochain(space, 1, 1, ("GF", 2))
    c = zero_cochain(space, 0, ("GF", 2))
    ok, witness = hirsch_check(a, b, c)
    assert ok and witness is None


def test_hirsch_all_triples_rp2():
    space = rp2()
    for ring in ("Z", ("GF", 2)):
        basis1 = all_basis(space, 1, ring)
        for a in basis1:
            for b in basis1:
                for c in basis1:
                    ok, witness = hirsch_check(a, b, c)
                    assert ok, (ring, a.values, b.values, c.values, witness)


def test_hirsch_random_sphere2():
    rng = random.Random(23)
    space = sphere(2)
    for _ in range(200):
        degs = [rng.randint(1, 2) for _ in range(3)]
        chains = []
        for d in degs:
            vals = tuple(rng.randint(-3, 3) for _ in range(space.n_cells(d)))
            chains.append(Cochain(space, d, "Z", vals))
        a, b, c = chains
        if 1 > min(a.degree + b.degree, c.degree) or 1 > min(b.degree, c.degree) \
                or 1 > min(a.degree, c.degree):
            continue
        ok, witness = hirsch_check(a, b, c)
        assert ok, (degs, witness)


def test_hirsch_random_delta3_integer():
    rng = random.Random(29)
    space = delta(3)
    for _ in range(60):
        a = Cochain(space, 1, "Z",
                    tuple(rng.randint(-2, 2) for _ in range(space.n_cells(1))))
        b = Cochain(space, 1, "Z",
                    tuple(rng.randint(-2, 2) for _ in range(space.n_cells(1))))
        c = Cochain(space, 1, "Z",
                    tuple(rng.randint(-2, 2) for _ in range(space.n_cells(1))))
        ok, _ = hirsch_check(a, b, c)
        assert ok


# -- Steenrod squares ----------------------------------------------------------------

def test_sq0_is_identity_on_rp2():
    space = rp2()
    cx = normalized_cochain_complex(space)
    h1 = cx.cohomology(1, "GF", 2)
    gen = h1.generators[0]
    vec, rep = steenrod_square(space, 0, gen, 1)
    assert rep.same_class(vec, gen)


def test_sq1_detects_bockstein_on_rp2():
    space = rp2()
    cx = normalized_cochain_complex(space)
    h1 = cx.cohomology(1, "GF", 2)
    h2 = cx.cohomology(2, "GF", 2)
    gen = h1.generators[0]
    vec, rep = steenrod_square(space, 1, gen, 1)
    assert rep.free_rank == h2.free_rank == 1
    assert not rep.is_coboundary(vec)


def test_sq1_additive_and_natural_spot():
    # additivity on classes: Sq^1(x + 0) = Sq^1 x; naturality under the
    # characteristic map delta^2 -> (2-cell U of rp2), pulled back on cochains
    space = rp2()
    cx = normalized_cochain_complex(space)
    h1 = cx.cohomology(1, "GF", 2)
    x = h1.generators[0]
    sq_x, rep = steenrod_square(space, 1, x, 1)
    zero = [0] * len(x)
    sq_sum, _ = steenrod_square(space, 1, [a + b for a, b in zip(x, zero)], 1)
    assert rep.same_class(sq_x, sq_sum)

    # pullback along U's characteristic map: simplices of delta^2 -> cells
    simplex = delta(2)
    image = {"0.1.2": ("U", 2), "0.1": ("c", 1), "0.2": ("a", 1),
             "1.2": ("b", 1), "0": ("v", 0), "1": ("v", 0), "2": ("w", 0)}

    def pullback(q, vector):
        out = []
        for name in simplex.simplices[q]:
            target, deg = image[name]
            out.append(vector[space.index_of(q, target)] % 2)
        return out

    fx = pullback(1, x)
    fx_cochain = Cochain(simplex, 1, ("GF", 2), tuple(fx))
    if coboundary(fx_cochain).is_zero():
        sq_fx, rep_d = steenrod_square(simplex, 1, fx, 1)
        pulled = pullback(2, sq_x)
        assert rep_d.same_class(sq_fx, pulled)


def test_top_square_axiom_on_classes():
    for space in (rp2(), sphere(2)):
        cx = normalized_cochain_complex(space)
        for q in range(1, space.dimension + 1):
            rep = cx.cohomology(q, "GF", 2)
            for gen in rep.generators:
                vec, out = steenrod_square(space, q, gen, q)
                x = Cochain(space, q, ("GF", 2), tuple(gen))
                assert vec == list(cup(x, x).values)


# -- block permutation composition ------------------------------------------------------

def test_block_compose_identity():
    assert block_compose((0, 1), [(0,), (0, 1)]) == (0, 1, 2)


def test_block_compose_swap():
    # block of size 2 moves ahead of the block of size 1:
    # one-line images (0-based): 0 -> 2, 1 -> 0, 2 -> 1
    assert block_compose((1, 0), [(0,), (0, 1)]) == (2, 0, 1)


def test_block_compose_inner_action():
    assert block_compose((0, 1), [(1, 0), (0,)]) == (1, 0, 2)


def compose_perms(f, g):
    """(f o g)(x) = f(g(x)), one-line tuples."""
    return tuple(f[g[x]] for x in range(len(g)))


def brute_block_perm(outer, sizes):
    """Oracle: list the blocks, shuffle them by outer, read off the images."""
    slots = [[] for _ in range(len(sizes))]
    start = 0
    for k, size in enumerate(sizes):
        slots[outer[k]] = list(range(start, start + size))
        start += size
    flat = [x for slot in slots for x in slot]
    # flat[new_position] = old_position; invert to get images
    image = [0] * len(flat)
    for newpos, old in enumerate(flat):
        image[old] = newpos
    return tuple(image)


def test_block_compose_against_bruteforce():
    rng = random.Random(37)
    for _ in range(120):
        r = rng.randint(1, 3)
        outer = list(range(r))
        rng.shuffle(outer)
        sizes = [rng.randint(1, 3) for _ in range(r)]
        inner = []
        for s in sizes:
            pi = list(range(s))
            rng.shuffle(pi)
            inner.append(tuple(pi))
        got = block_compose(tuple(outer), inner)
        # oracle: inner permutations first, then the block shuffle
        blockperm = brute_block_perm(tuple(outer), sizes)
        within = []
        start = 0
        for k, s in enumerate(sizes):
            within.extend(start + inner[k][t] for t in range(s))
            start += s
        direct = compose_perms(blockperm, tuple())
        oneline = tuple(blockperm[within[x]] for x in range(len(within)))
        assert got == oneline


def test_block_compose_operad_associativity():
    rng = random.Random(43)
    for _ in range(60):
        r = rng.randint(1, 3)
        outer = list(range(r))
        rng.shuffle(outer)
        sizes = [rng.randint(1, 3) for _ in range(r)]
        mids = []
        for s in sizes:
            pi = list(range(s))
            rng.shuffle(pi)
            mids.append(tuple(pi))
        inner_sizes = [[rng.randint(1, 2) for _ in range(s)] for s in sizes]
        inners = [[tuple(rng.sample(range(sz), sz)) for sz in row]
                  for row in inner_sizes]
        # route 1: compose outer with mids, then with the flattened inners
        first = block_compose(tuple(outer), mids)
        flat_inners = [inners[k][t] for k in range(r) for t in range(sizes[k])]
        route1 = block_compose(first, flat_inners)
        # route 2: compose each mid with its own inners, then outer with those
        partials = [block_compose(mids[k], inners[k]) for k in range(r)]
        route2 = block_compose(tuple(outer), partials)
        assert route1 == route2


# -- cohomology ring -------------------------------------------------------------------

def test_ring_sphere_top_square_zero():
    for n in (1, 2):
        for p in (2, 3):
            reports, products = cohomology_ring(sphere(n), "Z", p)
            assert (reports[0].free_rank, reports[0].torsion) == (1, [])
            assert (reports[n].free_rank, reports[n].torsion) == (1, [])
            # the top generator squares to zero (the target group is 0)
            key = (n, 0, n, 0)
            if key in products:
                assert all(c == 0 for c in products[key])


def test_ring_rp2_p2_and_p3():
    reports, products = cohomology_ring(rp2(), "Z", 2)
    assert (reports[0].free_rank, reports[0].torsion) == (1, [])
    assert (reports[1].free_rank, reports[1].torsion) == (0, [])
    assert (reports[2].free_rank, reports[2].torsion) == (0, [2])
    # unit acts as identity on the torsion generator
    assert products[(0, 0, 2, 0)] == reports[2].class_coordinates(
        reports[2].generators[0])
    reports3, _ = cohomology_ring(rp2(), "Z", 3)
    assert (reports3[0].free_rank, reports3[0].torsion) == (1, [])
    assert (reports3[1].free_rank, reports3[1].torsion) == (0, [])
    assert (reports3[2].free_rank, reports3[2].torsion) == (0, [])
