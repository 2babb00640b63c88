import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from hopfdisc import discriminant as D
from hopfdisc import families
from hopfdisc.algebra import matrix_algebra
from hopfdisc.arith import field
from hopfdisc.linalg import Mat, det

Q = field(1)


def test_char_poly_of_zero_and_one():
    A = families.liu(n=2, w=3).specialize(families.liu(n=2, w=3).identity_point()).alg
    zero = A.zero_vector()
    assert all(not c for c in D.char_poly(A, zero, 4).coeffs)
    cp = D.char_poly(A, A.unit, 4)
    assert cp.coeffs == [A.F.rational(comb(4, k)) for k in range(1, 5)]
    # p(t) = (t - 1)^4
    assert cp.poly() == [A.F.rational(c) for c in (1, -4, 6, -4, 1)]


def test_char_poly_of_matrix_unit():
    M = matrix_algebra(Q, 2)
    cp = D.char_poly(M, M.basis_vector(0), 2, trace=D.matrix_trace(2))
    assert cp.poly() == [Q.zero, -Q.one, Q.one]        # t^2 - t
    assert str(cp) == "t^2 - (1)*t"


def test_char_poly_rejects_degree_zero():
    M = matrix_algebra(Q, 2)
    with pytest.raises(ValueError):
        D.char_poly(M, M.unit, 0)


def test_cayley_hamilton_examples():
    M = matrix_algebra(Q, 2)
    assert D.cayley_hamilton_check(M, 2, D.matrix_trace(2)).passed
    bad = D.cayley_hamilton_check(M, 2, lambda v: D.matrix_trace(2)(v) * 2)
    assert not bad.passed and bad.failures[0]["element"] == "1"
    liu = families.liu(n=2, w=3)
    for p in liu.default_points(12):
        assert D.cayley_hamilton_check(liu.specialize(p).alg, 4).passed


def test_newton_matrix_matches_cofactor_expansion():
    rng = random.Random(3)
    F = field(12)
    tp = [F.zeta(rng.randrange(12)) * rng.randint(-3, 3) for _ in range(5)]
    for k in range(1, 6):
        rows = [[F.rational(i + 1) if j == i + 1 else (tp[i - j] if j <= i else F.zero)
                 for j in range(k)] for i in range(k)]
        from hopfdisc.linalg import det_cofactor
        assert det(Mat(F, rows, k)) == det_cofactor(Mat(F, rows, k))


# -- discriminant vanishing ---------------------------------------------------------

def test_dk_vanishing_examples():
    a = families.a_family(l=2, n=1, xi=-1)
    e = a.specialize(a.identity_point())
    assert D.gram_rank(e) == 2
    assert D.dk_vanishes(e, 3) and not D.dk_vanishes(e, 2)
    liu = families.liu(n=2, w=3)
    m = liu.specialize(liu.point(-1))
    assert D.gram_rank(m) == 4 and not D.dk_vanishes(m, 4)


def test_minor_witnesses():
    liu = families.liu(n=2, w=3)
    fib = liu.specialize(liu.identity_point())
    w = D.dk_vanishes(fib, 2, cross_check=True)
    assert not w.vanishes and len(w.symmetric_witness) == 2
    rows, cols = w.asymmetric_witness
    assert det(fib.alg.gram().gram.submatrix(rows, cols))
    z = D.dk_vanishes(fib, 3, cross_check=True)
    assert z.vanishes and z.sampled_zero_minors > 0


def test_orthogonal_basis_handles_hyperbolic_forms():
    # [[0, 1], [1, 0]] has no nonzero 1x1 principal minor, yet rank 2
    G = Mat.from_values(Q, [[0, 1], [1, 0]])
    us = D.orthogonal_basis(G)
    assert len(us) == 2
    form = [[sum((a * b for a, b in zip(u, G.apply(v))), Q.zero) for v in us] for u in us]
    assert form[0][1] == Q.zero and form[0][0] and form[1][1]


def test_lowest_levels():
    for l in (2, 3):
        assert D.lowest_level(families.a_family(l=l, n=1, conductor=4 * l)) == l + 1
    assert D.lowest_level(families.liu(n=2, w=3)) == 3
    assert D.lowest_level(families.liu(n=3, w=2)) == 4
    assert D.lowest_level(families.qborel_sl2(l=3)) == 4


# -- scans -----------------------------------------------------------------------------

def test_liu_scan_table():
    liu = families.liu(n=2, w=3)
    F = liu.F
    pts = [liu.point(F.zeta(j)) for j in range(12)]
    r = D.scan_variety(liu, pts, [1, 2, 3, 4, 5])
    assert r.level_set(1) == [] and r.level_set(2) == []
    cubes = [liu.point(F.zeta(j)) for j in (0, 4, 8)]
    assert r.level_set(3) == cubes and r.level_set(4) == cubes
    assert r.level_set(5) == pts
    assert r.distinct_sd() == [2, 4]
    assert [rec.point for rec in r.records] == pts
    j = r.to_json()
    assert j["schema_version"] == D.SCHEMA_VERSION
    assert j["summary"]["lowest_level"] == 3
    assert len(j["summary"]["lowest_set"]) == 3
    assert "lowest level = 3" in r.table()


def test_a_family_scan():
    a = families.a_family(l=2, n=1, xi=-1)
    F = a.F
    grid = [a.point(al, be) for al in (F.zero, F.one) for be in (F.one, -F.one, F.zeta(1),
                                                               -F.zeta(1))]
    r = D.scan_variety(a, grid, [3])
    assert r.level_set(3) == grid[:4]


def test_infinite_taft_scan():
    it = families.infinite_taft(n=2, t=1)
    F = it.F
    pts = [it.point(v) for v in (F.zero, F.one, -F.one)]
    assert D.scan_variety(it, pts, [3]).level_set(3) == [pts[0]]


def test_scan_with_workers_preserves_order():
    liu = families.build("liu", {"n": 2, "w": 3})
    pts = liu.default_points()[::-1]
    a = D.scan_variety(liu, pts, [3], jobs=1)
    b = D.scan_variety(liu, pts, [3], jobs=2)
    assert [r.point for r in b.records] == pts
    assert [r.to_json() for r in a.records] == [r.to_json() for r in b.records]


@st.composite
def fibers(draw):
    name, params = draw(st.sampled_from([
        ("liu", {"n": 2, "w": 3}), ("a_family", {"l": 2, "n": 1}), ("taft_ext", {"n": 3}),
        ("infinite_taft", {"n": 2, "t": 1}), ("qborel_sl2", {"l": 3})]))
    fam = families.build(name, params)
    return fam, draw(st.sampled_from(fam.default_points(40)))


@given(fibers())
def test_vanishing_is_monotone(t):
    fam, p = t
    fib = fam.specialize(p)
    flags = [D.dk_vanishes(fib, k) for k in range(1, fib.dim + 2)]
    assert not flags[0] and flags[-1]
    assert flags == sorted(flags)


@given(fibers())
def test_sd_is_invariant_under_inversion(t):
    fam, p = t
    assert fam.specialize(p).sd() == fam.specialize(fam.inverse_point(p)).sd()


@given(fibers(), st.integers(0, 2 ** 16))
def test_determinant_and_newton_agree(t, seed):
    fam, p = t
    A = fam.specialize(p).alg
    a = D.random_element(A, random.Random(seed))
    tp = D.power_traces(A, a, A.dim)
    assert D.char_coeffs_det(tp, A.dim) == D.char_coeffs_newton(tp, A.dim)


@given(fibers())
def test_cross_checked_minors(t):
    fam, p = t
    fib = fam.specialize(p)
    r = D.gram_rank(fib)
    for k in (r, r + 1):
        if 1 <= k <= fib.dim:
            res = D.dk_vanishes(fib, k, cross_check=True, samples=5)
            assert res.vanishes == (r < k)
