import threading

import pytest
from hypothesis import given, strategies as st

from hopfdisc import families
from hopfdisc.algebra import AlgMod, characters, is_semisimple_module, simple_modules
from hopfdisc.hopf import (DeltaMap, HopfAxiomFailed, InvalidPoint, bigalois_check,
                           character_action_orbit, check_antipode_axiom, check_coassociativity,
                           check_counit_axioms, check_delta_homomorphism, dual_module,
                           fiber_simples, finite_hopf_from_points, format_expr, has_character,
                           parse_expr, parse_word, radical_coideal_check, tag, tensor_module)
from hopfdisc.linalg import Mat


@pytest.fixture(scope="module")
def liu():
    return families.liu(n=2, w=3)


@pytest.fixture(scope="module")
def afam():
    return families.a_family(l=2, n=1, xi=-1, conductor=8)


def trivial_module(fam):
    e = fam.identity_point()
    A = fam.specialize(e).alg
    eps = fam.counit()
    return tag(AlgMod(A, 1, [Mat(A.F, [[c]]) for c in eps]), e)


# -- expressions ------------------------------------------------------------------

def test_parse_expr_and_word():
    e = parse_expr("A*D - B*C - 1", ("A", "B", "C", "D"), families.taft_ext().F)
    F = families.taft_ext().F
    vals = tuple(F.rational(v) for v in (2, 1, 1, 1))
    assert e.evaluate(vals, F) == F.zero
    assert format_expr(e) == "-1 - B*C + A*D"
    again = parse_expr(format_expr(e), ("A", "B", "C", "D"), F)
    assert again.terms == e.terms
    assert parse_word("y*g^-1") == (("y", 1), ("g", -1))


# -- specialization -------------------------------------------------------------------

def test_a_family_identity_fiber_is_taft(afam):
    e = afam.identity_point()
    assert e.as_dict() == {"Y": afam.F.zero, "X": afam.F.one}
    fib = afam.specialize(e)
    assert fib.dim == 4 and fib.sd() == 2
    assert sorted(M.dim for M in simple_modules(fib.alg)) == [1, 1]


def test_liu_fibers(liu):
    fib = liu.specialize(liu.point(1))
    y, g = fib.letters["y"], fib.letters["g"]
    A = fib.alg
    assert not any(A.mul(y, y))
    assert A.mul(g, g) == A.unit
    M = liu.specialize(liu.point(-1))
    assert M.alg.radical().dim == 0 and M.sd() == 4


def test_infinite_taft_identity():
    fam = families.infinite_taft(n=2, t=1)
    assert fam.identity_point().as_dict() == {"X": fam.F.zero}


def test_invalid_points(liu):
    with pytest.raises(InvalidPoint):
        liu.point(0)                            # x is invertible
    fam = families.oeps_sl2(r=3, enable_experimental=True)
    with pytest.raises(InvalidPoint):
        fam.point(1, 1, 1, 1)                   # AD - BC = 0


def test_fiber_dimension_is_constant(liu, afam):
    for fam in (liu, afam):
        for p in fam.default_points(24):
            assert fam.specialize(p).dim == fam.ch_degree


def test_fiber_cache_is_shared_across_threads(liu):
    p = liu.point(liu.F.zeta(5))
    out = []
    ts = [threading.Thread(target=lambda: out.append(liu.specialize(p))) for _ in range(4)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    assert all(f is out[0] for f in out)


# -- the group maxSpec C ------------------------------------------------------------------

def test_a_family_convolution(afam):
    F = afam.F
    a1, b1, a2, b2 = F.rational(2), F.zeta(2), F.rational(3), F.zeta(1)
    p, q = afam.point(a1, b1), afam.point(a2, b2)
    r = afam.convolve(p, q)
    assert r.values == (a1 + b1 * a2, b1 * b2)
    inv = afam.inverse_point(p)
    assert inv.values == (-(b1 ** -1) * a1, b1 ** -1)
    assert afam.inverse_point(afam.identity_point()) == afam.identity_point()


def test_grouplike_convolution(liu):
    F = liu.F
    assert liu.convolve(liu.point(F.zeta(1)), liu.point(F.zeta(2))) == liu.point(F.zeta(3))
    assert liu.inverse_point(liu.point(F.zeta(5))) == liu.point(F.zeta(7))


BUILTINS = [("taft_ext", {"n": 2}), ("a_family", {"l": 2, "n": 1, "xi": -1}),
            ("liu", {"n": 2, "w": 3}), ("infinite_taft", {"n": 2, "t": 1}),
            ("qborel_sl2", {"l": 3}), ("group_ext", {"group": "D8"}),
            ("group_ext", {"group": "Q8"})]


@st.composite
def point_triples(draw):
    name, params = draw(st.sampled_from(BUILTINS))
    fam = families.build(name, params)
    pts = fam.default_points(40)
    return fam, draw(st.sampled_from(pts)), draw(st.sampled_from(pts)), draw(st.sampled_from(pts))


@given(point_triples())
def test_group_axioms(t):
    fam, p, q, r = t
    e = fam.identity_point()
    assert fam.convolve(fam.convolve(p, q), r) == fam.convolve(p, fam.convolve(q, r))
    assert fam.convolve(p, e) == p == fam.convolve(e, p)
    pi = fam.inverse_point(p)
    assert fam.convolve(p, pi) == e == fam.convolve(pi, p)


@given(point_triples())
def test_coassociativity_and_counit(t):
    fam, p, q, r = t
    assert check_coassociativity(fam, p, q, r)
    assert check_counit_axioms(fam, p)


@given(point_triples())
def test_delta_is_an_algebra_map(t):
    fam, p, q, _ = t
    assert check_delta_homomorphism(fam.delta_fiber(p, q))


@pytest.mark.parametrize("name,params", BUILTINS)
def test_antipode_axiom(name, params):
    assert check_antipode_axiom(families.build(name, params))


def test_a_family_delta_of_y(afam):
    # D(y) = y (x) 1 + x (x) y on the identity fibers
    e = afam.identity_point()
    fib = afam.specialize(e)
    D = afam.delta_fiber(e, e)
    y, x = fib.letters["y"], fib.letters["x"]
    img = D.apply(y)
    from hopfdisc.hopf import tensor_add, tensor_vec
    F = afam.F
    expect = tensor_add(F, tensor_vec(F, y, fib.alg.unit), tensor_vec(F, x, y))
    assert img == expect


def test_oeps_fibers_and_axioms():
    fam = families.oeps_sl2(r=3, enable_experimental=True)
    F = fam.F
    e = fam.identity_point()
    gen = fam.point(2, 1, 1, 1)
    low = fam.point(1, 0, 1, 1)
    assert fam.specialize(e).alg.gram().rank == 3
    assert fam.specialize(low).alg.gram().rank == 9
    assert fam.specialize(gen).alg.gram().rank == 27
    assert check_counit_axioms(fam, low)
    assert check_delta_homomorphism(fam.delta_fiber(low, gen))
    assert check_antipode_axiom(fam)
    assert fam.convolve(low, gen) == fam.point(2, 1, 3, 2)
    assert F.n == 3


# -- modules ---------------------------------------------------------------------------

def test_tensor_with_trivial_module_is_identity(liu):
    triv = trivial_module(liu)
    for V in fiber_simples(liu, liu.point(-1)):
        for M in (tensor_module(liu, triv, V), tensor_module(liu, V, triv)):
            assert M.dim == V.dim
            assert [m.data for m in M.action] == [m.data for m in V.action]


def test_tensor_dimensions_multiply(liu):
    V = fiber_simples(liu, liu.point(-1))[0]
    W = fiber_simples(liu, liu.point(liu.F.zeta(1)))[0]
    M = tensor_module(liu, V, W)
    assert M.dim == 4 and M.info["point"] == liu.convolve(liu.point(-1), liu.point(liu.F.zeta(1)))


def test_v_tensor_dual_not_semisimple_off_lowest(liu):
    beta = liu.point(-1)
    V = fiber_simples(liu, beta)[0]
    Vs = dual_module(liu, V, "left")
    assert Vs.info["point"] == liu.inverse_point(beta)
    assert Vs.dim == V.dim and Vs.is_absolutely_irreducible()
    M = tensor_module(liu, V, Vs)
    assert M.info["point"] == liu.identity_point()
    assert not is_semisimple_module(M.parent, M)


def test_dual_of_character_is_character_of_antipode(afam):
    e = afam.identity_point()
    for chi in characters(afam.specialize(e).alg):
        tag(chi, e)
        for side in ("left", "right"):
            d = dual_module(afam, chi, side)
            assert d.dim == 1 and d.info["point"] == e
    S = afam.antipode(e)
    chi = tag(characters(afam.specialize(e).alg)[1], e)
    d = dual_module(afam, chi, "left")
    assert [m.data[0][0] for m in d.action] == [chi.rho(S.col(k)).data[0][0]
                                                for k in range(S.cols)]


def test_duals_of_liu_simple(liu):
    p = liu.point(liu.F.zeta(1))
    V = fiber_simples(liu, p)[0]
    for side in ("left", "right"):
        D = dual_module(liu, V, side)
        assert D.info["point"] == liu.point(liu.F.zeta(11))


# -- structure checks --------------------------------------------------------------------

def test_bigalois(liu, afam):
    assert bigalois_check(liu, liu.identity_point())
    assert bigalois_check(liu, liu.point(-1))
    F = afam.F
    assert bigalois_check(afam, afam.point(0, F.zeta(2)))


def test_radical_coideal(liu):
    e = liu.identity_point()
    assert radical_coideal_check(liu, e, e).holds
    res = radical_coideal_check(liu, liu.point(liu.F.zeta(4)), liu.point(-1))
    assert res.hypothesis and res.holds


def test_corrupted_coproduct_breaks_coideal_check():
    fam = families.taft_ext(n=2)
    e = fam.identity_point()
    D = fam.delta_fiber(e, e)
    fib = D.source
    x = fib.alg.labels.index("x")
    images = [dict(img) for img in D.images]
    images[x][(0, 0)] = fam.F.one                       # x |-> ... + 1 (x) 1
    bad = DeltaMap(D.source, D.left, D.right, images)
    assert not radical_coideal_check(fam, e, e, delta=bad).holds
    with pytest.raises(HopfAxiomFailed):
        check_delta_homomorphism(bad)


def test_character_orbits():
    fam = families.taft_ext(n=3)
    e = fam.identity_point()
    chars = [tag(c, e) for c in characters(fam.specialize(e).alg)]
    assert len(chars) == 3
    info = character_action_orbit(fam, e, chars[0])
    assert info.orbit_size == 3 and info.stabilizer_order == 1 and info.maximally_stable
    liu = families.liu(n=2, w=3)
    V = fiber_simples(liu, liu.point(-1))[0]
    info = character_action_orbit(liu, liu.point(-1), V)
    assert info.stabilizer_order <= 2 and not info.maximally_stable


def test_has_character(liu, afam):
    assert has_character(liu.specialize(liu.identity_point()))
    assert not has_character(liu.specialize(liu.point(-1)))
    F = afam.F
    for b in (F.one, F.zeta(2), -F.one, F.zeta(6)):
        assert has_character(afam.specialize(afam.point(0, b)))


def test_finite_quotient_over_subgroup(liu):
    F = liu.F
    pts = [liu.point(F.zeta(k)) for k in (0, 4, 8)]
    Q = finite_hopf_from_points(liu, pts)
    assert Q.specialize(Q.identity_point()).dim == 12
    assert check_antipode_axiom(Q)


def test_non_chevalley_fixture_is_a_hopf_algebra():
    fam = families.non_chevalley_fixture()
    e = fam.identity_point()
    A = fam.specialize(e).alg
    assert A.dim == 8
    assert sorted(M.dim for M in simple_modules(A)) == [1, 1, 2]
    assert check_antipode_axiom(fam)
    assert check_counit_axioms(fam, e)
    assert check_coassociativity(fam, e, e, e)
    assert check_delta_homomorphism(fam.delta_fiber(e, e))
