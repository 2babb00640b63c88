import numpy as np
import pytest
from hypothesis import given, strategies as st

from hopfdisc import families
from hopfdisc.algebra import (AlgMod, BadModule, NotAssociative, NotSplit, algebra_from_json,
                              center, central_primitive_idempotents, character_values,
                              characters, direct_product, group_algebra, is_semisimple_module,
                              is_split_semisimple, make_algebra, matrix_algebra, min_poly,
                              radical, regular_module, regular_trace, semisimple_quotient,
                              simple_modules, split)
from hopfdisc.arith import field
from hopfdisc.linalg import Mat
from oracles import gram_rank as numeric_gram_rank, wedderburn_dims

Q = field(1)


def kx2(F=Q):
    """k[x]/(x^2)."""
    return make_algebra(F, 2, ["1", "x"], [(0, 0, [(0, 1)]), (0, 1, [(1, 1)]),
                                          (1, 0, [(1, 1)])], [1, 0])


def kc2(F=Q):
    return group_algebra(F, [0, 1], lambda a, b: (a + b) % 2, ["1", "g"])


def taft4():
    fam = families.taft_ext(n=2)
    return fam.specialize(fam.identity_point()).alg


def gaussian_rationals():
    """Q(i) as a 2-dimensional algebra over Q."""
    return make_algebra(Q, 2, ["1", "i"], [(0, 0, [(0, 1)]), (0, 1, [(1, 1)]),
                                          (1, 0, [(1, 1)]), (1, 1, [(0, -1)])], [1, 0])


# -- construction -------------------------------------------------------------

def test_one_dimensional_algebra():
    A = make_algebra(Q, 1, ["1"], [(0, 0, [(0, 1)])], [1])
    assert A.dim == 1 and A.sd() == 1


def test_non_associative_table_is_rejected():
    # b1 b1 = b2 but b2 b1 = 0 and b1 b2 = b1: (b1 b1) b1 = 0 != b1 (b1 b1) = b1
    with pytest.raises(NotAssociative):
        make_algebra(Q, 3, ["1", "a", "b"],
                     [(0, 0, [(0, 1)]), (0, 1, [(1, 1)]), (1, 0, [(1, 1)]),
                      (0, 2, [(2, 1)]), (2, 0, [(2, 1)]),
                      (1, 1, [(2, 1)]), (1, 2, [(1, 1)])], [1, 0, 0])


def test_json_round_trip():
    A = taft4()
    B = algebra_from_json(A.to_json())
    assert B.table == A.table and B.unit == A.unit and B.F is A.F


# -- multiplication matrices and traces ---------------------------------------------

def test_left_mult_of_unit_is_identity():
    A = taft4()
    assert A.left_mult_matrix(A.unit) == Mat.identity(A.F, 4)


def test_left_mult_of_group_element_permutes():
    A = kc2()
    assert A.left_mult_matrix(A.basis_vector(1)) == Mat.from_values(Q, [[0, 1], [1, 0]])


def test_taft_g_has_zero_diagonal():
    A = taft4()
    g = A.labels.index("g")
    L = A.left_mult_matrix(A.basis_vector(g))
    assert all(not L[i, i] for i in range(4))
    assert regular_trace(A, A.basis_vector(g)) == A.F.zero


def test_regular_trace_values():
    A = matrix_algebra(Q, 2)
    assert A.trace(A.unit) == Q.rational(4)
    assert A.trace(A.basis_vector(0)) == Q.rational(2)       # tr_reg(e11) = 2 tr(e11)


def test_gram_matrices():
    assert kc2().gram().gram == Mat.from_values(Q, [[2, 0], [0, 2]])
    assert kc2().gram().rank == 2
    assert taft4().gram().rank == 2
    A = make_algebra(Q, 1, ["1"], [(0, 0, [(0, 1)])], [1])
    assert A.gram().gram == Mat.from_values(Q, [[1]])


# -- radical and square dimension -----------------------------------------------------

def test_radicals():
    assert radical(matrix_algebra(Q, 2)).dim == 0
    R = radical(kx2())
    assert R.dim == 1 and R.contains([Q.zero, Q.one])
    T = taft4()
    J = radical(T)
    x, xg = T.labels.index("x"), T.labels.index("x*g")
    assert J.dim == 2
    assert J.contains(T.basis_vector(x)) and J.contains(T.basis_vector(xg))


def test_square_dimensions():
    assert matrix_algebra(Q, 2).sd() == 4
    assert taft4().sd() == 2
    liu = families.liu(n=2, w=3)
    assert liu.specialize(liu.point(-1)).sd() == 4


def test_semisimple_quotient():
    assert semisimple_quotient(matrix_algebra(Q, 2)).alg.dim == 4
    assert semisimple_quotient(kx2()).alg.dim == 1
    Tbar = semisimple_quotient(taft4()).alg
    assert Tbar.dim == 2 and Tbar.radical().dim == 0
    assert center(Tbar).dim == 2


# -- idempotents and simples ------------------------------------------------------

def test_central_idempotents():
    A = direct_product(make_algebra(Q, 1, ["a"], [(0, 0, [(0, 1)])], [1]),
                       make_algebra(Q, 1, ["b"], [(0, 0, [(0, 1)])], [1]))
    es = central_primitive_idempotents(A)
    assert {tuple(e) for e in es} == {(Q.zero, Q.one), (Q.one, Q.zero)}
    M = matrix_algebra(Q, 2)
    assert central_primitive_idempotents(M) == [M.unit]


def test_liu_cube_root_fiber_has_two_idempotents():
    liu = families.liu(n=2, w=3)
    A = liu.specialize(liu.point(liu.F.zeta(4))).alg
    S = split(A)
    assert len(S.idempotents) == 2
    for e in S.idempotents:
        assert S.quotient.alg.mul(e, e) == e


def test_simple_modules():
    dims = [M.dim for M in simple_modules(matrix_algebra(Q, 2))]
    assert dims == [2]
    assert sorted(M.dim for M in simple_modules(taft4())) == [1, 1]
    liu = families.liu(n=2, w=3)
    mods = simple_modules(liu.specialize(liu.point(-1)).alg)
    assert [M.dim for M in mods] == [2]
    assert mods[0].is_absolutely_irreducible()


def hamilton(F):
    """Quaternions i^2 = j^2 = -1, ij = -ji = k on the basis 1, i, j, k."""
    sign = {(1, 1): (0, -1), (2, 2): (0, -1), (3, 3): (0, -1), (1, 2): (3, 1), (2, 1): (3, -1),
            (2, 3): (1, 1), (3, 2): (1, -1), (3, 1): (2, 1), (1, 3): (2, -1)}
    sc = [(0, a, [(a, 1)]) for a in range(4)] + [(a, 0, [(a, 1)]) for a in range(1, 4)]
    sc += [(a, b, [v]) for (a, b), v in sign.items()]
    return make_algebra(F, 4, ["1", "i", "j", "k"], sc, [1, 0, 0, 0])


def test_division_algebra_does_not_split():
    with pytest.raises(NotSplit):
        simple_modules(hamilton(Q))
    assert [M.dim for M in simple_modules(hamilton(field(4)))] == [2]
    assert hamilton(Q).sd() == 4


def test_characters():
    chars = characters(taft4())
    vals = sorted(str(character_values(c)) for c in chars)
    assert len(chars) == 2
    T = taft4()
    g = T.labels.index("g")
    assert sorted(str(c.rho(T.basis_vector(g)).data[0][0]) for c in chars) == ["-1", "1"]
    assert all(c.rho(T.basis_vector(T.labels.index("x"))).is_zero() for c in chars)
    assert vals
    assert characters(matrix_algebra(Q, 2)) == []
    assert len(characters(kc2())) == 2


def test_semisimple_modules():
    M2 = matrix_algebra(Q, 2)
    assert is_semisimple_module(M2, regular_module(M2))
    assert not is_semisimple_module(kx2(), regular_module(kx2()))
    assert not is_semisimple_module(taft4(), regular_module(taft4()))


def test_split_semisimple():
    k2 = direct_product(make_algebra(Q, 1, ["a"], [(0, 0, [(0, 1)])], [1]),
                        make_algebra(Q, 1, ["b"], [(0, 0, [(0, 1)])], [1]))
    assert is_split_semisimple(k2)
    assert not is_split_semisimple(gaussian_rationals())
    assert is_split_semisimple(matrix_algebra(field(3), 2))


def test_bad_module_rejected():
    A = kx2()
    # x acting as the identity contradicts x^2 = 0
    with pytest.raises(BadModule):
        AlgMod(A, 1, [Mat.from_values(Q, [[1]]), Mat.from_values(Q, [[1]])])


def test_min_poly():
    A = kx2()
    assert min_poly(A, A.basis_vector(1)) == [Q.zero, Q.zero, Q.one]
    B = kc2()
    assert min_poly(B, B.basis_vector(1)) == [-Q.one, Q.zero, Q.one]


# -- properties ---------------------------------------------------------------------

FIBERS = [("taft_ext", {"n": 2}, None), ("taft_ext", {"n": 3}, None),
          ("liu", {"n": 2, "w": 3}, None), ("a_family", {"l": 2, "n": 1, "xi": -1}, 8),
          ("qborel_sl2", {"l": 3}, None), ("group_ext", {"group": "D8"}, None),
          ("group_ext", {"group": "Q8"}, None), ("infinite_taft", {"n": 2, "t": 1}, None)]


@st.composite
def fiber_algebras(draw):
    name, params, cond = draw(st.sampled_from(FIBERS))
    fam = families.build(name, params, conductor=cond)
    pts = fam.default_points(60)
    p = draw(st.sampled_from(pts))
    return fam.specialize(p).alg


@given(fiber_algebras())
def test_radical_is_nilpotent_two_sided_ideal(A):
    J = A.radical()
    for r in J.basis:
        for i in range(A.dim):
            b = A.basis_vector(i)
            assert J.contains(A.mul(b, r)) and J.contains(A.mul(r, b))
        assert not any(A.power(r, A.dim))


@given(fiber_algebras())
def test_gram_rank_matches_numeric_oracle(A):
    assert A.gram().rank == numeric_gram_rank(A)


@given(fiber_algebras())
def test_sd_equals_sum_of_squares_of_simples(A):
    S = split(A)
    if not S.unsplit:
        assert sum(M.dim ** 2 for M in S.modules) == A.sd()
        assert sorted(M.dim for M in S.modules) == wedderburn_dims(S.quotient.alg)


@given(fiber_algebras())
def test_simple_modules_are_absolutely_irreducible(A):
    for M in split(A).modules:
        assert M.is_absolutely_irreducible()
        for v in [[A.F.one if i == j else A.F.zero for i in range(M.dim)] for j in range(M.dim)]:
            assert M.spin(v).dim == M.dim


def test_wedderburn_oracle_on_known_algebras():
    assert wedderburn_dims(matrix_algebra(Q, 2)) == [2]
    assert wedderburn_dims(direct_product(matrix_algebra(Q, 2), kc2())) == [1, 1, 2]
    np.testing.assert_equal(wedderburn_dims(kc2()), [1, 1])
