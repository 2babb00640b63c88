import pytest
import tomli_w

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from hopfdisc import families
from hopfdisc.algebra import characters, simple_modules
from hopfdisc.discriminant import cayley_hamilton_check
from hopfdisc.hopf import family_from_toml_dict

BUILTINS = {
    "taft_ext": {"n": 2},
    "a_family": {"l": 2, "n": 1, "xi": -1},
    "liu": {"n": 2, "w": 3},
    "infinite_taft": {"n": 2, "t": 1},
    "qborel_sl2": {"l": 3},
    "group_ext": {"group": "D8"},
}

CH_DEGREES = {"taft_ext": 4, "a_family": 4, "liu": 4, "infinite_taft": 4, "qborel_sl2": 9,
              "group_ext": 4}


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_ch_degree(name):
    fam = families.build(name, BUILTINS[name])
    assert fam.ch_degree == CH_DEGREES[name]
    assert fam.specialize(fam.identity_point()).dim == fam.ch_degree


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_cayley_hamilton_at_five_points(name):
    fam = families.build(name, BUILTINS[name])
    for p in fam.default_points(5):
        assert cayley_hamilton_check(fam.specialize(p).alg, fam.ch_degree, trials=5).passed


def test_liu_conductor_12():
    fam = families.build("liu", {"n": "2", "w": "3"}, conductor=12)
    assert fam.F.n == 12 and fam.ch_degree == 4


@pytest.mark.parametrize("name,params", [
    ("infinite_taft", {"n": 2, "t": 3}),          # t <= n violated
    ("infinite_taft", {"n": 4, "t": 2}),          # gcd(n, t) = 1 violated
    ("a_family", {"l": 2, "n": 2}),               # n coprime to l violated
    ("liu", {"n": 1, "w": 3}),                    # n >= 2 violated
    ("taft_ext", {"n": 1}),
    ("group_ext", {"group": "S3"}),
])
def test_parameter_constraints(name, params):
    with pytest.raises(families.BadParameters):
        families.build(name, params)


def test_unknown_family_and_parameter():
    with pytest.raises(families.BadParameters):
        families.build("nope")
    with pytest.raises(families.BadParameters):
        families.build("liu", {"q": 2})
    with pytest.raises(families.BadParameters):
        families.parse_params("n2")


def test_conductor_must_contain_required_roots():
    with pytest.raises(families.BadParameters):
        families.build("liu", {"n": 2, "w": 3}, conductor=3)


def test_experimental_gate():
    with pytest.raises(families.ExperimentalDisabled):
        families.build("oeps_sl2", {"r": 3})
    fam = families.build("oeps_sl2", {"r": 3}, enable_experimental=True)
    assert fam.ch_degree == 27 and fam.experimental


def test_group_ext_identity_fiber_is_group_algebra_of_quotient():
    fam = families.build("group_ext", {"group": "D8"})
    A = fam.specialize(fam.identity_point()).alg
    # D8 / Z(D8) is the Klein four-group: four characters, semisimple
    assert A.radical().dim == 0
    assert len(characters(A)) == 4
    Q8 = families.build("group_ext", {"group": "Q8"})
    assert len(characters(Q8.specialize(Q8.identity_point()).alg)) == 4


def test_identity_fibers():
    assert families.build("qborel_sl2", {"l": 3}).specialize(
        families.build("qborel_sl2", {"l": 3}).identity_point()).sd() == 3
    fam = families.build("a_family", {"l": 3, "n": 1}, conductor=12)
    A = fam.specialize(fam.identity_point()).alg
    assert A.dim == 9 and sorted(M.dim for M in simple_modules(A)) == [1, 1, 1]


@pytest.mark.parametrize("name", sorted(BUILTINS) + ["oeps_sl2"])
def test_toml_round_trip(name, tmp_path):
    fam = families.build(name, BUILTINS.get(name, {"r": 3}), enable_experimental=True)
    path = tmp_path / "fam.toml"
    path.write_text(tomli_w.dumps(fam.to_toml_dict()))
    with path.open("rb") as fh:
        again = family_from_toml_dict(tomllib.load(fh))
    assert again.cnames == fam.cnames and again.ch_degree == fam.ch_degree
    for p in fam.default_points(4):
        q = again.point(p.as_dict())
        assert again.specialize(q).alg.table == fam.specialize(p).alg.table
        assert again.convolve(q, q).values == fam.convolve(p, p).values


def test_registry_describes_every_family():
    for name, spec in families.REGISTRY.items():
        assert spec.name == name and spec.summary


def test_non_chevalley_fixture_loads():
    fam = families.non_chevalley_fixture()
    assert fam.specialize(fam.identity_point()).dim == 8
