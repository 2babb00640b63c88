"""Built-in Hopf families.

Every constructor returns a validated family: the identity fiber is built
and checked for associativity at construction. Scalars such as the root of
unity xi are chosen as xi = zeta_n^j inside Q(zeta_N) with n | N.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from math import gcd

from .arith import field
from .hopf import (CentralGen, Expr, FiberAlgebra, Gen, HopfError, InvalidPoint,
                   PresentedFamily, QCommFamily, finite_family_from_json, qcomm_algebra)


class BadParameters(HopfError):
    pass


class ExperimentalDisabled(HopfError):
    pass


def _lcm(*ns):
    out = 1
    for n in ns:
        out = out * n // gcd(out, n)
    return out


def _field_for(name, minimal, conductor):
    N = conductor or minimal
    if N % minimal:
        raise BadParameters(f"{name}: conductor {N} must be a multiple of {minimal}")
    return field(N)


def _root(F, n, j=1):
    """zeta_n^j in Q(zeta_N)."""
    if gcd(j, n) != 1:
        raise BadParameters(f"xi = zeta_{n}^{j} is not primitive")
    return F.zeta((F.n // n) * j)


def _const(names, c):
    return Expr.const(names, c)


# -- families with exact q-commutation --------------------------------------

def taft_ext(n: int = 2, xi: int = 1, conductor: int | None = None) -> QCommFamily:
    """x, g^{+-1} with x^n = 0, xg = eps gx; C = k[g^{+-n}]."""
    if n < 2:
        raise BadParameters("taft_ext: need n >= 2")
    F = _field_for("taft_ext", n, conductor or _lcm(n, 4))
    eps = _root(F, n, xi)
    cn = ("G",)
    return QCommFamily(
        "taft_ext", F,
        [Gen("x", False, n), Gen("g", True, n)],
        {("x", "g"): _const(cn, eps.inverse())},
        {"x": "0", "g": "G"},
        [CentralGen("G", True, f"g^{n}")],
        gen_delta={"g": [(1, (("g", 1),), (("g", 1),))],
                   "x": [(1, (("x", 1),), (("g", 1),)), (1, (), (("x", 1),))]},
        gen_counit={"g": 1, "x": 0},
        gen_antipode={"g": [(1, (("g", -1),))], "x": [(-1, (("x", 1), ("g", -1)))]},
        central_delta={"G": [(1, (1,), (1,))]},
        central_counit={"G": 1},
        central_antipode={"G": "G^-1"},
        params={"n": n, "xi": xi},
        description="x, g^{+-1}; x^n = 0, xg = eps gx; C = k[g^{+-n}]")


def a_family(l: int = 2, n: int = 1, xi: int = 1, conductor: int | None = None) -> QCommFamily:
    """x^{+-1}, y with xy = xi yx, D(y) = y(x)1 + x^n(x)y; C = k[y^l, x^{+-l}]."""
    if l < 2:
        raise BadParameters("a_family: need l >= 2")
    if n < 1 or gcd(n, l) != 1:
        raise BadParameters("a_family: n must be a positive integer coprime to l")
    F = _field_for("a_family", l, conductor or _lcm(l, 4))
    x = _root(F, l, xi)
    cn = ("Y", "X")
    return QCommFamily(
        "a_family", F,
        [Gen("x", True, l), Gen("y", False, l)],
        {("x", "y"): _const(cn, x.inverse())},
        {"x": "X", "y": "Y"},
        [CentralGen("Y", False, f"y^{l}"), CentralGen("X", True, f"x^{l}")],
        gen_delta={"x": [(1, (("x", 1),), (("x", 1),))],
                   "y": [(1, (("y", 1),), ()), (1, (("x", n),), (("y", 1),))]},
        gen_counit={"x": 1, "y": 0},
        gen_antipode={"x": [(1, (("x", -1),))], "y": [(-1, (("x", -n), ("y", 1)))]},
        central_delta={"Y": [(1, (1, 0), (0, 0)), (1, (0, n), (1, 0))],
                       "X": [(1, (0, 1), (0, 1))]},
        central_counit={"Y": 0, "X": 1},
        central_antipode={"Y": f"-X^{-n}*Y", "X": "X^-1"},
        params={"l": l, "n": n, "xi": xi},
        description="x^{+-1}, y; xy = xi yx; C = k[y^l, x^{+-l}]")


def liu(n: int = 2, w: int = 3, xi: int = 1, conductor: int | None = None) -> QCommFamily:
    """Generalized Liu algebra: yg = xi gy, y^n = 1 - x^w, g^n = x^w; C = k[x^{+-1}]."""
    if n < 2 or w < 1:
        raise BadParameters("liu: need n >= 2 and w >= 1")
    F = _field_for("liu", n, conductor or _lcm(n, w, 4))
    x = _root(F, n, xi)
    cn = ("x",)
    return QCommFamily(
        "liu", F,
        [Gen("y", False, n), Gen("g", True, n)],
        {("y", "g"): _const(cn, x.inverse())},
        {"y": f"1 - x^{w}", "g": f"x^{w}"},
        [CentralGen("x", True, "x")],
        gen_delta={"g": [(1, (("g", 1),), (("g", 1),))],
                   "y": [(1, (("y", 1),), (("g", 1),)), (1, (), (("y", 1),))]},
        gen_counit={"g": 1, "y": 0},
        gen_antipode={"g": [(1, (("g", -1),))], "y": [(-1, (("y", 1), ("g", -1)))]},
        central_delta={"x": [(1, (1,), (1,))]},
        central_counit={"x": 1},
        central_antipode={"x": "x^-1"},
        params={"n": n, "w": w, "xi": xi},
        description="y, g, x^{+-1}; yg = xi gy, y^n = 1 - x^w = 1 - g^n; C = k[x^{+-1}]")


def infinite_taft(n: int = 2, t: int = 1, xi: int = 1, conductor: int | None = None) -> QCommFamily:
    """x, g with g^n = 1, xg = xi gx, D(x) = x(x)g^t + 1(x)x; C = k[x^n]."""
    if n < 2 or not (1 <= t <= n) or gcd(n, t) != 1:
        raise BadParameters("infinite_taft: need n >= 2, 1 <= t <= n and gcd(n, t) = 1")
    F = _field_for("infinite_taft", n, conductor or _lcm(n, 4))
    x = _root(F, n, xi)
    cn = ("X",)
    return QCommFamily(
        "infinite_taft", F,
        [Gen("x", False, n), Gen("g", True, n)],
        {("x", "g"): _const(cn, x.inverse())},
        {"x": "X", "g": "1"},
        [CentralGen("X", False, f"x^{n}")],
        gen_delta={"g": [(1, (("g", 1),), (("g", 1),))],
                   "x": [(1, (("x", 1),), (("g", t),)), (1, (), (("x", 1),))]},
        gen_counit={"g": 1, "x": 0},
        gen_antipode={"g": [(1, (("g", -1),))], "x": [(-1, (("x", 1), ("g", -t)))]},
        central_delta={"X": [(1, (1,), (0,)), (1, (0,), (1,))]},
        central_counit={"X": 0},
        central_antipode={"X": "-X"},
        params={"n": n, "t": t, "xi": xi},
        description="x, g; g^n = 1, xg = xi gx; C = k[x^n]")


def qborel_sl2(l: int = 3, eps: int = 1, conductor: int | None = None) -> QCommFamily:
    """Rank-one quantized Borel: K^{+-1}, E with KE = eps^2 EK; C = k[E^l, K^{+-l}]."""
    if l < 3 or l % 2 == 0:
        raise BadParameters("qborel_sl2: l must be odd and >= 3")
    F = _field_for("qborel_sl2", l, conductor or 3 * l)
    e = _root(F, l, eps)
    cn = ("El", "Kl")
    return QCommFamily(
        "qborel_sl2", F,
        [Gen("E", False, l), Gen("K", True, l)],
        {("E", "K"): _const(cn, e * e)},
        {"E": "El", "K": "Kl"},
        [CentralGen("El", False, f"E^{l}"), CentralGen("Kl", True, f"K^{l}")],
        gen_delta={"K": [(1, (("K", 1),), (("K", 1),))],
                   "E": [(1, (("E", 1),), ()), (1, (("K", 1),), (("E", 1),))]},
        gen_counit={"K": 1, "E": 0},
        gen_antipode={"K": [(1, (("K", -1),))], "E": [(-1, (("K", -1), ("E", 1)))]},
        central_delta={"El": [(1, (1, 0), (0, 0)), (1, (0, 1), (1, 0))],
                       "Kl": [(1, (0, 1), (0, 1))]},
        central_counit={"El": 0, "Kl": 1},
        central_antipode={"El": "-Kl^-1*El", "Kl": "Kl^-1"},
        params={"l": l, "eps": eps},
        description="K^{+-1}, E; KE = eps^2 EK; C = k[E^l, K^{+-l}]")


def group_ext(group: str = "D8", conductor: int | None = None) -> QCommFamily:
    """kG over kN for N the center (order 2) of D8 or Q8, c = r^2."""
    group = group.upper()
    if group not in ("D8", "Q8"):
        raise BadParameters("group_ext: group must be D8 or Q8")
    F = _field_for("group_ext", 4, conductor or 4)
    cn = ("c",)
    return QCommFamily(
        "group_ext", F,
        [Gen("r", True, 2), Gen("s", True, 2)],
        {("r", "s"): "c"},
        {"r": "c", "s": "1" if group == "D8" else "c"},
        [CentralGen("c", True, "r^2")],
        gen_delta={"r": [(1, (("r", 1),), (("r", 1),))], "s": [(1, (("s", 1),), (("s", 1),))]},
        gen_counit={"r": 1, "s": 1},
        gen_antipode={"r": [(1, (("r", -1),))], "s": [(1, (("s", -1),))]},
        central_relations=["c^2 - 1"],
        central_delta={"c": [(1, (1,), (1,))]},
        central_counit={"c": 1},
        central_antipode={"c": "c^-1"},
        params={"group": group},
        description=f"k{group} over its center k<c>, c = r^2, sr = c rs")


# -- quantized coordinate ring of SL2 (chart engine) ---------------------------

class OepsSL2Family(PresentedFamily):
    """O_eps(SL2) over C = k[a^r, b^r, c^r, d^r] with relation AD - BC = 1.

    Fibers use the q-commuting chart on (a, b, c) with a a unit when
    A != 0, where d = a^{-1}(1 + eps bc); and the chart on (d, b, c) when
    A = 0 and D != 0, where a = d^{-1}(1 + eps^{-1} bc). Points with
    A = D = 0 are not supported.
    """

    engine = "oeps_sl2"

    def __init__(self, r, F, eps):
        self.r = r
        self.eps = eps
        cn = ("A", "B", "C", "D")
        w = lambda s: ((s, 1),)
        super().__init__(
            "oeps_sl2", F,
            [CentralGen("A", False, f"a^{r}"), CentralGen("B", False, f"b^{r}"),
             CentralGen("C", False, f"c^{r}"), CentralGen("D", False, f"d^{r}")],
            gen_delta={"a": [(1, w("a"), w("a")), (1, w("b"), w("c"))],
                       "b": [(1, w("a"), w("b")), (1, w("b"), w("d"))],
                       "c": [(1, w("c"), w("a")), (1, w("d"), w("c"))],
                       "d": [(1, w("c"), w("b")), (1, w("d"), w("d"))]},
            gen_counit={"a": 1, "b": 0, "c": 0, "d": 1},
            gen_antipode={"a": [(1, w("d"))], "d": [(1, w("a"))],
                          "b": [(-eps.inverse(), w("b"))], "c": [(-eps, w("c"))]},
            central_relations=["A*D - B*C - 1"],
            central_delta={"A": [(1, (1, 0, 0, 0), (1, 0, 0, 0)), (1, (0, 1, 0, 0), (0, 0, 1, 0))],
                           "B": [(1, (1, 0, 0, 0), (0, 1, 0, 0)), (1, (0, 1, 0, 0), (0, 0, 0, 1))],
                           "C": [(1, (0, 0, 1, 0), (1, 0, 0, 0)), (1, (0, 0, 0, 1), (0, 0, 1, 0))],
                           "D": [(1, (0, 0, 1, 0), (0, 1, 0, 0)), (1, (0, 0, 0, 1), (0, 0, 0, 1))]},
            central_counit={"A": 1, "B": 0, "C": 0, "D": 1},
            central_antipode={"A": "D", "B": "-B", "C": "-C", "D": "A"},
            ch_degree=r ** 3, params={"r": r}, experimental=True,
            trace="hattori_stallings_free",
            description="a, b, c, d; ab = eps ba, ac = eps ca, bc = cb, bd = eps db, "
                        "cd = eps dc, ad - eps bc = 1")
        self.specialize(self.identity_point())

    def supports(self, p) -> bool:
        return bool(p["A"]) or bool(p["D"])

    def _build_fiber(self, p):
        F = self.F
        r, eps = self.r, self.eps
        A, B, C, D = p.values
        if A:
            names, pv = ["a", "b", "c"], [A, B, C]
            qv = {(0, 1): eps.inverse(), (0, 2): eps.inverse()}
            other, k = "d", eps
        elif D:
            names, pv = ["d", "b", "c"], [D, B, C]
            qv = {(0, 1): eps, (0, 2): eps}
            other, k = "a", eps.inverse()
        else:
            raise InvalidPoint(f"oeps_sl2: points with A = D = 0 are not supported ({p})")
        alg, letters, words = qcomm_algebra(F, names, [r, r, r], pv, qv)
        fib = FiberAlgebra(self, p, alg, letters, words)
        u = fib.letter_power(names[0], -1)
        bc = alg.mul(letters["b"], letters["c"])
        letters[other] = alg.mul(u, [x + k * y for x, y in zip(alg.unit, bc)])
        expect = D if A else A
        if alg.power(letters[other], r) != [expect * x for x in alg.unit]:
            raise HopfError(f"oeps_sl2: {other}^{r} does not match the point {p}")
        return fib

    def to_toml_dict(self) -> dict:
        return {"name": self.name, "engine": self.engine, "conductor": self.F.n,
                "ch_degree": self.ch_degree, "experimental": True,
                "description": self.description, "params": {"r": self.r},
                "trace": {"kind": self.trace},
                "central": [{"name": c.name, "invertible": c.invertible, "monomial": c.monomial}
                            for c in self.central],
                "central_relations": ["A*D - B*C - 1"]}


def oeps_sl2(r: int = 3, eps: int = 1, conductor: int | None = None,
             enable_experimental: bool = False) -> OepsSL2Family:
    if not enable_experimental:
        raise ExperimentalDisabled("oeps_sl2 is experimental; pass enable_experimental=True "
                                   "(CLI: --enable-experimental)")
    if r < 3 or r % 2 == 0:
        raise BadParameters("oeps_sl2: r must be odd and >= 3")
    F = _field_for("oeps_sl2", r, conductor or r)
    return OepsSL2Family(r, F, _root(F, r, eps))


# -- registry -------------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    name: str
    builder: object
    params: tuple
    experimental: bool = False
    summary: str = ""


REGISTRY = {
    "taft_ext": FamilySpec("taft_ext", taft_ext, ("n", "xi"), summary="x, g^{+-1}; x^n = 0"),
    "a_family": FamilySpec("a_family", a_family, ("l", "n", "xi"),
                           summary="x^{+-1}, y; xy = xi yx"),
    "liu": FamilySpec("liu", liu, ("n", "w", "xi"), summary="generalized Liu algebra"),
    "infinite_taft": FamilySpec("infinite_taft", infinite_taft, ("n", "t", "xi"),
                                summary="infinite Taft algebra"),
    "qborel_sl2": FamilySpec("qborel_sl2", qborel_sl2, ("l", "eps"),
                             summary="rank-one quantized Borel at a root of unity"),
    "group_ext": FamilySpec("group_ext", group_ext, ("group",),
                            summary="group algebra over a central subgroup"),
    "oeps_sl2": FamilySpec("oeps_sl2", oeps_sl2, ("r", "eps"), experimental=True,
                           summary="quantized coordinate ring of SL2"),
}


def build(name: str, params=None, conductor=None, enable_experimental=False):
    """Construct a built-in family from a parameter mapping."""
    if name not in REGISTRY:
        raise BadParameters(f"unknown family {name!r}; known: {', '.join(REGISTRY)}")
    spec = REGISTRY[name]
    params = dict(params or {})
    unknown = set(params) - set(spec.params)
    if unknown:
        raise BadParameters(f"{name}: unknown parameters {sorted(unknown)}")
    kw = {k: (v if k == "group" else int(v)) for k, v in params.items()}
    if conductor:
        kw["conductor"] = int(conductor)
    if spec.experimental:
        kw["enable_experimental"] = enable_experimental
    fam = spec.builder(**kw)
    fam.recipe = (name, params, fam.F.n)
    return fam


def parse_params(text: str | None) -> dict:
    """``"n=2,w=3"`` -> {"n": "2", "w": "3"}."""
    out = {}
    if not text:
        return out
    for item in text.split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise BadParameters(f"parameter {item!r} is not of the form key=value")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def non_chevalley_fixture():
    """8-dimensional Hopf algebra with C = k whose identity fiber lacks the
    Chevalley property (see data/non_chevalley_8.json)."""
    text = resources.files("hopfdisc").joinpath("data/non_chevalley_8.json").read_text()
    return finite_family_from_json(json.loads(text))


def liu_quotient_points(fam):
    """The two points x = +-1 of liu(n, w): a subgroup of maxSpec C."""
    return [fam.point(1), fam.point(-1)]
