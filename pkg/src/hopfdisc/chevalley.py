"""Tensor-reducibility, the Chevalley property and subgroup rigidity on samples.

Every "for all irreducible modules" quantifier is discharged over a finite
sample of points of maxSpec C. Semisimplicity of a tensor product is decided
by the radical of the target fiber acting as zero, never by decomposing.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import DEFAULT_SEED, AlgMod, NotSplit, is_semisimple_module, split
from .discriminant import SCHEMA_VERSION, InvariantViolation
from .hopf import (HopfError, character_action_orbit, dual_module, finite_hopf_from_points,
                   radical_coideal_check, tensor_module)
from .linalg import Subspace


class HypothesisFailed(Exception):
    """The identity fiber does not have the Chevalley property."""


def _pt(p):
    return p.to_json() if hasattr(p, "to_json") else str(p)


def _module_id(V: AlgMod):
    return {"point": _pt(V.info.get("point")), "index": V.info.get("index"), "dim": V.dim}


class SimpleCache:
    """Simples of each fiber, computed once per point. Unsplit blocks become notices."""

    def __init__(self, family, seed=DEFAULT_SEED):
        self.family = family
        self.seed = seed
        self._mods = {}
        self.notices = []

    def __call__(self, p):
        if p not in self._mods:
            fib = self.family.specialize(p)
            S = split(fib.alg, self.seed)
            mods = []
            for k, M in enumerate(S.modules):
                M.info["point"] = p
                M.info["index"] = k
                mods.append(M)
            if S.unsplit:
                self.notices.append({"point": _pt(p), "notice": "fiber not split over the "
                                     "session field; unsplit blocks skipped"})
            self._mods[p] = mods
        return self._mods[p]


def _radical_image_dim(family, M: AlgMod) -> int:
    A = M.parent
    cols = []
    for r in A.radical().basis:
        R = M.rho(r)
        cols += [R.col(j) for j in range(R.cols)]
    return Subspace(family.F, M.dim, cols).dim if cols else 0


def _semisimple(family, M: AlgMod) -> bool:
    return is_semisimple_module(M.parent, M)


# -- tensor reducibility ------------------------------------------------------------

@dataclass
class TensorVerdict:
    module: dict
    left_tr: bool | None
    right_tr: bool | None
    in_lowest: bool
    dual_ss: bool
    maximally_stable: bool | None = None
    witness: dict | None = None

    def flags(self):
        out = {"in_lowest": self.in_lowest, "dual_ss": self.dual_ss}
        if self.left_tr is not None:
            out["left_tr"] = self.left_tr
        if self.right_tr is not None:
            out["right_tr"] = self.right_tr
        return out

    @property
    def consistent(self) -> bool:
        return len(set(self.flags().values())) == 1

    @property
    def tensor_reducible(self) -> bool:
        return all(x is not False for x in (self.left_tr, self.right_tr))

    def to_json(self):
        return {"module": self.module, "left_tr": self.left_tr, "right_tr": self.right_tr,
                "in_lowest": self.in_lowest, "dual_ss": self.dual_ss,
                "maximally_stable": self.maximally_stable, "witness": self.witness,
                "consistent": self.consistent}


def tensor_reducible(family, V: AlgMod, test_points, side="both", simples=None,
                     stability=True, seed=DEFAULT_SEED) -> TensorVerdict:
    if side not in ("left", "right", "both"):
        raise ValueError("side must be left, right or both")
    simples = simples or SimpleCache(family, seed)
    p = V.info["point"]
    sd_e = family.specialize(family.identity_point()).sd()
    left = True if side in ("left", "both") else None
    right = True if side in ("right", "both") else None
    witness = None
    for q in test_points:
        for W in simples(q):
            for s in ("left", "right"):
                if (s == "left" and left is not True) or (s == "right" and right is not True):
                    continue
                M = tensor_module(family, V, W, check=False) if s == "left" else \
                    tensor_module(family, W, V, check=False)
                if not _semisimple(family, M):
                    if s == "left":
                        left = False
                    else:
                        right = False
                    if witness is None:
                        witness = {"side": s, "W": _module_id(W), "product_dim": M.dim,
                                   "radical_image_dim": _radical_image_dim(family, M),
                                   "target": _pt(M.info["point"])}
            if left is not True and right is not True:
                break
    D = tensor_module(family, V, dual_module(family, V, "left", check=False), check=False)
    dual_ss = _semisimple(family, D)
    ms = None
    if stability:
        ms = character_action_orbit(family, p, V).maximally_stable
    return TensorVerdict(_module_id(V), left, right, family.specialize(p).sd() == sd_e,
                         dual_ss, ms, witness)


# -- Chevalley property of a single fiber -------------------------------------------

@dataclass
class FiberChevalley:
    holds: bool
    coideal: bool
    pairs_checked: int
    witness: dict | None = None

    def __bool__(self):
        return self.holds

    def to_json(self):
        return {"holds": self.holds, "coideal": self.coideal,
                "pairs_checked": self.pairs_checked, "witness": self.witness}


def chevalley_fiber_check(family, seed=DEFAULT_SEED) -> FiberChevalley:
    """Chevalley property of the identity fiber, by all pairs of simples and by
    the radical being a coideal. The two must agree."""
    e = family.identity_point()
    S = split(family.specialize(e).alg, seed)
    if S.unsplit:
        raise NotSplit("identity fiber is not split over the session field")
    mods = S.modules
    for k, M in enumerate(mods):
        M.info["point"] = e
        M.info["index"] = k
    holds, witness, n = True, None, 0
    for V in mods:
        for W in mods:
            n += 1
            M = tensor_module(family, V, W, check=False)
            if not _semisimple(family, M):
                holds = False
                witness = {"V": _module_id(V), "W": _module_id(W),
                           "radical_image_dim": _radical_image_dim(family, M)}
                break
        if not holds:
            break
    coideal = radical_coideal_check(family, e, e).holds
    if coideal != holds:
        raise InvariantViolation("simple-pair and coideal Chevalley verdicts disagree")
    return FiberChevalley(holds, coideal, n, witness)


# -- six equivalences -------------------------------------------------------------------

@dataclass
class SixEquivReport:
    verdicts: list
    violations: list
    notices: list
    identity_basic: bool
    sample: list
    test_points: list = dc_field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.violations

    def to_json(self):
        return {"schema_version": SCHEMA_VERSION, "kind": "six-equiv",
                "consistent": self.consistent, "identity_basic": self.identity_basic,
                "sample": [_pt(p) for p in self.sample],
                "test_points": [_pt(p) for p in self.test_points],
                "verdicts": [v.to_json() for v in self.verdicts],
                "violations": self.violations, "notices": self.notices}


def verify_six_equivalences(family, points, seed=DEFAULT_SEED,
                            close_inverses=True) -> SixEquivReport:
    """Flag agreement for every simple over every sampled fiber.

    The duals of the sampled simples live over the inverse points, so by
    default the tensor test set is the sample together with those inverses.
    """
    points = list(points)
    tests = list(points)
    if close_inverses:
        for p in points:
            pi = family.inverse_point(p)
            if pi not in tests:
                tests.append(pi)
    fc = chevalley_fiber_check(family, seed)
    if not fc.holds:
        raise HypothesisFailed(f"identity fiber of {family.name} lacks the Chevalley property: "
                               f"{fc.witness}")
    simples = SimpleCache(family, seed)
    basic = all(M.dim == 1 for M in simples(family.identity_point()))
    verdicts, violations = [], []
    for p in points:
        for V in simples(p):
            tv = tensor_reducible(family, V, tests, "both", simples, seed=seed)
            verdicts.append(tv)
            fl = tv.flags()
            names = sorted(fl)
            for a in names:
                for b in names:
                    if a < b and fl[a] != fl[b]:
                        violations.append({"module": tv.module, "flags": [a, b],
                                           "values": [fl[a], fl[b]]})
            if tv.maximally_stable and not tv.tensor_reducible:
                violations.append({"module": tv.module,
                                   "flags": ["maximally_stable", "tensor_reducible"],
                                   "values": [True, False]})
            if basic and tv.maximally_stable is False and tv.tensor_reducible:
                violations.append({"module": tv.module,
                                   "flags": ["maximally_stable", "tensor_reducible"],
                                   "values": [False, True]})
    return SixEquivReport(verdicts, violations, simples.notices, basic, points, tests)


# -- family verdicts ----------------------------------------------------------------------

@dataclass
class ChevalleyVerdict:
    family: str
    identity_chevalley: bool
    sd_identity: int
    all_lowest: bool
    witness: dict | None
    sample_size: int
    qualifier: str = "certified on sample"

    @property
    def verdict(self) -> bool:
        return self.identity_chevalley and self.all_lowest

    def __bool__(self):
        return self.verdict

    def to_json(self):
        return {"schema_version": SCHEMA_VERSION, "kind": "chevalley", "family": self.family,
                "verdict": "chevalley" if self.verdict else "not-chevalley",
                "identity_chevalley": self.identity_chevalley,
                "sd_identity": self.sd_identity, "all_lowest": self.all_lowest,
                "witness": self.witness, "sample_size": self.sample_size,
                "qualifier": self.qualifier}


def chevalley_family_check(family, points, seed=DEFAULT_SEED) -> ChevalleyVerdict:
    points = list(points)
    fc = chevalley_fiber_check(family, seed)
    sd_e = family.specialize(family.identity_point()).sd()
    witness = None if fc.holds else {"reason": "identity fiber", **fc.witness}
    all_lowest = True
    for p in points:
        sd = family.specialize(p).sd()
        if sd == sd_e:
            continue
        all_lowest = False
        if witness is None:
            witness = {"reason": "sd differs from the identity fiber", "point": _pt(p),
                       "sd": sd, "sd_identity": sd_e}
            witness.update(_dual_witness(family, p, seed))
        break
    return ChevalleyVerdict(family.name, fc.holds, sd_e, all_lowest, witness, len(points))


def _dual_witness(family, p, seed):
    """A simple V at p with V (x) V* not semisimple, when one can be exhibited."""
    try:
        mods = SimpleCache(family, seed)(p)
    except (NotSplit, HopfError):
        return {}
    for V in mods:
        D = tensor_module(family, V, dual_module(family, V, "left", check=False), check=False)
        if not _semisimple(family, D):
            return {"module": _module_id(V), "dual_product_dim": D.dim,
                    "radical_image_dim": _radical_image_dim(family, D)}
    return {}


# -- subgroup rigidity ----------------------------------------------------------------------

@dataclass
class SubgroupReport:
    level: int
    points: list
    identity_in: bool
    closure_failures: list
    inverse_failures: list
    closed_in_sample: bool
    order: int | None = None
    cyclic: bool | None = None

    @property
    def passed(self) -> bool:
        return self.identity_in and not self.closure_failures and not self.inverse_failures

    def to_json(self):
        return {"schema_version": SCHEMA_VERSION, "kind": "subgroup", "level": self.level,
                "points": [_pt(p) for p in self.points], "identity_in": self.identity_in,
                "closure_failures": self.closure_failures,
                "inverse_failures": self.inverse_failures,
                "closed_in_sample": self.closed_in_sample, "order": self.order,
                "cyclic": self.cyclic, "passed": self.passed}


def level_set(family, points, level):
    return [p for p in points if family.specialize(p).alg.gram().rank < level]


def _point_order(family, p, bound):
    e = family.identity_point()
    cur, k = p, 1
    while cur != e:
        if k > bound:
            return None
        cur = family.convolve(cur, p)
        k += 1
    return k


def subgroup_check(family, points, level=None) -> SubgroupReport:
    """Closure of the sampled level set {rank(Gram) < level} under the group law.

    ``points`` is the whole sample; the level set is cut out of it. A product
    or inverse counts as a failure when its Gram rank is >= level.
    """
    e = family.identity_point()
    if level is None:
        level = family.specialize(e).sd() + 1
    cand = level_set(family, points, level)
    cset = set(cand)

    def rk(p):
        return family.specialize(p).alg.gram().rank

    closure, inverse = [], []
    in_sample = True
    for p in cand:
        for q in cand:
            r = family.convolve(p, q)
            if r not in cset:
                in_sample = False
            if rk(r) >= level:
                closure.append({"p": _pt(p), "q": _pt(q), "product": _pt(r), "rank": rk(r)})
        pi = family.inverse_point(p)
        if pi not in cset:
            in_sample = False
        if rk(pi) >= level:
            inverse.append({"p": _pt(p), "inverse": _pt(pi), "rank": rk(pi)})
    rep = SubgroupReport(level, cand, e in cset and rk(e) < level, closure, inverse, in_sample)
    if rep.passed and in_sample:
        rep.order = len(cand)
        rep.cyclic = any(_point_order(family, p, len(cand)) == len(cand) for p in cand)
    return rep


@dataclass
class QuotientVerdict:
    restricted: list
    precondition: bool
    family_verdict: ChevalleyVerdict | None
    total_dimension: int
    quotient_fiber: FiberChevalley | None = None
    reason: str | None = None

    @property
    def verdict(self) -> bool:
        ok = self.precondition and self.family_verdict is not None and self.family_verdict.verdict
        if self.quotient_fiber is not None:
            ok = ok and self.quotient_fiber.holds
        return ok

    def __bool__(self):
        return self.verdict

    def to_json(self):
        return {"schema_version": SCHEMA_VERSION, "kind": "quotient-chevalley",
                "verdict": "chevalley" if self.verdict else "not-chevalley",
                "restricted": [_pt(p) for p in self.restricted],
                "precondition": self.precondition, "reason": self.reason,
                "total_dimension": self.total_dimension,
                "family": self.family_verdict.to_json() if self.family_verdict else None,
                "quotient_fiber": self.quotient_fiber.to_json() if self.quotient_fiber else None}


def quotient_chevalley_check(family, restriction, points, seed=DEFAULT_SEED) -> QuotientVerdict:
    """Chevalley check over the restricted sample. When the restricted points form
    a finite subgroup, the quotient Hopf algebra is also assembled and checked."""
    pts = [p for p in points if restriction(p)]
    if not pts:
        return QuotientVerdict([], False, None, 0, reason="restriction selects no points")
    sd_e = family.specialize(family.identity_point()).sd()
    bad = [p for p in pts if family.specialize(p).sd() != sd_e]
    total = sum(family.specialize(p).dim for p in pts)
    if bad:
        return QuotientVerdict(pts, False, None, total,
                               reason=f"{bad[0]} lies outside the lowest level set")
    fv = chevalley_family_check(family, pts, seed)
    qf = None
    try:
        Q = finite_hopf_from_points(family, pts)
    except HopfError:
        Q = None
    reason = None
    if Q is not None:
        try:
            qf = chevalley_fiber_check(Q, seed)
        except NotSplit:
            reason = "quotient Hopf algebra not split over the session field; fibers checked only"
    return QuotientVerdict(pts, True, fv, total, qf, reason)
