"""Characteristic polynomials, Cayley-Hamilton checks and discriminant scans.

At a point m of maxSpec C the k-th discriminant ideal vanishes iff every
k x k minor of the trace Gram matrix of the fiber vanishes, i.e. iff the
Gram rank is < k. Scans report these ranks point by point.
"""

from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from math import factorial

from .algebra import DEFAULT_SEED, FinDimAlg, NotSplit, characters, split
from .arith import format_element
from .linalg import Mat, det, rref

SCHEMA_VERSION = 1


class InvariantViolation(AssertionError):
    """An identity that must hold exactly was observed to fail."""


# -- characteristic polynomials -----------------------------------------------

@dataclass
class CharPoly:
    """p(t) = t^n - c_1 t^{n-1} + ... + (-1)^n c_n."""

    degree: int
    coeffs: list            # c_1 .. c_n

    def poly(self):
        """Coefficients lowest degree first."""
        n = self.degree
        F = self.coeffs[0].F if self.coeffs else None
        out = [None] * (n + 1)
        out[n] = F.one
        for k, c in enumerate(self.coeffs, start=1):
            out[n - k] = c if k % 2 == 0 else -c
        return out

    def evaluate(self, A: FinDimAlg, a):
        """p(a) in A by Horner's rule."""
        out = A.zero_vector()
        for c in reversed(self.poly()):
            out = A.mul(out, a)
            out = [x + c * u for x, u in zip(out, A.unit)]
        return out

    def __str__(self):
        parts = [f"t^{self.degree}"]
        for k, c in enumerate(self.coeffs, start=1):
            if c:
                sign = "-" if k % 2 else "+"
                e = self.degree - k
                mon = "" if e == 0 else ("*t" if e == 1 else f"*t^{e}")
                parts.append(f"{sign} ({format_element(c)}){mon}")
        return " ".join(parts)


def power_traces(A: FinDimAlg, a, n, trace=None):
    trace = trace or A.trace
    out = []
    cur = list(a)
    for _ in range(n):
        out.append(trace(cur))
        cur = A.mul(cur, a)
    return out


def char_coeffs_det(tr_pows, n):
    """c_k as (1/k!) det of the Newton matrix built from tr(a^i)."""
    F = tr_pows[0].F
    out = []
    for k in range(1, n + 1):
        rows = []
        for i in range(k):
            row = []
            for j in range(k):
                if j == i + 1:
                    row.append(F.rational(i + 1))
                elif j <= i:
                    row.append(tr_pows[i - j])
                else:
                    row.append(F.zero)
            rows.append(row)
        out.append(det(Mat(F, rows, k)) * F.rational(1) / factorial(k))
    return out


def char_coeffs_newton(tr_pows, n):
    """k c_k = sum_{i=1}^k (-1)^{i-1} c_{k-i} tr(a^i)."""
    F = tr_pows[0].F
    c = [F.one]
    for k in range(1, n + 1):
        s = F.zero
        for i in range(1, k + 1):
            term = c[k - i] * tr_pows[i - 1]
            s = s + term if i % 2 == 1 else s - term
        c.append(s / k)
    return c[1:]


def char_poly(A: FinDimAlg, a, n: int, trace=None, cross_check=True) -> CharPoly:
    if n < 1:
        raise ValueError("degree must be at least 1")
    tp = power_traces(A, a, n, trace)
    cs = char_coeffs_det(tp, n)
    if cross_check and cs != char_coeffs_newton(tp, n):
        raise InvariantViolation("determinant and Newton formulas disagree")
    return CharPoly(n, cs)


@dataclass
class CHVerdict:
    passed: bool
    degree: int
    tr_one: object
    checked: int
    failures: list = dc_field(default_factory=list)

    def to_json(self):
        return {"passed": self.passed, "degree": self.degree, "tr_one": str(self.tr_one),
                "checked": self.checked, "failures": self.failures}


def random_element(A: FinDimAlg, rng: random.Random, density=0.6):
    F = A.F
    v = []
    for _ in range(A.dim):
        if rng.random() < density:
            v.append(F.zeta(rng.randrange(F.n)) * rng.choice([-2, -1, 1, 2, 3]))
        else:
            v.append(F.zero)
    if not any(v):
        v[rng.randrange(A.dim)] = F.one
    return v


def cayley_hamilton_check(A: FinDimAlg, n: int | None = None, trace=None, trials: int = 20,
                          seed: int = DEFAULT_SEED) -> CHVerdict:
    """tr(1) = n and p_{n,a}(a) = 0 on basis elements and seeded random elements."""
    trace = trace or A.trace
    n = n or A.dim
    F = A.F
    t1 = trace(A.unit)
    failures = []
    if t1 != F.rational(n):
        failures.append({"element": "1", "reason": f"tr(1) = {t1} != {n}"})
    rng = random.Random(seed)
    elems = [(A.labels[i], A.basis_vector(i)) for i in range(A.dim)]
    elems += [(f"random[{k}]", random_element(A, rng)) for k in range(trials)]
    for label, a in elems:
        cp = char_poly(A, a, n, trace)
        if any(cp.evaluate(A, a)):
            failures.append({"element": label, "reason": "p(a) != 0"})
    return CHVerdict(not failures, n, t1, len(elems), failures)


def matrix_trace(n: int):
    """The usual trace on M_n in the matrix-unit basis of ``matrix_algebra``."""
    def tr(v):
        F = v[0].F
        s = F.zero
        for i in range(n):
            s = s + v[i * n + i]
        return s
    return tr


# -- discriminant vanishing -----------------------------------------------------

def _alg(fiber):
    return fiber.alg if hasattr(fiber, "alg") else fiber


def gram_rank(fiber) -> int:
    return _alg(fiber).gram().rank


@dataclass
class MinorCheck:
    k: int
    rank: int
    vanishes: bool
    symmetric_witness: list | None = None     # coordinate vectors u_1..u_k
    asymmetric_witness: tuple | None = None   # (rows, cols) of a nonzero minor
    sampled_zero_minors: int = 0


def orthogonal_basis(G: Mat):
    """Vectors u_i with G(u_i, u_j) = 0 for i != j and G(u_i, u_i) != 0 spanning a
    complement of the radical of the symmetric form G."""
    F = G.F
    n = G.rows

    def form(u, v):
        return sum((a * b for a, b in zip(u, G.apply(v))), F.zero)

    vecs = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    out = []
    while vecs:
        pick = next((v for v in vecs if form(v, v)), None)
        if pick is None:
            pair = next(((u, v) for u, v in itertools.combinations(vecs, 2) if form(u, v)), None)
            if pair is None:
                break
            pick = [a + b for a, b in zip(*pair)]
        q = form(pick, pick)
        out.append(pick)
        nxt = []
        for v in vecs:
            c = form(v, pick) / q
            w = [a - c * b for a, b in zip(v, pick)]
            if any(w):
                nxt.append(w)
        if nxt:
            R, rk, _ = rref(Mat(F, nxt, n))
            nxt = [R.data[i] for i in range(rk)]
        vecs = nxt
    return out


def dk_vanishes(fiber, k: int, cross_check=False, samples=20, seed=DEFAULT_SEED):
    """D_k (and MD_k) vanish at the fiber's point iff rank(Gram) < k.

    With ``cross_check`` a MinorCheck is returned: for rank >= k an explicit
    k-tuple with nonzero symmetric determinant and a nonzero k x k minor;
    for rank < k a sample of k x k minors, all verified to vanish.
    """
    A = _alg(fiber)
    G = A.gram().gram
    r = A.gram().rank
    vanish = r < k
    if not cross_check:
        return vanish
    res = MinorCheck(k, r, vanish)
    F = A.F
    if not vanish:
        us = orthogonal_basis(G)[:k]
        if len(us) < k:
            raise InvariantViolation("orthogonal basis shorter than the Gram rank")
        M = Mat(F, [[sum((a * b for a, b in zip(u, G.apply(v))), F.zero) for v in us]
                    for u in us], k)
        if not det(M):
            raise InvariantViolation("symmetric witness has zero determinant")
        res.symmetric_witness = us
        _, _, rows = rref(G.transpose())
        rows = rows[:k]
        sub = Mat(F, [G.data[i] for i in rows], G.cols)
        _, _, cols = rref(sub)
        cols = cols[:k]
        if not det(G.submatrix(rows, cols)):
            raise InvariantViolation("asymmetric witness has zero determinant")
        res.asymmetric_witness = (rows, cols)
    elif k <= A.dim:
        rng = random.Random(seed)
        idx = list(range(A.dim))
        for _ in range(samples):
            I = sorted(rng.sample(idx, k))
            J = sorted(rng.sample(idx, k))
            if det(G.submatrix(I, J)):
                raise InvariantViolation(f"nonzero {k}x{k} minor although rank {r} < {k}")
            res.sampled_zero_minors += 1
    return res


def lowest_level(family) -> int:
    return family.specialize(family.identity_point()).sd() + 1


# -- scans ---------------------------------------------------------------------

@dataclass
class PointRecord:
    point: object
    dim: int
    sd: int
    gram_rank: int
    radical_dim: int
    members: dict
    has_character: bool | None
    split: str
    simple_dims: list
    in_lowest: bool
    sd_inverse: int | None = None

    def to_json(self):
        return {"point": self.point.to_json(), "dim": self.dim, "sd": self.sd,
                "gram_rank": self.gram_rank, "radical_dim": self.radical_dim,
                "members": {str(k): v for k, v in self.members.items()},
                "has_character": self.has_character, "split": self.split,
                "simple_dims": self.simple_dims, "in_lowest": self.in_lowest,
                "sd_inverse": self.sd_inverse}


@dataclass
class ScanReport:
    family: str
    params: dict
    conductor: int
    levels: list
    records: list
    sd_identity: int
    lowest: int
    seed: int = DEFAULT_SEED

    def distinct_sd(self):
        return sorted({r.sd for r in self.records})

    def level_set(self, k):
        return [r.point for r in self.records if r.gram_rank < k]

    def lowest_set(self):
        return self.level_set(self.lowest)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "scan",
            "family": self.family, "params": self.params, "conductor": self.conductor,
            "seed": self.seed, "levels": self.levels,
            "records": [r.to_json() for r in self.records],
            "summary": {
                "distinct_sd": self.distinct_sd(),
                "sd_identity": self.sd_identity,
                "lowest_level": self.lowest,
                "lowest_set": [p.to_json() for p in self.lowest_set()],
                "level_sets": {str(k): [p.to_json() for p in self.level_set(k)]
                               for k in self.levels},
                "note": "vanishing certified at sampled points only",
            },
        }

    def table(self) -> str:
        head = ["point", "dim", "sd", "rank", "rad"] + [f"V{k}" for k in self.levels] + \
               ["char", "split"]
        rows = []
        for r in self.records:
            rows.append([str(r.point), str(r.dim), str(r.sd), str(r.gram_rank),
                         str(r.radical_dim)]
                        + ["x" if r.members[k] else "." for k in self.levels]
                        + ["-" if r.has_character is None else ("y" if r.has_character else "n"),
                           r.split])
        w = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h)
             for i, h in enumerate(head)]
        lines = ["  ".join(h.ljust(w[i]) for i, h in enumerate(head))]
        lines.append("  ".join("-" * x for x in w))
        lines += ["  ".join(c.ljust(w[i]) for i, c in enumerate(row)) for row in rows]
        lines.append("")
        lines.append(f"sd(identity) = {self.sd_identity}, lowest level = {self.lowest}")
        for k in self.levels:
            lines.append(f"V{k} sample: {len(self.level_set(k))} of {len(self.records)} points")
        return "\n".join(lines)


def scan_point(family, p, levels, with_characters=True, check_inverse=True,
               seed=DEFAULT_SEED) -> PointRecord:
    fib = family.specialize(p)
    A = fib.alg
    r = A.gram().rank
    J = A.radical().dim
    if r != A.dim - J:
        raise InvariantViolation(f"Gram rank {r} != dim - dim J = {A.dim - J} at {p}")
    sd_e = family.specialize(family.identity_point()).sd()
    status, dims, has_char = "skipped", [], None
    if with_characters:
        try:
            S = split(A, seed)
            status = "split" if not S.unsplit else "not-split"
            dims = sorted(M.dim for M in S.modules)
            has_char = any(d == 1 for d in dims)
        except NotSplit as exc:
            status = "not-split"
            has_char = bool(characters(A, seed))
    sd_inv = None
    if check_inverse:
        pinv = family.inverse_point(p)
        if family.supports(pinv):
            sd_inv = family.specialize(pinv).sd()
            if sd_inv != r:
                raise InvariantViolation(f"sd({p}) = {r} but sd of its inverse is {sd_inv}")
    return PointRecord(p, A.dim, A.dim - J, r, J, {k: r < k for k in levels}, has_char,
                       status, dims, A.dim - J == sd_e, sd_inv)


_WORKER = {}


def _worker_init(recipe):
    from . import families
    name, params, conductor = recipe
    _WORKER["family"] = families.build(name, params, conductor=conductor,
                                       enable_experimental=True)


def _worker_scan(args):
    values, levels, with_characters, check_inverse, seed = args
    fam = _WORKER["family"]
    p = fam.point(*values)
    return scan_point(fam, p, levels, with_characters, check_inverse, seed)


def scan_variety(family, points, levels=(), jobs=1, with_characters=True, check_inverse=True,
                 seed=DEFAULT_SEED) -> ScanReport:
    levels = sorted(set(int(k) for k in levels))
    points = list(points)
    sd_e = family.specialize(family.identity_point()).sd()
    recipe = getattr(family, "recipe", None)
    if jobs > 1 and recipe is not None and len(points) > 1:
        args = [(p.values, levels, with_characters, check_inverse, seed) for p in points]
        with ProcessPoolExecutor(max_workers=jobs, initializer=_worker_init,
                                 initargs=(recipe,)) as ex:
            recs = list(ex.map(_worker_scan, args))
        # rebind points to the caller's objects so the report uses them
        for rec, p in zip(recs, points):
            rec.point = p
    else:
        recs = [scan_point(family, p, levels, with_characters, check_inverse, seed)
                for p in points]
    return ScanReport(family.name, dict(family.params), family.F.n, levels, recs, sd_e,
                      sd_e + 1, seed)


def report_json(report) -> str:
    return json.dumps(report.to_json(), indent=2)
