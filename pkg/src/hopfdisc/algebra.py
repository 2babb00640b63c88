"""Finite-dimensional algebras given by structure constants.

Radicals are computed as the kernel of the regular trace form, which is
valid in characteristic zero. Simple modules are found by splitting the
center of the semisimple quotient into primitive idempotents and then
cutting each block down to a minimal left ideal.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field as dc_field

from .arith import CycEl, CyclotomicField, field, parse_element, poly_roots
from .linalg import Mat, Subspace, kernel, rank, rref

DEFAULT_SEED = 20240917


class AlgebraError(Exception):
    pass


class NotAssociative(AlgebraError):
    def __init__(self, triple):
        super().__init__(f"(b{triple[0]} b{triple[1]}) b{triple[2]} != "
                         f"b{triple[0]} (b{triple[1]} b{triple[2]})")
        self.triple = triple


class BadUnit(AlgebraError):
    pass


class NotSemisimple(AlgebraError):
    pass


class NotSplit(AlgebraError):
    """A minimal polynomial does not split over the current cyclotomic field."""

    def __init__(self, message, poly=None):
        super().__init__(message)
        self.poly = poly


class BadModule(AlgebraError):
    pass


class FinDimAlg:
    """Associative unital algebra with basis b_0..b_{d-1}.

    ``table[i][j]`` is a dict ``{k: c}`` meaning b_i b_j = sum c b_k.
    """

    def __init__(self, F: CyclotomicField, dim: int, labels, table, unit, check=True):
        self.F = F
        self.dim = dim
        self.labels = list(labels) if labels else [f"b{i}" for i in range(dim)]
        self.table = table
        self.unit = [F.coerce(x) for x in unit]
        self._cache = {}
        if check:
            self.validate()

    def __repr__(self):
        return f"FinDimAlg(dim={self.dim}, N={self.F.n})"

    # -- validation ---------------------------------------------------------
    def validate(self):
        d = self.dim
        if len(self.table) != d or any(len(r) != d for r in self.table):
            raise AlgebraError("structure constant table has wrong shape")
        if len(self.labels) != d or len(self.unit) != d:
            raise AlgebraError("labels/unit length differs from dimension")
        for i in range(d):
            e = self.basis_vector(i)
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                raise BadUnit(f"unit does not act as identity on {self.labels[i]}")
        for i in range(d):
            for j in range(d):
                bij = self.table[i][j]
                for k in range(d):
                    left = self._mul_sparse_basis(bij, k, right=True)
                    right = self._basis_mul_sparse(i, self.table[j][k])
                    if left != right:
                        raise NotAssociative((i, j, k))

    def _mul_sparse_basis(self, u: dict, k: int, right=True):
        out = {}
        for i, c in u.items():
            for m, a in self.table[i][k].items():
                out[m] = out.get(m, self.F.zero) + c * a
        return {m: a for m, a in out.items() if a}

    def _basis_mul_sparse(self, i: int, v: dict):
        out = {}
        for j, c in v.items():
            for m, a in self.table[i][j].items():
                out[m] = out.get(m, self.F.zero) + c * a
        return {m: a for m, a in out.items() if a}

    # -- arithmetic ---------------------------------------------------------
    def basis_vector(self, i):
        v = [self.F.zero] * self.dim
        v[i] = self.F.one
        return v

    def zero_vector(self):
        return [self.F.zero] * self.dim

    def mul(self, u, v):
        F = self.F
        out = [F.zero] * self.dim
        nv = [(j, b) for j, b in enumerate(v) if b]
        for i, a in enumerate(u):
            if not a:
                continue
            row = self.table[i]
            for j, b in nv:
                ab = a * b
                for k, c in row[j].items():
                    out[k] = out[k] + ab * c
        return out

    def power(self, u, k):
        out = list(self.unit)
        base = list(u)
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def add(self, u, v):
        return [a + b for a, b in zip(u, v)]

    def scale(self, c, u):
        c = self.F.coerce(c)
        return [c * a for a in u]

    def combo(self, coeffs):
        """sum c_i b_i from a dict {i: c}."""
        v = self.zero_vector()
        for i, c in coeffs.items():
            v[i] = v[i] + self.F.coerce(c)
        return v

    def basis_left_mult(self, i) -> Mat:
        key = ("L", i)
        if key not in self._cache:
            F = self.F
            cols = [self.table[i][j] for j in range(self.dim)]
            data = [[cols[j].get(k, F.zero) for j in range(self.dim)] for k in range(self.dim)]
            self._cache[key] = Mat(F, data, self.dim)
        return self._cache[key]

    def basis_right_mult(self, i) -> Mat:
        key = ("R", i)
        if key not in self._cache:
            F = self.F
            data = [[self.table[j][i].get(k, F.zero) for j in range(self.dim)]
                    for k in range(self.dim)]
            self._cache[key] = Mat(F, data, self.dim)
        return self._cache[key]

    def left_mult_matrix(self, a) -> Mat:
        """Matrix whose column j holds the coordinates of a * b_j."""
        F = self.F
        cols = [self.mul(a, self.basis_vector(j)) for j in range(self.dim)]
        return Mat(F, [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)], self.dim)

    def right_mult_matrix(self, a) -> Mat:
        F = self.F
        cols = [self.mul(self.basis_vector(j), a) for j in range(self.dim)]
        return Mat(F, [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)], self.dim)

    # -- trace data ---------------------------------------------------------
    def basis_traces(self):
        if "tr" not in self._cache:
            F = self.F
            self._cache["tr"] = [
                sum((self.table[i][j].get(j, F.zero) for j in range(self.dim)), F.zero)
                for i in range(self.dim)]
        return self._cache["tr"]

    def trace(self, a) -> CycEl:
        t = self.basis_traces()
        s = self.F.zero
        for x, y in zip(a, t):
            if x and y:
                s = s + x * y
        return s

    def gram(self) -> "GramData":
        if "gram" not in self._cache:
            self._cache["gram"] = gram_matrix(self)
        return self._cache["gram"]

    def radical(self) -> Subspace:
        if "rad" not in self._cache:
            self._cache["rad"] = radical(self)
        return self._cache["rad"]

    def sd(self) -> int:
        return self.dim - self.radical().dim

    def to_json(self) -> dict:
        sc = []
        for i in range(self.dim):
            for j in range(self.dim):
                if self.table[i][j]:
                    sc.append([i, j, [[k, str(c)] for k, c in sorted(self.table[i][j].items())]])
        return {"conductor": self.F.n, "dim": self.dim, "labels": self.labels,
                "unit": [str(x) for x in self.unit], "sc": sc}


def make_algebra(F, dim, labels, sc, unit, check=True) -> FinDimAlg:
    """Build and validate an algebra.

    ``sc`` is either a full ``table[i][j] -> {k: c}`` nested list or an
    iterable of ``(i, j, [(k, c), ...])`` triples.
    """
    if isinstance(F, int):
        F = field(F)
    table = [[{} for _ in range(dim)] for _ in range(dim)]
    if sc and isinstance(sc[0], list) and len(sc) == dim and sc and isinstance(sc[0][0], dict):
        for i in range(dim):
            for j in range(dim):
                table[i][j] = {k: F.coerce(c) for k, c in sc[i][j].items() if c}
    else:
        for i, j, terms in sc:
            entry = table[i][j]
            for k, c in terms:
                c = F.coerce(c) if not isinstance(c, str) else parse_element(c, F.n)
                if c:
                    entry[k] = entry.get(k, F.zero) + c
    unit = [parse_element(u, F.n) if isinstance(u, str) else F.coerce(u) for u in unit]
    return FinDimAlg(F, dim, labels, table, unit, check=check)


def algebra_from_json(obj) -> FinDimAlg:
    if isinstance(obj, str):
        obj = json.loads(obj)
    F = field(int(obj.get("conductor", 1)))
    return make_algebra(F, obj["dim"], obj.get("labels"), obj["sc"], obj["unit"])


def matrix_algebra(F, n) -> FinDimAlg:
    """M_n(F) on matrix units e_ij, basis index i*n + j."""
    d = n * n
    sc = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                sc.append((i * n + j, j * n + k, [(i * n + k, 1)]))
    unit = [1 if (a // n) == (a % n) else 0 for a in range(d)]
    labels = [f"e{a // n + 1}{a % n + 1}" for a in range(d)]
    return make_algebra(F, d, labels, sc, unit)


def group_algebra(F, elements, mult, labels=None) -> FinDimAlg:
    idx = {g: i for i, g in enumerate(elements)}
    sc = [(idx[g], idx[h], [(idx[mult(g, h)], 1)]) for g in elements for h in elements]
    e = next(g for g in elements if all(mult(g, h) == h for h in elements))
    unit = [1 if g == e else 0 for g in elements]
    return make_algebra(F, len(elements), labels or [str(g) for g in elements], sc, unit)


def direct_product(A: FinDimAlg, B: FinDimAlg) -> FinDimAlg:
    d = A.dim + B.dim
    table = [[{} for _ in range(d)] for _ in range(d)]
    for i in range(A.dim):
        for j in range(A.dim):
            table[i][j] = dict(A.table[i][j])
    for i in range(B.dim):
        for j in range(B.dim):
            table[A.dim + i][A.dim + j] = {A.dim + k: c for k, c in B.table[i][j].items()}
    return FinDimAlg(A.F, d, A.labels + B.labels, table, A.unit + B.unit)


# -- regular trace and Gram data ---------------------------------------------

def left_mult_matrix(A: FinDimAlg, a) -> Mat:
    return A.left_mult_matrix(a)


def regular_trace(A: FinDimAlg, a) -> CycEl:
    return A.trace(a)


@dataclass(frozen=True)
class GramData:
    gram: Mat
    rank: int


def gram_matrix(A: FinDimAlg) -> GramData:
    F = A.F
    t = A.basis_traces()
    rows = []
    for i in range(A.dim):
        row = []
        for j in range(A.dim):
            s = F.zero
            for k, c in A.table[i][j].items():
                if t[k]:
                    s = s + c * t[k]
            row.append(s)
        rows.append(row)
    G = Mat(F, rows, A.dim)
    return GramData(G, rank(G))


def radical(A: FinDimAlg, verify: bool = True) -> Subspace:
    """Jacobson radical as the kernel of the trace form."""
    J = kernel(A.gram().gram)
    if verify and J.dim:
        for r in J.basis:
            for i in range(A.dim):
                e = A.basis_vector(i)
                if not J.contains(A.mul(r, e)) or not J.contains(A.mul(e, r)):
                    raise AlgebraError("trace-form kernel is not a two-sided ideal")
            k = 1
            while k < A.dim:
                k *= 2
            if any(A.power(r, k)):
                raise AlgebraError("trace-form kernel contains a non-nilpotent element")
    return J


def sd(A: FinDimAlg) -> int:
    """Square dimension: dim A - dim J(A)."""
    return A.sd()


@dataclass
class Quotient:
    alg: FinDimAlg
    keep: list          # indices of A's basis that descend to the quotient basis
    J: Subspace

    def project(self, v):
        r = self.J.reduce(v)
        return [r[i] for i in self.keep]

    def lift(self, w):
        v = [self.alg.F.zero] * self.J.ambient
        for i, c in zip(self.keep, w):
            v[i] = c
        return v


def semisimple_quotient(A: FinDimAlg) -> Quotient:
    """A / J(A) on the basis of non-pivot coordinates of the radical."""
    if "ssq" in A._cache:
        return A._cache["ssq"]
    J = A.radical()
    piv = set(J.pivots)
    keep = [i for i in range(A.dim) if i not in piv]
    pos = {i: a for a, i in enumerate(keep)}
    F = A.F
    m = len(keep)
    table = [[{} for _ in range(m)] for _ in range(m)]
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            prod = [F.zero] * A.dim
            for k, c in A.table[i][j].items():
                prod[k] = c
            red = J.reduce(prod)
            table[a][b] = {pos[k]: red[k] for k in keep if red[k]}
    unit = [J.reduce(A.unit)[i] for i in keep]
    Q = Quotient(FinDimAlg(F, m, [A.labels[i] for i in keep], table, unit), keep, J)
    A._cache["ssq"] = Q
    return Q


# -- modules ----------------------------------------------------------------

class AlgMod:
    """Module over a FinDimAlg given by the action matrices of basis elements."""

    def __init__(self, parent: FinDimAlg, dim: int, action, check=True, info=None):
        self.parent = parent
        self.dim = dim
        self.action = list(action)
        self.info = dict(info or {})
        if check:
            self.validate()

    def __repr__(self):
        return f"AlgMod(dim={self.dim}, {self.info})"

    def rho(self, a) -> Mat:
        F = self.parent.F
        out = Mat.zeros(F, self.dim, self.dim)
        data = out.data
        for i, c in enumerate(a):
            if c:
                for r, (orow, arow) in enumerate(zip(data, self.action[i].data)):
                    data[r] = [x + c * y if y else x for x, y in zip(orow, arow)]
        return out

    def validate(self):
        A = self.parent
        if len(self.action) != A.dim:
            raise BadModule("need one action matrix per basis element")
        if self.rho(A.unit) != Mat.identity(A.F, self.dim):
            raise BadModule("unit does not act as identity")
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.action[i] @ self.action[j]
                rhs = self.rho(A.mul(A.basis_vector(i), A.basis_vector(j)))
                if lhs != rhs:
                    raise BadModule(f"action is not multiplicative on ({A.labels[i]}, {A.labels[j]})")

    def spin(self, v) -> Subspace:
        """Submodule generated by v."""
        return spin(self.action, v, self.parent.F)

    def image_dim(self) -> int:
        """Dimension of the image of the algebra in End(V)."""
        return rank(Mat(self.parent.F, [[x for r in m.data for x in r] for m in self.action],
                        self.dim * self.dim))

    def is_absolutely_irreducible(self) -> bool:
        # Burnside: rho(A) = End(V) iff V is absolutely simple
        return self.image_dim() == self.dim * self.dim


def spin(mats, v, F) -> Subspace:
    n = len(v)
    basis, pivots = [], []

    def insert(w):
        for row, p in zip(basis, pivots):
            c = w[p]
            if c:
                w = [a - c * b if b else a for a, b in zip(w, row)]
        p = next((k for k, x in enumerate(w) if x), None)
        if p is None:
            return None
        inv = w[p].inverse()
        w = [x * inv for x in w]
        basis.append(w)
        pivots.append(p)
        return w

    queue = []
    w = insert(list(v))
    if w is not None:
        queue.append(w)
    while queue:
        w = queue.pop()
        for m in mats:
            u = insert(m.apply(w))
            if u is not None:
                queue.append(u)
                if len(basis) == n:
                    return Subspace(F, n, basis)
    return Subspace(F, n, basis)


def regular_module(A: FinDimAlg) -> AlgMod:
    return AlgMod(A, A.dim, [A.basis_left_mult(i) for i in range(A.dim)], check=False,
                  info={"kind": "regular"})


def is_semisimple_module(A: FinDimAlg, M: AlgMod) -> bool:
    """True iff the Jacobson radical of A acts as zero on M."""
    for r in A.radical().basis:
        if not M.rho(r).is_zero():
            return False
    return True


# -- polynomial helpers over the field ---------------------------------------

def min_poly(A: FinDimAlg, z, unit=None):
    """Monic minimal polynomial of z in the subalgebra with identity ``unit``."""
    F = A.F
    unit = unit or A.unit
    powers = [list(unit)]
    basis, pivots, combos = [], [], []
    # incremental echelon form tracking each reduced vector as a combination of powers
    k = 0
    cur = list(unit)
    while True:
        w = list(cur)
        comb = [F.zero] * (k + 1)
        comb[k] = F.one
        for row, p, rc in zip(basis, pivots, combos):
            c = w[p]
            if c:
                w = [a - c * b if b else a for a, b in zip(w, row)]
                for t, x in enumerate(rc):
                    comb[t] = comb[t] - c * x
        p = next((i for i, x in enumerate(w) if x), None)
        if p is None:
            return comb  # lowest degree first, monic
        inv = w[p].inverse()
        basis.append([x * inv for x in w])
        pivots.append(p)
        combos.append([x * inv for x in comb] + [])
        k += 1
        cur = A.mul(z, cur)
        combos = [rc + [F.zero] * (k + 1 - len(rc)) for rc in combos]


def _eval_poly(A, coeffs, z, unit):
    out = A.zero_vector()
    for c in reversed(coeffs):
        out = A.mul(z, out)
        out = [a + c * u for a, u in zip(out, unit)]
    return out


def _divide_linear(coeffs, lam):
    # coeffs lowest first; returns quotient by (t - lam)
    n = len(coeffs) - 1
    q = [None] * n
    acc = coeffs[n]
    for k in range(n - 1, -1, -1):
        q[k] = acc
        acc = coeffs[k] + acc * lam
    return q


def _poly_value(coeffs, x):
    acc = x.F.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def format_poly(coeffs, var="t") -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        cs = str(c)
        if mon:
            body = mon if cs == "1" else (f"-{mon}" if cs == "-1" else f"({cs})*{mon}")
        else:
            body = f"({cs})" if " " in cs else cs
        parts.append(body)
    return " + ".join(parts) or "0"


# -- splitting ---------------------------------------------------------------

def _candidates(d, rng, extra_random=60, skip=()):
    for i in range(d):
        if i not in skip:
            yield {i: 1}
    idx = [i for i in range(d) if i not in skip]
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            yield {idx[a]: 1, idx[b]: 1}
            yield {idx[a]: 1, idx[b]: -1}
            if a * len(idx) + b > 400:
                break
    for _ in range(extra_random):
        k = rng.randint(2, max(2, min(4, d)))
        yield {rng.randrange(d): rng.choice([-2, -1, 1, 2, 3]) for _ in range(k)}


def center(A: FinDimAlg) -> Subspace:
    if "center" not in A._cache:
        F = A.F
        rows = []
        for i in range(A.dim):
            D = A.basis_right_mult(i) - A.basis_left_mult(i)
            rows.extend(D.data)
        A._cache["center"] = kernel(Mat(F, rows, A.dim))
    return A._cache["center"]


def central_primitive_idempotents(Abar: FinDimAlg, seed=DEFAULT_SEED, strict=True):
    """Primitive idempotents of the center of a semisimple algebra.

    With ``strict=False`` blocks whose center does not split are returned
    as (non-primitive over the closure) idempotents flagged in the second
    return value instead of raising.
    """
    if Abar.radical().dim:
        raise NotSemisimple(f"radical has dimension {Abar.radical().dim}")
    Z = center(Abar)
    rng = random.Random(seed)
    done, unsplit = [], []
    todo = [list(Abar.unit)]
    while todo:
        e = todo.pop()
        eZ = Subspace(Abar.F, Abar.dim, [Abar.mul(e, z) for z in Z.basis])
        if eZ.dim == 1:
            done.append(e)
            continue
        bad = None
        split = None
        for cand in _central_candidates(eZ, rng):
            z = Abar.mul(e, cand)
            mp = min_poly(Abar, z, unit=e)
            if len(mp) == 2:
                continue
            roots, nonlinear = poly_roots(mp, Abar.F)
            if len(roots) + len(nonlinear) >= 2 and roots:
                split = (z, mp, roots)
                break
            if nonlinear:
                bad = mp
        if split is None:
            if strict:
                raise NotSplit("center of a block does not split; minimal polynomial "
                               + (format_poly(bad) if bad else "unknown"), bad)
            unsplit.append(e)
            continue
        z, mp, roots = split
        rest = list(e)
        for lam, _ in roots:
            q = _divide_linear(mp, lam)
            val = _poly_value(q, lam)
            f = Abar.scale(val.inverse(), _eval_poly(Abar, q, z, e))
            todo.append(f)
            rest = [a - b for a, b in zip(rest, f)]
        if any(rest):
            todo.append(rest)
    done = _order_idempotents(done)
    if strict:
        return done
    return done, _order_idempotents(unsplit)


def _order_idempotents(es):
    def key(e):
        return [(str(x) if x else "") for x in e]
    return sorted(es, key=lambda e: next((i for i, x in enumerate(e) if x), 0))


def _central_candidates(eZ: Subspace, rng):
    for b in eZ.basis:
        yield b
    F = eZ.F
    for _ in range(40):
        coeffs = [rng.randint(-3, 3) for _ in eZ.basis]
        v = [F.zero] * eZ.ambient
        for c, b in zip(coeffs, eZ.basis):
            if c:
                v = [x + c * y for x, y in zip(v, b)]
        if any(v):
            yield v


def _minimal_left_ideal(Abar: FinDimAlg, e, n: int, seed):
    """A left ideal of dimension n inside the block Abar*e (dim n^2)."""
    F = Abar.F
    rng = random.Random(seed)
    L = Subspace(F, Abar.dim, [Abar.mul(Abar.basis_vector(i), e) for i in range(Abar.dim)])
    last_poly = None
    stall = 0
    while L.dim > n:
        progressed = False
        for cand in _candidates(Abar.dim, rng):
            a = Abar.combo(cand)
            M = _action_on(Abar, a, L)
            mp = _matrix_min_poly(M)
            if len(mp) <= 2:
                continue
            roots, nonlinear = poly_roots(mp, F)
            if not roots:
                last_poly = mp
                continue
            for lam, _ in roots:
                E = kernel(M - Mat.identity(F, L.dim).scale(lam))
                for coords in E.basis:
                    v = _from_coords(L, coords)
                    L2 = spin([Abar.basis_left_mult(i) for i in range(Abar.dim)], v, F)
                    if n <= L2.dim < L.dim:
                        L = L2
                        progressed = True
                        break
                if progressed:
                    break
            if progressed:
                break
        if not progressed:
            stall += 1
            if stall > 1:
                raise NotSplit("could not find a minimal left ideal; last minimal polynomial "
                               + (format_poly(last_poly) if last_poly else "unknown"), last_poly)
    return L


def _action_on(A: FinDimAlg, a, L: Subspace) -> Mat:
    cols = [_coords(L, A.mul(a, b)) for b in L.basis]
    return Mat(A.F, [list(r) for r in zip(*cols)], L.dim)


def _coords(L: Subspace, v):
    return [v[p] for p in L.pivots]


def _from_coords(L: Subspace, coords):
    F = L.F
    v = [F.zero] * L.ambient
    for c, b in zip(coords, L.basis):
        if c:
            v = [x + c * y if y else x for x, y in zip(v, b)]
    return v


def _matrix_min_poly(M: Mat):
    F = M.F
    n = M.rows
    # powers of M flattened; first dependency gives the minimal polynomial
    flat = []
    P = Mat.identity(F, n)
    basis, pivots, combos = [], [], []
    k = 0
    while True:
        w = [x for r in P.data for x in r]
        comb = [F.zero] * (k + 1)
        comb[k] = F.one
        for row, p, rc in zip(basis, pivots, combos):
            c = w[p]
            if c:
                w = [a - c * b if b else a for a, b in zip(w, row)]
                for t, x in enumerate(rc):
                    comb[t] = comb[t] - c * x
        p = next((i for i, x in enumerate(w) if x), None)
        if p is None:
            return comb
        inv = w[p].inverse()
        basis.append([x * inv for x in w])
        pivots.append(p)
        combos.append([x * inv for x in comb])
        k += 1
        combos = [rc + [F.zero] * (k + 1 - len(rc)) for rc in combos]
        P = M @ P


@dataclass
class Splitting:
    quotient: Quotient
    idempotents: list                      # central primitive idempotents of Abar
    modules: list = dc_field(default_factory=list)   # one AlgMod per split block
    unsplit: list = dc_field(default_factory=list)   # blocks that failed to split
    errors: list = dc_field(default_factory=list)


def split(A: FinDimAlg, seed=DEFAULT_SEED) -> Splitting:
    """Decompose A/J(A) as far as the base field allows (cached)."""
    key = ("split", seed)
    if key in A._cache:
        return A._cache[key]
    Q = semisimple_quotient(A)
    Abar = Q.alg
    es, unsplit = central_primitive_idempotents(Abar, seed=seed, strict=False)
    S = Splitting(Q, es, unsplit=list(unsplit))
    if unsplit:
        S.errors.append("center does not split over Q(zeta_%d)" % A.F.n)
    for b, e in enumerate(es):
        block = Subspace(A.F, Abar.dim, [Abar.mul(e, Abar.basis_vector(i)) for i in range(Abar.dim)])
        n = math.isqrt(block.dim)
        if n * n != block.dim:
            S.unsplit.append(e)
            S.errors.append(f"block {b} has dimension {block.dim}, not a square")
            continue
        try:
            L = _minimal_left_ideal(Abar, e, n, seed + b) if n > 1 else block
        except NotSplit as exc:
            S.unsplit.append(e)
            S.errors.append(str(exc))
            continue
        action = []
        for i in range(A.dim):
            a = Q.project(A.basis_vector(i))
            action.append(_action_on(Abar, a, L))
        M = AlgMod(A, L.dim, action, check=False, info={"block": b})
        if not M.is_absolutely_irreducible():
            S.unsplit.append(e)
            S.errors.append(f"block {b}: module of dim {L.dim} is not absolutely simple")
            continue
        M.info["idempotent"] = e
        S.modules.append(M)
    A._cache[key] = S
    return S


def simple_modules(A: FinDimAlg, seed=DEFAULT_SEED, strict=True):
    """One simple module per block of A/J(A), ordered by block."""
    S = split(A, seed)
    if strict and S.unsplit:
        raise NotSplit("; ".join(S.errors) or "algebra does not split")
    for k, M in enumerate(S.modules):
        M.info["index"] = k
    return list(S.modules)


def characters(A: FinDimAlg, seed=DEFAULT_SEED):
    """All one-dimensional modules that are defined over the base field."""
    return [M for M in simple_modules(A, seed, strict=False) if M.dim == 1]


def character_values(M: AlgMod):
    return [m.data[0][0] for m in M.action]


def is_split_semisimple(Abar: FinDimAlg, seed=DEFAULT_SEED) -> bool:
    if Abar.radical().dim:
        return False
    S = split(Abar, seed)
    if S.unsplit:
        return False
    for M in S.modules:
        if not M.is_absolutely_irreducible():
            return False
    return sum(M.dim ** 2 for M in S.modules) == Abar.dim


def block_of(A: FinDimAlg, M: AlgMod, seed=DEFAULT_SEED):
    """Index of the simple block whose idempotent acts as identity on simple M."""
    S = split(A, seed)
    I = Mat.identity(A.F, M.dim)
    for k, N in enumerate(S.modules):
        e = S.quotient.lift(N.info["idempotent"])
        if M.rho(e) == I:
            return k
    return None


def centralizer_dim(M: AlgMod) -> int:
    """dim End_A(M), by solving X rho(b) = rho(b) X."""
    F = M.parent.F
    m = M.dim
    rows = []
    for R in M.action:
        # unknown X flattened row-major; (X R - R X)_{ij}
        for i in range(m):
            for j in range(m):
                row = [F.zero] * (m * m)
                for k in range(m):
                    if R.data[k][j]:
                        row[i * m + k] = row[i * m + k] + R.data[k][j]
                    if R.data[i][k]:
                        row[k * m + j] = row[k * m + j] - R.data[i][k]
                rows.append(row)
    return m * m - rank(Mat(F, rows, m * m))
