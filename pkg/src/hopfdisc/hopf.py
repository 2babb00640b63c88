"""Hopf families over a central Hopf subalgebra and their fiber algebras.

A family fixes generators of H, a central Hopf subalgebra C given by its
generators z_j, and the Hopf structure on both. A point of maxSpec C is a
``CentralPoint``; ``specialize`` builds the finite-dimensional fiber H/mH.

Coproducts are evaluated fiberwise: for points p and q the coproduct
descends to an algebra map fiber(p*q) -> fiber(p) (x) fiber(q), which is
computed on basis words and then verified to be multiplicative.
"""

from __future__ import annotations

import ast
import itertools
import threading
from dataclasses import dataclass, field as dc_field

from .algebra import (AlgMod, FinDimAlg, NotAssociative, block_of, characters,
                      make_algebra, semisimple_quotient, simple_modules)
from .arith import CycEl, CyclotomicField, field, format_element, parse_element
from .linalg import Mat, inverse as mat_inverse, kron, rank


class HopfError(Exception):
    pass


class InvalidPoint(HopfError):
    pass


class RewriteDiverged(HopfError):
    """The presentation does not give an associative fiber."""


class AntipodeNotInvertible(HopfError):
    pass


class HopfAxiomFailed(HopfError):
    pass


# -- central points ------------------------------------------------------------

@dataclass(frozen=True)
class CentralPoint:
    """A character of C, stored as its values on the generators of C."""

    names: tuple
    values: tuple

    def __getitem__(self, name):
        return self.values[self.names.index(name)]

    def as_dict(self):
        return dict(zip(self.names, self.values))

    def __str__(self):
        if not self.names:
            return "(*)"
        return "(" + ", ".join(f"{n}={format_element(v)}" for n, v in
                               zip(self.names, self.values)) + ")"

    def to_json(self):
        return {n: str(v) for n, v in zip(self.names, self.values)}


# -- central expressions: Laurent polynomials in the generators of C -----------

class Expr:
    """Laurent polynomial ``{exponent tuple: coefficient}`` in named variables."""

    __slots__ = ("names", "terms")

    def __init__(self, names, terms):
        self.names = tuple(names)
        self.terms = {e: c for e, c in terms.items() if c}

    @classmethod
    def const(cls, names, c):
        return cls(names, {(0,) * len(names): c})

    def evaluate(self, values, F):
        total = F.zero
        for exps, c in self.terms.items():
            term = F.coerce(c)
            for v, e in zip(values, exps):
                if e:
                    if e < 0 and not v:
                        raise InvalidPoint("negative power of a zero coordinate")
                    term = term * v ** e
            total = total + term
        return total

    def __str__(self):
        return format_expr(self)


def _parse_poly(text, names, F):
    """Parse ``text`` into an Expr over ``names``; z/zeta is the field generator."""
    names = tuple(names)
    nv = len(names)
    text = str(text).replace("^", "**")
    try:
        tree = ast.parse(text, mode="eval").body
    except SyntaxError as exc:
        raise HopfError(f"cannot parse expression {text!r}") from exc

    def const(c):
        return {(0,) * nv: c}

    def mul(a, b):
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, F.zero) + ca * cb
        return {e: c for e, c in out.items() if c}

    def add(a, b, sign=1):
        out = dict(a)
        for e, c in b.items():
            out[e] = out.get(e, F.zero) + (c if sign > 0 else -c)
        return {e: c for e, c in out.items() if c}

    def ev(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return const(F.rational(node.value))
        if isinstance(node, ast.Name):
            if node.id in names:
                e = [0] * nv
                e[names.index(node.id)] = 1
                return {tuple(e): F.one}
            if node.id in ("z", "zeta"):
                return const(F.zeta(1))
            raise HopfError(f"unknown symbol {node.id!r} in {text!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return {e: -c for e, c in v.items()} if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Add):
                return add(ev(node.left), ev(node.right))
            if isinstance(node.op, ast.Sub):
                return add(ev(node.left), ev(node.right), -1)
            if isinstance(node.op, ast.Mult):
                return mul(ev(node.left), ev(node.right))
            if isinstance(node.op, ast.Div):
                den = ev(node.right)
                if len(den) != 1 or any(next(iter(den))):
                    raise HopfError(f"only division by constants is supported: {text!r}")
                inv = next(iter(den.values())).inverse()
                return {e: c * inv for e, c in ev(node.left).items()}
            if isinstance(node.op, ast.Pow):
                k = _int_of(node.right)
                base = ev(node.left)
                if k < 0:
                    if len(base) != 1:
                        raise HopfError(f"negative power of a sum in {text!r}")
                    (e, c), = base.items()
                    return {tuple(k * x for x in e): c.inverse() ** (-k)}
                out = const(F.one)
                for _ in range(k):
                    out = mul(out, base)
                return out
        raise HopfError(f"unsupported syntax in {text!r}")

    return Expr(names, ev(tree))


def _int_of(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_of(node.operand)
    raise HopfError("exponents must be integer literals")


def parse_expr(text, names, F) -> Expr:
    return _parse_poly(text, names, F)


def format_expr(e: Expr) -> str:
    if not e.terms:
        return "0"
    parts = []
    for exps, c in sorted(e.terms.items()):
        mon = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(e.names, exps) if k)
        cs = format_element(c)
        if not mon:
            parts.append(f"({cs})" if " " in cs else cs)
        elif cs == "1":
            parts.append(mon)
        elif cs == "-1":
            parts.append("-" + mon)
        else:
            parts.append(f"({cs})*{mon}" if " " in cs else f"{cs}*{mon}")
    return " + ".join(parts).replace("+ -", "- ")


def parse_word(text: str):
    """``"y*g^-1"`` -> (("y", 1), ("g", -1)); ``"1"`` -> ()."""
    text = text.replace(" ", "")
    if text in ("", "1"):
        return ()
    out = []
    for tok in text.split("*"):
        if "^" in tok:
            name, k = tok.split("^")
            out.append((name, int(k.strip("()"))))
        else:
            out.append((tok, 1))
    return tuple(out)


def format_word(word) -> str:
    if not word:
        return "1"
    return "*".join(n if k == 1 else f"{n}^{k}" for n, k in word)


# -- fibers --------------------------------------------------------------------

class FiberAlgebra:
    """The fiber algebra at a point, with the images of the generators of H."""

    def __init__(self, family, point: CentralPoint, alg: FinDimAlg, letters=None, words=None):
        self.family = family
        self.point = point
        self.alg = alg
        self.letters = letters or {}
        self.words = words
        self._pow = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"FiberAlgebra({self.family.name}, {self.point}, dim={self.alg.dim})"

    @property
    def dim(self):
        return self.alg.dim

    def letter_power(self, name, k):
        key = (name, k)
        with self._lock:
            if key in self._pow:
                return self._pow[key]
        A = self.alg
        if k == 0:
            v = list(A.unit)
        elif k > 0:
            v = A.power(self.letters[name], k)
        else:
            inv = element_inverse(A, self.letters[name])
            if inv is None:
                raise InvalidPoint(f"generator {name} is not invertible in the fiber at {self.point}")
            v = A.power(inv, -k)
        with self._lock:
            self._pow[key] = v
        return v

    def word_vector(self, word):
        A = self.alg
        v = list(A.unit)
        for name, k in word:
            v = A.mul(v, self.letter_power(name, k))
        return v

    def sd(self):
        return self.alg.sd()


def element_inverse(A: FinDimAlg, a):
    from .linalg import solve
    x = solve(A.left_mult_matrix(a), A.unit)
    if x is None or A.mul(x, a) != A.unit:
        return None
    return x


# -- tensor products of algebras (sparse) --------------------------------------

def tensor_mul(A: FinDimAlg, B: FinDimAlg, u: dict, v: dict) -> dict:
    F = A.F
    out = {}
    for (i, j), a in u.items():
        for (k, l), b in v.items():
            ab = a * b
            left = A.table[i][k]
            right = B.table[j][l]
            if not left or not right:
                continue
            for m, c in left.items():
                cab = c * ab
                for n, d in right.items():
                    key = (m, n)
                    out[key] = out.get(key, F.zero) + cab * d
    return {k: c for k, c in out.items() if c}


def tensor_vec(F, u, v) -> dict:
    out = {}
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                if b:
                    out[(i, j)] = a * b
    return out


def tensor_add(F, u: dict, v: dict, scale=None) -> dict:
    out = dict(u)
    for k, c in v.items():
        c = c * scale if scale is not None else c
        out[k] = out.get(k, F.zero) + c
    return {k: c for k, c in out.items() if c}


def tensor_one(A, B):
    return tensor_vec(A.F, A.unit, B.unit)


@dataclass
class DeltaMap:
    """The fiberwise coproduct fiber(p*q) -> fiber(p) (x) fiber(q)."""

    source: FiberAlgebra
    left: FiberAlgebra
    right: FiberAlgebra
    images: list              # one sparse dict {(i, j): c} per source basis element

    def apply(self, v) -> dict:
        F = self.source.alg.F
        out = {}
        for k, c in enumerate(v):
            if c:
                out = tensor_add(F, out, self.images[k], c)
        return out

    def matrix(self) -> Mat:
        F = self.source.alg.F
        dl, dr = self.left.dim, self.right.dim
        rows = [[F.zero] * self.source.dim for _ in range(dl * dr)]
        for k, img in enumerate(self.images):
            for (i, j), c in img.items():
                rows[i * dr + j][k] = c
        return Mat(F, rows, self.source.dim)


# -- families ------------------------------------------------------------------

@dataclass
class CentralGen:
    name: str
    invertible: bool
    monomial: str = ""      # the element of H it names, e.g. "y^2"


class HopfFamily:
    """Base class: central data, convolution and the fiberwise Hopf maps."""

    engine = "abstract"

    def __init__(self, name, F: CyclotomicField, central, *, central_relations=(),
                 central_delta=None, central_counit=None, central_antipode=None,
                 ch_degree=None, params=None, experimental=False, trace="regular",
                 description=""):
        self.name = name
        self.F = F
        self.central = list(central)
        self.cnames = tuple(c.name for c in self.central)
        self.central_relations = [self._expr(r) for r in central_relations]
        self.central_delta = {k: [(F.coerce(c), tuple(a), tuple(b)) for c, a, b in v]
                              for k, v in (central_delta or {}).items()}
        self.central_counit = {k: F.coerce(v) for k, v in (central_counit or {}).items()}
        self.central_antipode = {k: self._expr(v) for k, v in (central_antipode or {}).items()}
        self.ch_degree = ch_degree
        self.params = dict(params or {})
        self.experimental = experimental
        self.trace = trace
        self.description = description
        self._fibers = {}
        self._deltas = {}
        self._antipodes = {}
        self._lock = threading.RLock()

    def __repr__(self):
        ps = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{type(self).__name__}({self.name}({ps}), N={self.F.n})"

    def _expr(self, e):
        if isinstance(e, Expr):
            return e
        return parse_expr(e, self.cnames, self.F)

    # -- points --------------------------------------------------------------
    def point(self, *args, **kwargs) -> CentralPoint:
        """Point from positional or keyword coordinates (elements, ints or text)."""
        if args and isinstance(args[0], dict):
            kwargs = args[0]
            args = ()
        if args:
            vals = list(args)
        else:
            vals = [kwargs[n] for n in self.cnames]
        vals = [parse_element(v, self.F.n) if isinstance(v, str) else self.F.coerce(v)
                for v in vals]
        p = CentralPoint(self.cnames, tuple(vals))
        self.validate_point(p)
        return p

    def validate_point(self, p: CentralPoint):
        if p.names != self.cnames:
            raise InvalidPoint(f"point coordinates {p.names} do not match {self.cnames}")
        for g, v in zip(self.central, p.values):
            if v.F is not self.F:
                raise InvalidPoint(f"coordinate {g.name} is not in Q(zeta_{self.F.n})")
            if g.invertible and not v:
                raise InvalidPoint(f"coordinate {g.name} must be nonzero")
        for r in self.central_relations:
            if r.evaluate(p.values, self.F):
                raise InvalidPoint(f"relation {format_expr(r)} = 0 fails at {p}")

    def is_valid(self, p) -> bool:
        try:
            self.validate_point(p)
            return True
        except InvalidPoint:
            return False

    def identity_point(self) -> CentralPoint:
        return CentralPoint(self.cnames, tuple(self.central_counit[n] for n in self.cnames))

    def convolve(self, p: CentralPoint, q: CentralPoint) -> CentralPoint:
        F = self.F
        vals = []
        for n in self.cnames:
            s = F.zero
            for c, a, b in self.central_delta[n]:
                s = s + c * _mono(p.values, a, F) * _mono(q.values, b, F)
            vals.append(s)
        return CentralPoint(self.cnames, tuple(vals))

    def inverse_point(self, p: CentralPoint) -> CentralPoint:
        vals = tuple(self.central_antipode[n].evaluate(p.values, self.F) for n in self.cnames)
        r = CentralPoint(self.cnames, vals)
        e = self.identity_point()
        if self.convolve(p, r) != e or self.convolve(r, p) != e:
            raise HopfAxiomFailed(f"antipode on C does not invert {p}")
        return r

    def default_points(self, max_points=None):
        """All points with coordinates in the N-th roots of unity (plus 0 for
        non-invertible coordinates) that are valid for the family."""
        F = self.F
        roots = F.roots_of_unity()
        axes = [roots if g.invertible else [F.zero] + roots for g in self.central]
        out = []
        for vals in itertools.product(*axes):
            p = CentralPoint(self.cnames, tuple(vals))
            if self.is_valid(p) and self.supports(p):
                out.append(p)
                if max_points and len(out) >= max_points:
                    break
        return out

    def supports(self, p) -> bool:
        """Whether the fiber engine can build the fiber at p."""
        return True

    # -- fibers --------------------------------------------------------------
    def specialize(self, p: CentralPoint) -> FiberAlgebra:
        with self._lock:
            if p in self._fibers:
                return self._fibers[p]
        self.validate_point(p)
        try:
            fib = self._build_fiber(p)
        except NotAssociative as exc:
            raise RewriteDiverged(f"fiber at {p} is not associative: {exc}") from exc
        if self.ch_degree is not None and fib.dim != self.ch_degree:
            raise HopfAxiomFailed(f"fiber at {p} has dimension {fib.dim} != {self.ch_degree}")
        with self._lock:
            return self._fibers.setdefault(p, fib)

    def _build_fiber(self, p) -> FiberAlgebra:
        raise NotImplementedError

    # hooks implemented by subclasses
    def _delta_images(self, src, fl, fr):
        raise NotImplementedError

    def _antipode_images(self, src, tgt):
        raise NotImplementedError

    def _counit_vector(self, fe):
        raise NotImplementedError

    # -- Hopf maps on fibers -------------------------------------------------
    def delta_fiber(self, p: CentralPoint, q: CentralPoint, verify=True) -> DeltaMap:
        key = (p, q)
        with self._lock:
            if key in self._deltas:
                return self._deltas[key]
        r = self.convolve(p, q)
        src, fl, fr = self.specialize(r), self.specialize(p), self.specialize(q)
        D = DeltaMap(src, fl, fr, self._delta_images(src, fl, fr))
        if verify:
            check_delta_homomorphism(D)
        with self._lock:
            return self._deltas.setdefault(key, D)

    def counit(self):
        """Counit of the identity fiber as a coordinate vector."""
        fe = self.specialize(self.identity_point())
        eps = self._counit_vector(fe)
        A = fe.alg
        if sum((a * b for a, b in zip(eps, A.unit)), A.F.zero) != A.F.one:
            raise HopfAxiomFailed("counit does not send 1 to 1")
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = eps[i] * eps[j]
                rhs = sum((c * eps[k] for k, c in A.table[i][j].items()), A.F.zero)
                if lhs != rhs:
                    raise HopfAxiomFailed(f"counit is not multiplicative on ({A.labels[i]}, {A.labels[j]})")
        return eps

    def antipode(self, p: CentralPoint) -> Mat:
        """Matrix of S: fiber(p) -> fiber(p^{-1}), columns are images of basis elements."""
        with self._lock:
            if p in self._antipodes:
                return self._antipodes[p]
        src = self.specialize(p)
        tgt = self.specialize(self.inverse_point(p))
        imgs = self._antipode_images(src, tgt)
        S = Mat(self.F, [list(r) for r in zip(*imgs)], src.dim)
        A, B = src.alg, tgt.alg
        # anti-multiplicative check
        for i in range(A.dim):
            for j in range(A.dim):
                prod = [A.F.zero] * B.dim
                for k, c in A.table[i][j].items():
                    prod = [x + c * y for x, y in zip(prod, imgs[k])]
                if prod != B.mul(imgs[j], imgs[i]):
                    raise HopfAxiomFailed(f"antipode is not anti-multiplicative at {p}")
        with self._lock:
            return self._antipodes.setdefault(p, S)

    # -- description / export ------------------------------------------------
    def describe(self) -> dict:
        e = self.identity_point()
        return {"name": self.name, "engine": self.engine, "params": self.params,
                "conductor": self.F.n, "ch_degree": self.ch_degree,
                "central": [c.name for c in self.central], "identity_point": e.to_json(),
                "experimental": self.experimental, "trace": self.trace,
                "description": self.description}


def _mono(values, exps, F):
    out = F.one
    for v, e in zip(values, exps):
        if e:
            if e < 0 and not v:
                raise InvalidPoint("negative power of a zero coordinate")
            out = out * v ** e
    return out


# -- presented families: generators, words and fiberwise Hopf data -------------

class PresentedFamily(HopfFamily):
    """Families whose fibers come with generator images and basis words.

    ``gen_delta[g]`` is a list of (coeff, word, word); ``gen_counit[g]`` a
    scalar; ``gen_antipode[g]`` a list of (coeff, word). Words are tuples of
    (generator, exponent) with negative exponents allowed for units.
    """

    def __init__(self, name, F, central, gen_delta, gen_counit, gen_antipode, **kw):
        super().__init__(name, F, central, **kw)
        self.gen_delta = {g: [(F.coerce(c), tuple(a), tuple(b)) for c, a, b in v]
                          for g, v in gen_delta.items()}
        self.gen_counit = {g: F.coerce(v) for g, v in gen_counit.items()}
        self.gen_antipode = {g: [(F.coerce(c), tuple(w)) for c, w in v]
                             for g, v in gen_antipode.items()}

    def _letter_delta(self, name, fl, fr):
        F = self.F
        out = {}
        for c, a, b in self.gen_delta[name]:
            out = tensor_add(F, out, tensor_vec(F, fl.word_vector(a), fr.word_vector(b)), c)
        return out

    def _delta_images(self, src, fl, fr):
        A, B = fl.alg, fr.alg
        one = tensor_one(A, B)
        cache = {}

        def letter_pow(name, k):
            if k < 0:
                raise HopfError("basis words must use nonnegative exponents")
            key = (name, k)
            if key not in cache:
                if k == 0:
                    cache[key] = one
                elif k == 1:
                    cache[key] = self._letter_delta(name, fl, fr)
                else:
                    cache[key] = tensor_mul(A, B, letter_pow(name, k - 1), letter_pow(name, 1))
            return cache[key]

        images = []
        for word in src.words:
            v = one
            for name, k in word:
                v = tensor_mul(A, B, v, letter_pow(name, k))
            images.append(v)
        return images

    def _counit_vector(self, fe):
        F = self.F
        out = []
        for word in fe.words:
            v = F.one
            for name, k in word:
                v = v * self.gen_counit[name] ** k
            out.append(v)
        return out

    def _antipode_images(self, src, tgt):
        B = tgt.alg
        F = self.F
        sgen = {}
        for g, terms in self.gen_antipode.items():
            v = [F.zero] * B.dim
            for c, w in terms:
                v = [x + c * y for x, y in zip(v, tgt.word_vector(w))]
            sgen[g] = v
        imgs = []
        for word in src.words:
            v = list(B.unit)
            for name, k in reversed(word):
                v = B.mul(v, B.power(sgen[name], k))
            imgs.append(v)
        return imgs


@dataclass
class Gen:
    name: str
    invertible: bool
    order: int


class QCommFamily(PresentedFamily):
    """Generators g_1..g_t with g_j g_i = q_ij g_i g_j (i < j) and
    g_i^{n_i} equal to a central expression.

    The ordered monomials g_1^{a_1}...g_t^{a_t}, 0 <= a_i < n_i, form the
    fiber basis. ``qcomm`` maps (name_i, name_j) to an Expr or text.
    """

    engine = "qcomm"

    def __init__(self, name, F, gens, qcomm, powers, central, gen_delta, gen_counit,
                 gen_antipode, **kw):
        super().__init__(name, F, central, gen_delta, gen_counit, gen_antipode, **kw)
        self.gens = list(gens)
        self.gnames = [g.name for g in self.gens]
        self.qcomm = {}
        for (a, b), e in qcomm.items():
            i, j = self.gnames.index(a), self.gnames.index(b)
            if i > j:
                raise HopfError("qcomm keys must follow generator order")
            self.qcomm[(i, j)] = self._expr(e)
        self.powers = {self.gnames.index(g): self._expr(e) for g, e in powers.items()}
        if len(self.powers) != len(self.gens):
            raise HopfError("every generator needs a power relation")
        deg = 1
        for g in self.gens:
            deg *= g.order
        if self.ch_degree is None:
            self.ch_degree = deg
        elif self.ch_degree != deg:
            raise HopfError(f"ch_degree {self.ch_degree} differs from rank {deg}")
        # local confluence on the identity fiber
        self.specialize(self.identity_point())

    def _build_fiber(self, p):
        F = self.F
        t = len(self.gens)
        pv = [self.powers[i].evaluate(p.values, F) for i in range(t)]
        for g, v in zip(self.gens, pv):
            if g.invertible and not v:
                raise InvalidPoint(f"power of invertible generator {g.name} vanishes at {p}")
        qv = {}
        for (i, j), e in self.qcomm.items():
            qv[(i, j)] = e.evaluate(p.values, F)
        alg, letters, words = qcomm_algebra(F, self.gnames, [g.order for g in self.gens], pv, qv)
        return FiberAlgebra(self, p, alg, letters, words)

    def to_toml_dict(self) -> dict:
        F = self.F
        return {
            "name": self.name,
            "engine": self.engine,
            "conductor": F.n,
            "ch_degree": self.ch_degree,
            "experimental": self.experimental,
            "description": self.description,
            "params": {k: v for k, v in self.params.items()},
            "trace": {"kind": self.trace},
            "generators": [{"name": g.name, "invertible": g.invertible, "order": g.order}
                           for g in self.gens],
            "qcomm": {f"{self.gnames[i]},{self.gnames[j]}": format_expr(e)
                      for (i, j), e in sorted(self.qcomm.items())},
            "powers": {self.gnames[i]: format_expr(e) for i, e in sorted(self.powers.items())},
            "central": [
                {"name": c.name, "invertible": c.invertible, "monomial": c.monomial,
                 "coproduct": [[format_element(k), _cm(self.cnames, a), _cm(self.cnames, b)]
                               for k, a, b in self.central_delta[c.name]],
                 "counit": format_element(self.central_counit[c.name]),
                 "antipode": format_expr(self.central_antipode[c.name])}
                for c in self.central],
            "central_relations": [format_expr(r) for r in self.central_relations],
            "coproduct": {g: [[format_element(c), format_word(a), format_word(b)]
                              for c, a, b in terms] for g, terms in self.gen_delta.items()},
            "counit": {g: format_element(v) for g, v in self.gen_counit.items()},
            "antipode": {g: [[format_element(c), format_word(w)] for c, w in terms]
                         for g, terms in self.gen_antipode.items()},
        }



def qcomm_algebra(F, names, orders, pv, qv):
    """Fiber of a q-commuting presentation on the ordered monomial basis.

    ``qv[(i, j)]`` (i < j) is the scalar with g_j g_i = q g_i g_j, missing
    pairs commute; ``pv[i]`` is the value of g_i^{n_i}.
    Returns the algebra, the generator images and the basis words.
    """
    t = len(names)
    monos = list(itertools.product(*[range(n) for n in orders]))
    index = {m: k for k, m in enumerate(monos)}
    d = len(monos)
    qpow = {}

    def qp(j, i, k):
        key = (j, i, k)
        if key not in qpow:
            qpow[key] = qv.get((j, i), F.one) ** k
        return qpow[key]

    table = [[None] * d for _ in range(d)]
    for x, a in enumerate(monos):
        for y, b in enumerate(monos):
            coeff = F.one
            # move g_i^{a_i} right past g_j^{b_j} for j < i
            for i in range(t):
                if not a[i]:
                    continue
                for j in range(i):
                    if b[j]:
                        coeff = coeff * qp(j, i, a[i] * b[j])
            c = list(a)
            for i in range(t):
                c[i] += b[i]
                if c[i] >= orders[i]:
                    c[i] -= orders[i]
                    coeff = coeff * pv[i]
            table[x][y] = {index[tuple(c)]: coeff} if coeff else {}
    labels = [_mono_label(names, m) for m in monos]
    unit = [F.one] + [F.zero] * (d - 1)
    alg = FinDimAlg(F, d, labels, table, unit, check=True)
    letters = {}
    for i, name in enumerate(names):
        v = [F.zero] * d
        if orders[i] == 1:
            v[0] = pv[i]
        else:
            e = [0] * t
            e[i] = 1
            v[index[tuple(e)]] = F.one
        letters[name] = v
    words = [tuple((names[i], k) for i, k in enumerate(m) if k) for m in monos]
    return alg, letters, words


def _cm(names, exps):
    return format_word(tuple((n, k) for n, k in zip(names, exps) if k))


def _mono_label(names, exps):
    return format_word(tuple((n, k) for n, k in zip(names, exps) if k))


def _central_exps(names, text):
    word = parse_word(text)
    e = [0] * len(names)
    for n, k in word:
        e[names.index(n)] += k
    return tuple(e)


def family_from_toml_dict(d: dict) -> HopfFamily:
    """Inverse of ``QCommFamily.to_toml_dict`` (other engines dispatch by name)."""
    engine = d.get("engine", "qcomm")
    if engine != "qcomm":
        from . import families
        return families.build(d["name"], d.get("params", {}), conductor=d.get("conductor"),
                              enable_experimental=True)
    F = field(int(d["conductor"]))
    central = [CentralGen(c["name"], bool(c["invertible"]), c.get("monomial", ""))
               for c in d.get("central", [])]
    cnames = [c.name for c in central]
    gens = [Gen(g["name"], bool(g["invertible"]), int(g["order"])) for g in d["generators"]]

    def el(s):
        return parse_element(str(s), F.n)

    return QCommFamily(
        d["name"], F, gens,
        {tuple(k.split(",")): v for k, v in d.get("qcomm", {}).items()},
        d["powers"], central,
        {g: [(el(c), parse_word(a), parse_word(b)) for c, a, b in terms]
         for g, terms in d["coproduct"].items()},
        {g: el(v) for g, v in d["counit"].items()},
        {g: [(el(c), parse_word(w)) for c, w in terms] for g, terms in d["antipode"].items()},
        central_relations=d.get("central_relations", []),
        central_delta={c["name"]: [(el(k), _central_exps(cnames, a), _central_exps(cnames, b))
                                   for k, a, b in c["coproduct"]] for c in d.get("central", [])},
        central_counit={c["name"]: el(c["counit"]) for c in d.get("central", [])},
        central_antipode={c["name"]: c["antipode"] for c in d.get("central", [])},
        ch_degree=d.get("ch_degree"), params=d.get("params", {}),
        experimental=bool(d.get("experimental", False)),
        trace=d.get("trace", {}).get("kind", "regular"), description=d.get("description", ""))


# -- finite Hopf algebras (C = k) ----------------------------------------------

class FiniteHopfFamily(HopfFamily):
    """A finite-dimensional Hopf algebra with C = k: a single point."""

    engine = "finite"

    def __init__(self, name, alg: FinDimAlg, delta, counit, antipode, **kw):
        super().__init__(name, alg.F, [], central_delta={}, central_counit={},
                         central_antipode={}, ch_degree=alg.dim, **kw)
        self._alg = alg
        self._delta = [dict(img) for img in delta]
        self._eps = list(counit)
        self._S = [list(col) for col in antipode]

    def _build_fiber(self, p):
        return FiberAlgebra(self, p, self._alg)

    def _delta_images(self, src, fl, fr):
        return [dict(img) for img in self._delta]

    def _counit_vector(self, fe):
        return list(self._eps)

    def _antipode_images(self, src, tgt):
        return [list(c) for c in self._S]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "algebra": self._alg.to_json(),
            "delta": [[k, [[i, j, str(c)] for (i, j), c in sorted(img.items())]]
                      for k, img in enumerate(self._delta)],
            "counit": [str(c) for c in self._eps],
            "antipode": [[k, [[j, str(c)] for j, c in enumerate(col) if c]]
                         for k, col in enumerate(self._S)],
        }


def finite_family_from_json(obj) -> FiniteHopfFamily:
    from .algebra import algebra_from_json
    A = algebra_from_json(obj["algebra"])
    n = A.F.n

    def el(s):
        return parse_element(s, n)

    delta = [None] * A.dim
    for k, terms in obj["delta"]:
        delta[k] = {(i, j): el(c) for i, j, c in terms}
    S = [[A.F.zero] * A.dim for _ in range(A.dim)]
    for k, terms in obj["antipode"]:
        for j, c in terms:
            S[k][j] = el(c)
    fam = FiniteHopfFamily(obj["name"], A, delta, [el(c) for c in obj["counit"]], S,
                           description=obj.get("description", ""))
    verify_finite_hopf(fam)
    return fam


def finite_hopf_from_points(family: HopfFamily, points, name=None) -> FiniteHopfFamily:
    """The Hopf algebra H/IH for the ideal I of a finite subgroup of maxSpec C,
    realized as the direct product of the fibers over the subgroup."""
    pts = list(points)
    pset = set(pts)
    e = family.identity_point()
    if e not in pset:
        raise HopfError("point set must contain the identity")
    for p in pts:
        if family.inverse_point(p) not in pset:
            raise HopfError(f"point set is not closed under inverses at {p}")
        for q in pts:
            if family.convolve(p, q) not in pset:
                raise HopfError("point set is not closed under convolution")
    fibers = [family.specialize(p) for p in pts]
    offs, tot = {}, 0
    for p, f in zip(pts, fibers):
        offs[p] = tot
        tot += f.dim
    F = family.F
    table = [[{} for _ in range(tot)] for _ in range(tot)]
    labels, unit = [], []
    for p, f in zip(pts, fibers):
        o = offs[p]
        A = f.alg
        for i in range(A.dim):
            for j in range(A.dim):
                table[o + i][o + j] = {o + k: c for k, c in A.table[i][j].items()}
        labels += [f"{lab}@{p}" for lab in A.labels]
        unit += list(A.unit)
    alg = FinDimAlg(F, tot, labels, table, unit)
    delta = [dict() for _ in range(tot)]
    for p in pts:
        for q in pts:
            D = family.delta_fiber(p, q)
            r = family.convolve(p, q)
            for k, img in enumerate(D.images):
                tgt = delta[offs[r] + k]
                for (i, j), c in img.items():
                    key = (offs[p] + i, offs[q] + j)
                    tgt[key] = tgt.get(key, F.zero) + c
    eps = [F.zero] * tot
    for k, c in enumerate(family.counit()):
        eps[offs[e] + k] = c
    S = [[F.zero] * tot for _ in range(tot)]
    for p in pts:
        M = family.antipode(p)
        pi = family.inverse_point(p)
        for k in range(M.cols):
            for j in range(M.rows):
                S[offs[p] + k][offs[pi] + j] = M.data[j][k]
    fam = FiniteHopfFamily(name or f"{family.name}/subgroup", alg, delta, eps, S)
    verify_finite_hopf(fam)
    return fam


def verify_finite_hopf(fam: FiniteHopfFamily):
    """Multiplicativity of delta, coassociativity, counit and antipode axioms."""
    e = fam.identity_point()
    D = fam.delta_fiber(e, e)
    check_coassociativity(fam, e, e, e)
    check_counit_axioms(fam, e)
    check_antipode_axiom(fam)
    fam.antipode(e)
    return True


# -- checks on the fiberwise Hopf maps -----------------------------------------

def check_delta_homomorphism(D: DeltaMap):
    A = D.source.alg
    L, R = D.left.alg, D.right.alg
    if D.apply(A.unit) != tensor_one(L, R):
        raise HopfAxiomFailed("fiber coproduct is not unital")
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = tensor_mul(L, R, D.images[i], D.images[j])
            rhs = {}
            for k, c in A.table[i][j].items():
                rhs = tensor_add(A.F, rhs, D.images[k], c)
            if lhs != rhs:
                raise HopfAxiomFailed(
                    f"fiber coproduct is not multiplicative on ({A.labels[i]}, {A.labels[j]}) "
                    f"at {D.left.point} * {D.right.point}")
    return True


def check_coassociativity(family, p, q, r):
    """(D_{p,q} (x) id) D_{pq,r} = (id (x) D_{q,r}) D_{p,qr} on every basis element."""
    F = family.F
    pq, qr = family.convolve(p, q), family.convolve(q, r)
    if family.convolve(pq, r) != family.convolve(p, qr):
        raise HopfAxiomFailed("convolution is not associative")
    D1, D2 = family.delta_fiber(pq, r), family.delta_fiber(p, q)
    E1, E2 = family.delta_fiber(p, qr), family.delta_fiber(q, r)
    for k in range(D1.source.dim):
        lhs = {}
        for (i, j), c in D1.images[k].items():
            for (a, b), d in D2.images[i].items():
                key = (a, b, j)
                lhs[key] = lhs.get(key, F.zero) + c * d
        rhs = {}
        for (i, j), c in E1.images[k].items():
            for (a, b), d in E2.images[j].items():
                key = (i, a, b)
                rhs[key] = rhs.get(key, F.zero) + c * d
        if {k_: v for k_, v in lhs.items() if v} != {k_: v for k_, v in rhs.items() if v}:
            raise HopfAxiomFailed(f"coassociativity fails on basis element {k} at {p},{q},{r}")
    return True


def check_counit_axioms(family, p):
    F = family.F
    e = family.identity_point()
    eps = family.counit()
    Dl, Dr = family.delta_fiber(e, p), family.delta_fiber(p, e)
    d = Dl.source.dim
    for k in range(d):
        left = [F.zero] * d
        for (i, j), c in Dl.images[k].items():
            if eps[i]:
                left[j] = left[j] + c * eps[i]
        right = [F.zero] * d
        for (i, j), c in Dr.images[k].items():
            if eps[j]:
                right[i] = right[i] + c * eps[j]
        unit = [F.one if t == k else F.zero for t in range(d)]
        if left != unit or right != unit:
            raise HopfAxiomFailed(f"counit axiom fails on basis element {k} at {p}")
    return True


def check_antipode_axiom(family):
    """m (S (x) id) D = u eps = m (id (x) S) D on the identity fiber."""
    e = family.identity_point()
    fe = family.specialize(e)
    A = fe.alg
    F = A.F
    S = family.antipode(e)
    Scols = [S.col(k) for k in range(A.dim)]
    eps = family.counit()
    D = family.delta_fiber(e, e)
    for k in range(A.dim):
        left = [F.zero] * A.dim
        right = [F.zero] * A.dim
        for (i, j), c in D.images[k].items():
            left = [x + c * y for x, y in zip(left, A.mul(Scols[i], A.basis_vector(j)))]
            right = [x + c * y for x, y in zip(right, A.mul(A.basis_vector(i), Scols[j]))]
        target = [eps[k] * u for u in A.unit]
        if left != target or right != target:
            raise HopfAxiomFailed(f"antipode axiom fails on {A.labels[k]}")
    return True


# -- modules -------------------------------------------------------------------

def _point_of(M: AlgMod):
    return M.info.get("point")


def tag(M: AlgMod, point, **extra) -> AlgMod:
    M.info["point"] = point
    M.info.update(extra)
    return M


def fiber_simples(family, p, seed=None, strict=True):
    fib = family.specialize(p)
    kw = {} if seed is None else {"seed": seed}
    mods = simple_modules(fib.alg, strict=strict, **kw)
    return [tag(M, p, index=k) for k, M in enumerate(mods)]


def fiber_characters(family, p):
    fib = family.specialize(p)
    return [tag(M, p, index=M.info.get("index")) for M in characters(fib.alg)]


def tensor_module(family, V: AlgMod, W: AlgMod, check=True) -> AlgMod:
    p, q = _point_of(V), _point_of(W)
    D = family.delta_fiber(p, q)
    F = family.F
    m = V.dim * W.dim
    action = []
    kcache = {}
    for img in D.images:
        acc = Mat.zeros(F, m, m)
        for (i, j), c in img.items():
            key = (i, j)
            if key not in kcache:
                kcache[key] = kron(V.action[i], W.action[j])
            acc = acc + kcache[key].scale(c)
        action.append(acc)
    M = AlgMod(D.source.alg, m, action, check=check,
               info={"point": family.convolve(p, q), "kind": "tensor"})
    return M


def dual_module(family, V: AlgMod, side="left", check=True) -> AlgMod:
    """Left dual (h f)(v) = f(S(h) v); right dual uses the inverse antipode."""
    p = _point_of(V)
    pinv = family.inverse_point(p)
    if side == "left":
        S = family.antipode(pinv)           # fiber(p^{-1}) -> fiber(p)
    elif side == "right":
        Sp = family.antipode(p)             # fiber(p) -> fiber(p^{-1})
        S = mat_inverse(Sp)
        if S is None:
            raise AntipodeNotInvertible(f"antipode at {p} is singular")
    else:
        raise ValueError("side must be 'left' or 'right'")
    tgt = family.specialize(pinv).alg
    action = []
    for k in range(tgt.dim):
        action.append(V.rho(S.col(k)).transpose())
    return AlgMod(tgt, V.dim, action, check=check,
                  info={"point": pinv, "kind": f"{side}-dual"})


def bigalois_check(family, p) -> bool:
    """Both canonical Galois maps of fiber(p) over the identity fiber are bijective."""
    e = family.identity_point()
    if family.convolve(p, e) != p or family.convolve(e, p) != p:
        raise HopfAxiomFailed("identity point is not a unit for convolution")
    fp = family.specialize(p)
    fe = family.specialize(e)
    A, E = fp.alg, fe.alg
    d, de = A.dim, E.dim
    F = family.F
    Dr = family.delta_fiber(p, e)
    Dl = family.delta_fiber(e, p)
    cols_r, cols_l = [], []
    for i in range(d):
        bi = A.basis_vector(i)
        for j in range(d):
            bj = A.basis_vector(j)
            # beta_r(b_i (x) b_j) = sum b_i b_j(0) (x) b_j(1)
            col = [F.zero] * (d * de)
            for (k, l), c in Dr.images[j].items():
                for m, a in A.table[i][k].items():
                    col[m * de + l] = col[m * de + l] + c * a
            cols_r.append(col)
            # beta_l(b_i (x) b_j) = sum b_i(-1) (x) b_i(0) b_j
            col = [F.zero] * (de * d)
            for (k, l), c in Dl.images[i].items():
                for m, a in A.table[l][j].items():
                    col[k * d + m] = col[k * d + m] + c * a
            cols_l.append(col)
    Mr = Mat(F, cols_r, d * de)
    Ml = Mat(F, cols_l, de * d)
    return rank(Mr) == d * de and rank(Ml) == d * de and d == de


@dataclass
class CoidealResult:
    holds: bool
    hypothesis: bool
    p: CentralPoint
    q: CentralPoint
    witness: object = None

    def __bool__(self):
        return self.holds


def radical_coideal_check(family, p, q, delta=None) -> CoidealResult:
    """Whether D_{p,q}(J_{pq}) lies in J_p (x) H_q + H_p (x) J_q.

    Membership is tested after projecting to (H_p/J_p) (x) (H_q/J_q), where
    that subspace is exactly the kernel.
    """
    e = family.identity_point()
    D = delta if delta is not None else family.delta_fiber(p, q)
    src = D.source.alg
    Qp = semisimple_quotient(D.left.alg)
    Qq = semisimple_quotient(D.right.alg)
    sd_e = family.specialize(e).sd()
    hyp = D.left.alg.sd() == sd_e or D.right.alg.sd() == sd_e
    F = family.F
    dl, dr = D.left.dim, D.right.dim
    projL = [Qp.project(D.left.alg.basis_vector(i)) for i in range(dl)]
    projR = [Qq.project(D.right.alg.basis_vector(j)) for j in range(dr)]
    for r in src.radical().basis:
        img = D.apply(r)
        out = {}
        for (i, j), c in img.items():
            for a, x in enumerate(projL[i]):
                if not x:
                    continue
                for b, y in enumerate(projR[j]):
                    if y:
                        out[(a, b)] = out.get((a, b), F.zero) + c * x * y
        if any(out.values()):
            return CoidealResult(False, hyp, p, q, witness=r)
    return CoidealResult(True, hyp, p, q)


@dataclass
class OrbitInfo:
    orbit_size: int
    stabilizer_order: int
    maximally_stable: bool
    orbit_blocks: list = dc_field(default_factory=list)


def character_action_orbit(family, p, V: AlgMod) -> OrbitInfo:
    """Orbit of [V] under chi |-> chi (x) V for characters chi of the identity fiber."""
    e = family.identity_point()
    chars = fiber_characters(family, e)
    fib = family.specialize(p)
    home = block_of(fib.alg, V)
    blocks = []
    stab = 0
    for chi in chars:
        M = tensor_module(family, chi, V, check=False)
        b = block_of(fib.alg, M)
        blocks.append(b)
        if b == home:
            stab += 1
    orbit = sorted(set(b for b in blocks if b is not None))
    return OrbitInfo(len(orbit), stab, stab == V.dim ** 2, orbit)


def has_character(fib: FiberAlgebra) -> bool:
    return bool(characters(fib.alg))
