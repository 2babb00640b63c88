"""Exact scalars: rationals and the cyclotomic fields Q(zeta_N).

Elements of Q(zeta_N) are stored as coefficient vectors in the power basis
1, z, ..., z^(phi(N)-1), reduced modulo the N-th cyclotomic polynomial, so
equal field elements always have identical coefficient tuples.
"""

from __future__ import annotations

import ast
from functools import lru_cache
from math import gcd

from gmpy2 import mpq

Rat = mpq


class ArithError(ArithmeticError):
    pass


class ConductorMismatch(ArithError):
    pass


class DivisionByZero(ArithError, ZeroDivisionError):
    pass


def _poly_divmod(num, den):
    # dense polynomials, lowest degree first, coefficients mpq
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dd:
        return [Rat(0)], num
    q = [Rat(0)] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k] / lead
        q[k - dd] = c
        if c:
            for i, d in enumerate(den):
                num[k - dd + i] -= c * d
    rem = num[:dd] or [Rat(0)]
    return q, rem


def _trim(p):
    p = list(p)
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    num = [Rat(-1)] + [Rat(0)] * (n - 1) + [Rat(1)]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not any(rem)
    return tuple(_trim(num))


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def field(n: int) -> "CyclotomicField":
    return CyclotomicField(n)


class CyclotomicField:
    """The field Q(zeta_n) together with its reduction tables."""

    def __init__(self, n: int):
        self.n = n
        self.phi_poly = cyclotomic_polynomial(n)
        self.degree = len(self.phi_poly) - 1
        d = self.degree
        # z^k for d <= k <= 2d-2 in the power basis
        self._red = {}
        cur = [Rat(0)] * d
        cur[0] = Rat(1)
        for k in range(1, 2 * d - 1):
            top = cur[-1]
            cur = [Rat(0)] + cur[:-1]
            if top:
                for i in range(d):
                    cur[i] -= top * self.phi_poly[i]
            if k >= d:
                self._red[k] = tuple(cur)
        self.zero = CycEl(self, (Rat(0),) * d)
        self.one = self.rational(1)
        self._zeta_pows = [self._zeta_pow_slow(k) for k in range(n)]

    def __repr__(self):
        return f"CyclotomicField({self.n})"

    def __reduce__(self):
        return (field, (self.n,))

    def rational(self, q) -> "CycEl":
        c = [Rat(0)] * self.degree
        c[0] = Rat(q)
        return CycEl(self, tuple(c))

    def from_coeffs(self, coeffs) -> "CycEl":
        """Element from an arbitrary-length power-basis vector (reduced here)."""
        coeffs = [Rat(c) for c in coeffs]
        return CycEl(self, self._reduce(coeffs))

    def _reduce(self, prod):
        d = self.degree
        if len(prod) <= d:
            return tuple(prod) + (Rat(0),) * (d - len(prod))
        if len(prod) > 2 * d - 1:
            _, rem = _poly_divmod(prod, self.phi_poly)
            return tuple(rem) + (Rat(0),) * (d - len(rem))
        out = prod[:d]
        for k in range(d, len(prod)):
            c = prod[k]
            if c:
                r = self._red[k]
                for i in range(d):
                    if r[i]:
                        out[i] += c * r[i]
        return tuple(out)

    def _zeta_pow_slow(self, k):
        k %= self.n
        c = [Rat(0)] * (k + 1)
        c[k] = Rat(1)
        return self.from_coeffs(c) if k >= self.degree else CycEl(
            self, tuple(c) + (Rat(0),) * (self.degree - k - 1))

    def zeta(self, k: int = 1) -> "CycEl":
        return self._zeta_pows[k % self.n]

    def coerce(self, x) -> "CycEl":
        if isinstance(x, CycEl):
            if x.F is not self:
                raise ConductorMismatch(f"conductor {x.F.n} used in Q(zeta_{self.n})")
            return x
        return self.rational(x)

    def parse(self, text) -> "CycEl":
        return parse_element(str(text), self.n)

    def roots_of_unity(self):
        return [self.zeta(k) for k in range(self.n)]


def root_of_unity(n: int, k: int) -> "CycEl":
    """zeta_n^k reduced in Q(zeta_n)."""
    return field(n).zeta(k)


class CycEl:
    """Immutable element of Q(zeta_N)."""

    __slots__ = ("F", "c")

    def __init__(self, F: CyclotomicField, coeffs: tuple):
        self.F = F
        self.c = coeffs

    @property
    def conductor(self) -> int:
        return self.F.n

    def _other(self, o):
        if isinstance(o, CycEl):
            if o.F is not self.F:
                raise ConductorMismatch(f"cannot combine conductors {self.F.n} and {o.F.n}")
            return o
        if isinstance(o, (int, type(Rat(0)))) or hasattr(o, "denominator"):
            return self.F.rational(o)
        return NotImplemented

    def __add__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return CycEl(self.F, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return CycEl(self.F, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return CycEl(self.F, tuple(-a for a in self.c))

    def __mul__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        a, b = self.c, o.c
        if not any(a[1:]):
            s = a[0]
            return CycEl(self.F, tuple(s * y for y in b))
        if not any(b[1:]):
            s = b[0]
            return CycEl(self.F, tuple(s * x for x in a))
        d = len(a)
        prod = [Rat(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycEl(self.F, self.F._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "CycEl":
        if not self:
            raise DivisionByZero("inverse of zero in Q(zeta_%d)" % self.F.n)
        if not any(self.c[1:]):
            return self.F.rational(1 / self.c[0])
        # extended Euclid on (self, Phi_N)
        r0, r1 = list(self.F.phi_poly), _trim(self.c)
        s0, s1 = [Rat(0)], [Rat(1)]
        while len(r1) > 1 or r1[0] == 0:
            q, r = _poly_divmod(r0, r1)
            r = _trim(r)
            s = _poly_sub(s0, _poly_mul(q, s1))
            r0, r1, s0, s1 = r1, r, s1, s
        inv = [x / r1[0] for x in s1]
        out = self.F.from_coeffs(inv)
        assert (out * self).is_one()
        return out

    def __truediv__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.F.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return any(self.c)

    def is_one(self) -> bool:
        return self.c[0] == 1 and not any(self.c[1:])

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __eq__(self, o):
        if isinstance(o, CycEl):
            return o.F.n == self.F.n and o.c == self.c
        try:
            return self.is_rational() and self.c[0] == o
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash((self.F.n, self.c))

    def embed(self, n: int) -> "CycEl":
        """Image under Q(zeta_M) -> Q(zeta_n), zeta_M -> zeta_n^(n/M)."""
        m = self.F.n
        if n % m:
            raise ConductorMismatch(f"{m} does not divide {n}")
        step = n // m
        G = field(n)
        coeffs = [Rat(0)] * ((len(self.c) - 1) * step + 1)
        for i, x in enumerate(self.c):
            coeffs[i * step] = x
        return G.from_coeffs(coeffs)

    def __repr__(self):
        return f"CycEl({format_element(self)!r}, N={self.F.n})"

    def __str__(self):
        return format_element(self)


def _poly_mul(a, b):
    out = [Rat(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Rat(0)] * (n - len(a))
    b = list(b) + [Rat(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def multiplicative_order(x: CycEl, bound: int | None = None) -> int | None:
    """Smallest k >= 1 with x^k = 1, or None if none up to ``bound``."""
    bound = bound or 2 * x.F.n
    y = x
    for k in range(1, bound + 1):
        if y.is_one():
            return k
        y = y * x
    return None


# -- textual form -----------------------------------------------------------

def _fmt_rat(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_element(x: CycEl) -> str:
    terms = []
    for i, q in enumerate(x.c):
        if not q:
            continue
        mon = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
        if not mon:
            body = _fmt_rat(abs(q))
        elif abs(q) == 1:
            body = mon
        else:
            body = f"{_fmt_rat(abs(q))}*{mon}"
        terms.append(("-" if q < 0 else "+", body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


class ParseError(ValueError):
    pass


def parse_element(text: str, n: int) -> CycEl:
    """Parse ``a0 + a1*z + a2*z^2 ...`` (``zeta`` also accepted for z)."""
    F = field(n)
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse field element {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return F.rational(node.value)
        if isinstance(node, ast.Name) and node.id in ("z", "zeta"):
            return F.zeta(1)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = node.right
                sign = 1
                if isinstance(e, ast.UnaryOp) and isinstance(e.op, ast.USub):
                    sign, e = -1, e.operand
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                    raise ParseError(f"non-integer exponent in {text!r}")
                return ev(node.left) ** (sign * e.value)
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
        raise ParseError(f"unsupported syntax in field element {text!r}")

    return ev(tree)


# -- roots of polynomials over Q(zeta_N) ------------------------------------

@lru_cache(maxsize=None)
def _sympy_field(n):
    from sympy import QQ
    return QQ.cyclotomic_field(n)


def _to_sympy(K, x: CycEl):
    return K.new([Rat(q) for q in reversed(x.c)])


def _from_sympy(F, a) -> CycEl:
    coeffs = [Rat(q) for q in reversed(a.to_list())]
    return F.from_coeffs(coeffs or [0])


def poly_roots(coeffs, F: CyclotomicField | None = None):
    """Roots in Q(zeta_N) of a polynomial given lowest degree first.

    Returns ``(roots, nonlinear)`` where ``roots`` is a list of
    ``(root, multiplicity)`` and ``nonlinear`` lists the irreducible factors
    of degree > 1 (each as a coefficient list, lowest degree first).
    """
    from sympy import Poly, Symbol

    coeffs = list(coeffs)
    F = F or next(c.F for c in coeffs if isinstance(c, CycEl))
    coeffs = [F.coerce(c) for c in coeffs]
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) == 1:
        return [], []
    lead = coeffs[-1]
    coeffs = [c / lead for c in coeffs]
    K = _sympy_field(F.n)
    t = Symbol("t")
    p = Poly([_to_sympy(K, c) for c in reversed(coeffs)], t, domain=K)
    roots, nonlinear = [], []
    for fac, mult in p.factor_list()[1]:
        fc = [_from_sympy(F, a) for a in reversed(fac.rep.to_list())]
        if len(fc) == 2:
            roots.append((-fc[0] / fc[1], mult))
        else:
            nonlinear.append(fc)
    return roots, nonlinear


def nth_roots(c: CycEl, m: int):
    """All m-th roots of c lying in Q(zeta_N)."""
    if not c:
        return [c.F.zero]
    coeffs = [-c] + [c.F.zero] * (m - 1) + [c.F.one]
    roots, _ = poly_roots(coeffs, c.F)
    return [r for r, _ in roots]


def common_conductor(*ns: int) -> int:
    out = 1
    for n in ns:
        out = out * n // gcd(out, n)
    return out
