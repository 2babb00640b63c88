"""Dense exact linear algebra over Q(zeta_N)."""

from __future__ import annotations

from .arith import CycEl, CyclotomicField


class NotSquare(ValueError):
    pass


class Mat:
    """Dense matrix of field elements, row-major. Treated as immutable."""

    __slots__ = ("F", "rows", "cols", "data")

    def __init__(self, F: CyclotomicField, data, cols: int | None = None):
        self.F = F
        self.data = [list(r) for r in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else (cols or 0)

    @classmethod
    def zeros(cls, F, rows, cols):
        z = F.zero
        return cls(F, [[z] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, F, n):
        m = cls.zeros(F, n, n)
        for i in range(n):
            m.data[i][i] = F.one
        return m

    @classmethod
    def from_values(cls, F, rows):
        return cls(F, [[F.coerce(x) for x in r] for r in rows])

    @classmethod
    def diag(cls, F, values):
        m = cls.zeros(F, len(values), len(values))
        for i, v in enumerate(values):
            m.data[i][i] = F.coerce(v)
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return list(self.data[i])

    def col(self, j):
        return [r[j] for r in self.data]

    def __eq__(self, o):
        return (isinstance(o, Mat) and self.rows == o.rows and self.cols == o.cols
                and self.data == o.data)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols})"

    def __str__(self):
        return format_matrix(self)

    def is_zero(self) -> bool:
        return not any(x for r in self.data for x in r)

    def transpose(self) -> "Mat":
        return Mat(self.F, [list(c) for c in zip(*self.data)] if self.rows else [],
                   self.rows)

    T = property(transpose)

    def __add__(self, o):
        return Mat(self.F, [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, o.data)],
                   self.cols)

    def __sub__(self, o):
        return Mat(self.F, [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, o.data)],
                   self.cols)

    def scale(self, c) -> "Mat":
        c = self.F.coerce(c)
        return Mat(self.F, [[c * a for a in r] for r in self.data], self.cols)

    def __matmul__(self, o: "Mat") -> "Mat":
        if self.cols != o.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {o.rows}x{o.cols}")
        z = self.F.zero
        ot = o.transpose().data if o.rows else [[] for _ in range(o.cols)]
        out = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in ot:
                s = z
                for k, a in nz:
                    b = c[k]
                    if b:
                        s = s + a * b
                row.append(s)
            out.append(row)
        return Mat(self.F, out, o.cols)

    def apply(self, v):
        """Matrix-vector product."""
        z = self.F.zero
        out = []
        nzv = [(k, b) for k, b in enumerate(v) if b]
        for r in self.data:
            s = z
            for k, b in nzv:
                a = r[k]
                if a:
                    s = s + a * b
            out.append(s)
        return out

    def trace(self):
        s = self.F.zero
        for i in range(min(self.rows, self.cols)):
            s = s + self.data[i][i]
        return s

    def submatrix(self, rows, cols) -> "Mat":
        return Mat(self.F, [[self.data[i][j] for j in cols] for i in rows], len(cols))

    def rank(self) -> int:
        return rref(self)[1]


def kron(a: Mat, b: Mat) -> Mat:
    out = []
    for ra in a.data:
        for rb in b.data:
            out.append([x * y for x in ra for y in rb])
    return Mat(a.F, out, a.cols * b.cols)


def rref(m: Mat):
    """Reduced row-echelon form: ``(R, rank, pivot_columns)``."""
    F = m.F
    A = [list(r) for r in m.data]
    rows, cols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = A[r][c].inverse()
        if not inv.is_one():
            A[r] = [x * inv if x else x for x in A[r]]
        prow = A[r]
        nzc = [j for j in range(c, cols) if prow[j]]
        for i in range(rows):
            if i != r:
                f = A[i][c]
                if f:
                    ri = A[i]
                    for j in nzc:
                        ri[j] = ri[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return Mat(F, A, cols), len(pivots), pivots


def rank(m: Mat) -> int:
    return rref(m)[1]


class Subspace:
    """Subspace of F^n stored by its canonical reduced row-echelon basis."""

    __slots__ = ("F", "ambient", "basis", "pivots")

    def __init__(self, F, ambient: int, vectors=()):
        self.F = F
        self.ambient = ambient
        vectors = [list(v) for v in vectors]
        if vectors:
            R, rk, piv = rref(Mat(F, vectors, ambient))
            self.basis = [R.data[i] for i in range(rk)]
            self.pivots = piv
        else:
            self.basis, self.pivots = [], []

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> Mat:
        return Mat(self.F, self.basis, self.ambient)

    def reduce(self, v):
        """Residue of v after clearing pivot coordinates against the basis."""
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                v = [a - c * b if b else a for a, b in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def contains_all(self, vs) -> bool:
        return all(self.contains(v) for v in vs)

    def __add__(self, o: "Subspace") -> "Subspace":
        return Subspace(self.F, self.ambient, self.basis + o.basis)

    def __eq__(self, o):
        return (isinstance(o, Subspace) and self.ambient == o.ambient
                and self.basis == o.basis)

    def __hash__(self):
        return hash((self.ambient, tuple(tuple(r) for r in self.basis)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def kernel(m: Mat) -> Subspace:
    """Right null space {v : m v = 0}."""
    R, rk, piv = rref(m)
    F, n = m.F, m.cols
    free = [j for j in range(n) if j not in set(piv)]
    vecs = []
    for f in free:
        v = [F.zero] * n
        v[f] = F.one
        for i, p in enumerate(piv):
            c = R.data[i][f]
            if c:
                v[p] = -c
        vecs.append(v)
    return Subspace(F, n, vecs)


def row_space(m: Mat) -> Subspace:
    return Subspace(m.F, m.cols, m.data)


def det(m: Mat) -> CycEl:
    """Determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise NotSquare(f"{m.rows}x{m.cols} matrix has no determinant")
    n = m.rows
    F = m.F
    if n == 0:
        return F.one
    A = [list(r) for r in m.data]
    sign = 1
    prev = F.one
    for k in range(n - 1):
        if not A[k][k]:
            p = next((i for i in range(k + 1, n) if A[i][k]), None)
            if p is None:
                return F.zero
            A[k], A[p] = A[p], A[k]
            sign = -sign
        akk = A[k][k]
        pinv = prev.inverse()
        for i in range(k + 1, n):
            aik = A[i][k]
            ri, rk = A[i], A[k]
            for j in range(k + 1, n):
                v = akk * ri[j]
                if aik and rk[j]:
                    v = v - aik * rk[j]
                ri[j] = v * pinv if v else v
            ri[k] = F.zero
        prev = akk
    d = A[n - 1][n - 1]
    return -d if sign < 0 else d


def det_cofactor(m: Mat) -> CycEl:
    """Laplace expansion along the first row. Exponential; oracle use only."""
    if m.rows != m.cols:
        raise NotSquare(f"{m.rows}x{m.cols} matrix has no determinant")
    n = m.rows
    if n == 0:
        return m.F.one
    if n == 1:
        return m.data[0][0]
    total = m.F.zero
    for j in range(n):
        a = m.data[0][j]
        if not a:
            continue
        minor = Mat(m.F, [r[:j] + r[j + 1:] for r in m.data[1:]], n - 1)
        term = a * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def solve(m: Mat, b):
    """Some x with m x = b, or None when the system is inconsistent."""
    if len(b) != m.rows:
        raise ValueError("right-hand side length does not match rows")
    F = m.F
    aug = Mat(F, [r + [F.coerce(x)] for r, x in zip(m.data, b)], m.cols + 1)
    R, rk, piv = rref(aug)
    if piv and piv[-1] == m.cols:
        return None
    x = [F.zero] * m.cols
    for i, p in enumerate(piv):
        x[p] = R.data[i][m.cols]
    return x


def inverse(m: Mat) -> Mat | None:
    if m.rows != m.cols:
        raise NotSquare(f"{m.rows}x{m.cols} matrix has no inverse")
    n = m.rows
    F = m.F
    aug = Mat(F, [r + [F.one if i == j else F.zero for j in range(n)]
                  for i, r in enumerate(m.data)], 2 * n)
    R, rk, piv = rref(aug)
    if piv[:n] != list(range(n)):
        return None
    return Mat(F, [r[n:] for r in R.data], n)


def format_matrix(m: Mat) -> str:
    cells = [[str(x) for x in r] for r in m.data]
    if not cells:
        return "[]"
    w = [max(len(cells[i][j]) for i in range(m.rows)) for j in range(m.cols)]
    return "\n".join("[ " + "  ".join(c.rjust(w[j]) for j, c in enumerate(r)) + " ]"
                     for r in cells)
