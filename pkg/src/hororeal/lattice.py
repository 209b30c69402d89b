"""Exact integer linear algebra on row vectors.

Matrices are tuples of row tuples of Python ints. Lattice elements are rows
and a matrix ``a`` acts by ``v -> v @ a``. Nothing here touches floats.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import DegenerateBasis, DimensionMismatch, NotInvolution, NotStable

Matrix = tuple[tuple[int, ...], ...]
MatrixLike = Sequence[Sequence[int]]


def as_matrix(m: MatrixLike) -> Matrix:
    rows = tuple(tuple(int(x) for x in row) for row in m)
    if rows and len({len(r) for r in rows}) != 1:
        raise DimensionMismatch("ragged matrix")
    return rows


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> Matrix:
    return tuple((0,) * c for _ in range(r))


def transpose(m: MatrixLike, cols: int | None = None) -> Matrix:
    if not m:
        return zeros(cols or 0, 0)
    return tuple(zip(*m))


def matmul(a: MatrixLike, b: MatrixLike) -> Matrix:
    if a and len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x?")
    bt = transpose(b) if b else ()
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def vecmat(v: Sequence[int], a: MatrixLike) -> tuple[int, ...]:
    if len(v) != len(a):
        raise DimensionMismatch(f"vector of length {len(v)} against {len(a)} rows")
    if not a:
        return ()
    return tuple(sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0])))


def add(a: MatrixLike, b: MatrixLike, scale: int = 1) -> Matrix:
    return tuple(tuple(x + scale * y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def determinant(m: MatrixLike) -> int:
    """Bareiss fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    if any(len(r) != n for r in a):
        raise DimensionMismatch("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(m: MatrixLike) -> bool:
    return len(m) > 0 and all(len(r) == len(m) for r in m) and abs(determinant(m)) == 1


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def smith_normal_form(m: MatrixLike) -> tuple[Matrix, Matrix, Matrix]:
    """Return (u, d, v) with u @ m @ v == d, u and v unimodular.

    d is diagonal with nonnegative entries and each diagonal entry divides
    the next.
    """
    m = as_matrix(m)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(r) for r in m]
    u = [list(r) for r in identity(rows)]
    v = [list(r) for r in identity(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def row_combo(i, j, p, q, r, s):
        # rows i, j <- p*row_i + q*row_j, r*row_i + s*row_j (ps - qr = +-1)
        for mat in (a, u):
            ri, rj = mat[i], mat[j]
            mat[i] = [p * x + q * y for x, y in zip(ri, rj)]
            mat[j] = [r * x + s * y for x, y in zip(ri, rj)]

    def col_combo(i, j, p, q, r, s):
        for mat in (a, v):
            for row in mat:
                x, y = row[i], row[j]
                row[i], row[j] = p * x + q * y, r * x + s * y

    for t in range(min(rows, cols)):
        pivot = min(
            ((abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]),
            default=None,
        )
        if pivot is None:
            break
        _, pi, pj = pivot
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            for i in range(t + 1, rows):
                if a[i][t] % a[t][t] == 0:
                    if a[i][t]:
                        row_combo(t, i, 1, 0, -(a[i][t] // a[t][t]), 1)
                elif a[i][t]:
                    g, x, y = _xgcd(a[t][t], a[i][t])
                    p, q = a[t][t] // g, a[i][t] // g
                    row_combo(t, i, x, y, -q, p)
            for j in range(t + 1, cols):
                if a[t][j] % a[t][t] == 0:
                    if a[t][j]:
                        col_combo(t, j, 1, 0, -(a[t][j] // a[t][t]), 1)
                elif a[t][j]:
                    g, x, y = _xgcd(a[t][t], a[t][j])
                    p, q = a[t][t] // g, a[t][j] // g
                    col_combo(t, j, x, y, -q, p)
            if any(a[i][t] for i in range(t + 1, rows)):
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            row_combo(t, bad, 1, 1, 0, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return as_matrix(u), as_matrix(a), as_matrix(v)


def elementary_divisors(m: MatrixLike) -> list[int]:
    _, d, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def rank(m: MatrixLike) -> int:
    return len(elementary_divisors(m)) if m else 0


def hermite_rows(m: MatrixLike) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by the rows.

    Zero rows are dropped, so the result is a basis. Pivots are positive and
    entries above a pivot lie in [0, pivot).
    """
    a = [list(r) for r in as_matrix(m)]
    if not a:
        return ()
    cols = len(a[0])
    out: list[list[int]] = []
    pivots: list[int] = []
    for c in range(cols):
        live = [r for r in a if r[c]]
        a = [r for r in a if not r[c]]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            head = live[0]
            rest = []
            for r in live[1:]:
                q = r[c] // head[c]
                r = [x - q * y for x, y in zip(r, head)]
                (rest if r[c] else a).append(r)
            live = [head] + rest
        piv = live[0]
        if piv[c] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        pivots.append(c)
    for k in range(len(out)):
        c = pivots[k]
        for j in range(k):
            q = out[j][c] // out[k][c]
            if q:
                out[j] = [x - q * y for x, y in zip(out[j], out[k])]
    return as_matrix(out)


def kernel_basis(m: MatrixLike, rows: int | None = None) -> Matrix:
    """Basis of the saturated left kernel {x : x @ m = 0}."""
    m = as_matrix(m)
    n = len(m) if m else (rows or 0)
    if not m:
        return identity(n)
    u, d, _ = smith_normal_form(m)
    r = sum(1 for i in range(min(len(d), len(d[0]))) if d[i][i])
    return hermite_rows(u[r:])


def solve_in_lattice(basis: MatrixLike, w: Sequence[int]) -> tuple[int, ...] | None:
    """Integer coordinates x with x @ basis == w, or None if w is outside the lattice."""
    basis = as_matrix(basis)
    if not basis:
        return () if not any(w) else None
    u, d, v = smith_normal_form(basis)
    wv = vecmat(w, v)
    k = len(basis)
    y = []
    for i in range(len(wv)):
        di = d[i][i] if i < k else 0
        if di == 0:
            if wv[i]:
                return None
            if i < k:
                y.append(0)
        else:
            if wv[i] % di:
                return None
            y.append(wv[i] // di)
    return vecmat(y[:k], u)


@dataclass(frozen=True)
class Sublattice:
    """Subgroup of Z^ambient_rank given by Q-independent basis rows."""

    ambient_rank: int
    basis: Matrix = ()

    def __post_init__(self):
        basis = as_matrix(self.basis)
        if any(len(r) != self.ambient_rank for r in basis):
            raise DimensionMismatch(f"basis rows must have length {self.ambient_rank}")
        if basis and rank(basis) < len(basis):
            raise DegenerateBasis("basis rows are linearly dependent")
        object.__setattr__(self, "basis", basis)

    @classmethod
    def from_generators(cls, ambient_rank: int, gens: MatrixLike) -> "Sublattice":
        return cls(ambient_rank, hermite_rows(gens) if gens else ())

    @classmethod
    def full(cls, n: int) -> "Sublattice":
        return cls(n, identity(n))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, w: Sequence[int]) -> bool:
        return solve_in_lattice(self.basis, w) is not None

    def image(self, a: MatrixLike) -> "Sublattice":
        return Sublattice(self.ambient_rank, matmul(self.basis, a) if self.basis else ())

    def rebased(self, g: MatrixLike) -> "Sublattice":
        """Same lattice with basis g @ basis for a unimodular g."""
        if not is_unimodular(g):
            raise DegenerateBasis("change of basis is not unimodular")
        return Sublattice(self.ambient_rank, matmul(g, self.basis))


def hermite_basis(s: Sublattice) -> Matrix:
    h = hermite_rows(s.basis) if s.basis else ()
    if len(h) != s.rank:
        raise DegenerateBasis("basis rows are linearly dependent")
    return h


def sublattices_equal(a: Sublattice, b: Sublattice) -> bool:
    if a.ambient_rank != b.ambient_rank:
        raise DimensionMismatch(f"ambient ranks {a.ambient_rank} and {b.ambient_rank} differ")
    return hermite_basis(a) == hermite_basis(b)


def restrict_involution(a: MatrixLike, s: Sublattice) -> Matrix:
    """Matrix of v -> v @ a in the basis of s."""
    a = as_matrix(a)
    if len(a) != s.ambient_rank:
        raise DimensionMismatch("action and sublattice have different ambient ranks")
    out = []
    for i, row in enumerate(s.basis):
        coords = solve_in_lattice(s.basis, vecmat(row, a))
        if coords is None:
            raise NotStable(f"image of basis row {i} leaves the sublattice")
        out.append(coords)
    return as_matrix(out)


def check_involution(r: MatrixLike) -> Matrix:
    r = as_matrix(r)
    n = len(r)
    if any(len(row) != n for row in r):
        raise NotInvolution("matrix is not square")
    if n and matmul(r, r) != identity(n):
        raise NotInvolution("matrix does not square to the identity")
    return r


def _quotient_two_rank(kernel: Matrix, image_gens: Matrix) -> int:
    """F2-dimension of kernel / (lattice spanned by image_gens).

    The quotient of a Tate pair is killed by 2, which is asserted here.
    """
    if not kernel:
        return 0
    coords = [solve_in_lattice(kernel, w) for w in image_gens if any(w)]
    if any(c is None for c in coords):
        raise ArithmeticError("image not contained in kernel")
    if not coords:
        divisors: list[int] = []
    else:
        divisors = elementary_divisors(coords)
    divisors += [0] * (len(kernel) - len(divisors))
    if any(d not in (1, 2) for d in divisors):
        raise ArithmeticError(f"Tate quotient is not an elementary 2-group: {divisors}")
    return sum(1 for d in divisors if d == 2)


def tate_dimensions(r: MatrixLike) -> tuple[int, int]:
    """(dim ker(r-1)/im(r+1), dim ker(r+1)/im(r-1)) over F2."""
    r = check_involution(r)
    n = len(r)
    if n == 0:
        return 0, 0
    plus = add(r, identity(n))
    minus = add(r, identity(n), -1)
    h0 = _quotient_two_rank(kernel_basis(minus), plus)
    h1 = _quotient_two_rank(kernel_basis(plus), minus)
    return h0, h1


@dataclass(frozen=True)
class GammaLatticeInvariants:
    """Decomposition of a lattice involution into trivial, sign and regular summands.

    adapted_basis lists n0 fixed rows, then n1 negated rows, then n2 pairs
    (x, x @ r).
    """

    n0: int
    n1: int
    n2: int
    adapted_basis: Matrix = field(default=(), compare=False)

    @property
    def triple(self) -> tuple[int, int, int]:
        return self.n0, self.n1, self.n2

    @property
    def rank(self) -> int:
        return self.n0 + self.n1 + 2 * self.n2

    def trivial_vectors(self) -> Matrix:
        return self.adapted_basis[: self.n0]

    def sign_vectors(self) -> Matrix:
        return self.adapted_basis[self.n0 : self.n0 + self.n1]


def _adapted_basis(r: Matrix) -> tuple[list[list[int]], list[list[int]], int]:
    """Split Z^n as L- (+) T, then normalize the gluing matrix mod 2.

    Returns (t, s, k): rows t_i, s_j with t_i @ r = t_i + s_i for i < k,
    t_i @ r = t_i for i >= k, and s_j @ r = -s_j.
    """
    n = len(r)
    plus = add(r, identity(n))
    sign_basis = kernel_basis(plus)
    b = len(sign_basis)
    if b == 0:
        return [list(row) for row in identity(n)], [], 0
    _, _, v = smith_normal_form(sign_basis)
    # rows of v^-1 form a basis whose first b rows span L-
    vinv = _unimodular_inverse(v)
    s = [list(row) for row in vinv[:b]]
    t = [list(row) for row in vinv[b:]]

    def gluing() -> list[list[int]]:
        basis = s + t
        out = []
        for ti in t:
            diff = [x - y for x, y in zip(vecmat(ti, r), ti)]
            coords = solve_in_lattice(basis, diff)
            assert coords is not None and not any(coords[b:])
            out.append(list(coords[:b]))
        return out

    def reduce():
        # shift t_i by L- so that every gluing coefficient is 0 or 1
        g = gluing()
        for i, row in enumerate(g):
            for j, c in enumerate(row):
                h = c // 2
                if h:
                    # (t + h s) r - (t + h s) = (t r - t) - 2 h s
                    t[i] = [x + h * y for x, y in zip(t[i], s[j])]
        g = gluing()
        assert all(c in (0, 1) for row in g for c in row)
        return g

    g = reduce()
    k = 0
    while True:
        hit = next(
            ((i, j) for i in range(k, len(t)) for j in range(k, b) if g[i][j]),
            None,
        )
        if hit is None:
            break
        i, j = hit
        t[k], t[i] = t[i], t[k]
        s[k], s[j] = s[j], s[k]
        g = reduce()
        for i2 in range(len(t)):
            if i2 != k and g[i2][k]:
                t[i2] = [x - y for x, y in zip(t[i2], t[k])]
        g = reduce()
        for j2 in range(b):
            if j2 != k and g[k][j2]:
                # adding column k to column j2 of g corresponds to s_k -= s_j2
                s[k] = [x - y for x, y in zip(s[k], s[j2])]
        g = reduce()
        k += 1
    return t, s, k


def _unimodular_inverse(m: Matrix) -> Matrix:
    n = len(m)
    cols = [solve_in_lattice(m, e) for e in identity(n)]
    return as_matrix(cols)


def involution_invariants(r: MatrixLike) -> GammaLatticeInvariants:
    """Classify a lattice involution by its (n0, n1, n2) block counts."""
    r = check_involution(r)
    n = len(r)
    if n == 0:
        return GammaLatticeInvariants(0, 0, 0, ())
    n0, n1 = tate_dimensions(r)
    if (n - n0 - n1) % 2:
        raise ArithmeticError("Tate dimensions have the wrong parity")
    n2 = (n - n0 - n1) // 2
    t, s, k = _adapted_basis(r)
    trivial = t[k:]
    sign = s[k:]
    pairs = []
    for i in range(k):
        pairs += [t[i], list(vecmat(t[i], r))]
    if (len(trivial), len(sign), k) != (n0, n1, n2):
        raise ArithmeticError(
            f"adapted basis {(len(trivial), len(sign), k)} disagrees with Tate counts {(n0, n1, n2)}"
        )
    return GammaLatticeInvariants(n0, n1, n2, as_matrix(trivial + sign + pairs))


def normal_form_matrix(n0: int, n1: int, n2: int) -> Matrix:
    """Block-diagonal involution diag(1^n0, (-1)^n1, swap^n2)."""
    n = n0 + n1 + 2 * n2
    rows = [[0] * n for _ in range(n)]
    for i in range(n0):
        rows[i][i] = 1
    for i in range(n0, n0 + n1):
        rows[i][i] = -1
    for p in range(n2):
        i = n0 + n1 + 2 * p
        rows[i][i + 1] = rows[i + 1][i] = 1
    return as_matrix(rows)
