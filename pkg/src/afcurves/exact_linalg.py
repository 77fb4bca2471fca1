"""Exact integer matrix arithmetic: Smith normal form with unimodular
transform certificates, fraction-free determinants, polynomial evaluation
at a matrix, and a seeded GL_n(Z) generator for property testing.

Everything runs on Python's arbitrary-precision integers; there is no
floating point and no entry-size limit anywhere in this module.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import gcd


class MatrixParseError(ValueError):
    """Malformed matrix or polynomial text; carries the offending position."""


class IntMatrix:
    """Dense square matrix of exact integers, immutable after construction."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0:
            raise ValueError("matrix must have dimension >= 1")
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def diagonal(cls, diag) -> "IntMatrix":
        diag = list(diag)
        n = len(diag)
        return cls([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        n = self.n
        ot = list(zip(*other.rows))
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.rows]
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return IntMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return IntMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self.rows])

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * a for a in r] for r in self.rows])

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.n))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.rows)))

    def is_strictly_positive(self) -> bool:
        return all(a >= 1 for row in self.rows for a in row)

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for row in self.rows for a in row)

    def submatrix(self, row_idx, col_idx) -> "IntMatrix":
        return IntMatrix([[self.rows[i][j] for j in col_idx] for i in row_idx])


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients stored constant-first.

    coeffs[k] is the coefficient of x^k; trailing zeros are stripped so the
    leading coefficient is nonzero except for the zero polynomial ().
    """

    coeffs: tuple

    def __init__(self, coeffs):
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                xk = "x" if k == 1 else f"x^{k}"
                body = xk if abs(c) == 1 else f"{abs(c)}*{xk}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(terms)


@dataclass(frozen=True)
class SmithDecomposition:
    """Certificate D = P * M * Q with P, Q unimodular and D = diag(d).

    The nonzero diagonal entries come first, each is positive, and each
    divides the next; trailing entries are zero.
    """

    d: tuple
    p_left: IntMatrix
    q_right: IntMatrix

    def diag_matrix(self) -> IntMatrix:
        return IntMatrix.diagonal(self.d)

    def verify(self, m: IntMatrix) -> bool:
        if (self.p_left @ m) @ self.q_right != self.diag_matrix():
            return False
        if not (is_unimodular(self.p_left) and is_unimodular(self.q_right)):
            return False
        nonzero = [x for x in self.d if x != 0]
        if list(self.d) != nonzero + [0] * (len(self.d) - len(nonzero)):
            return False
        if any(x < 1 for x in nonzero):
            return False
        return all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


# ---------------------------------------------------------------------------
# elementary row/column operations on a mutable working copy,
# mirrored into transform accumulators


def _swap_rows(a, p, i, j):
    a[i], a[j] = a[j], a[i]
    p[i], p[j] = p[j], p[i]


def _negate_row(a, p, i):
    a[i] = [-x for x in a[i]]
    p[i] = [-x for x in p[i]]


def _addmul_row(a, p, dst, src, k):
    a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
    p[dst] = [x + k * y for x, y in zip(p[dst], p[src])]


def _swap_cols(a, q, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]
    for row in q:
        row[i], row[j] = row[j], row[i]


def _addmul_col(a, q, dst, src, k):
    for row in a:
        row[dst] += k * row[src]
    for row in q:
        row[dst] += k * row[src]


def snf(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms: returns (d, P, Q) with PMQ = diag(d).

    Pivoting picks the nonzero entry of least absolute value in the working
    submatrix, which keeps intermediate entries small.  Divisibility defects
    left after diagonalization are repaired pairwise, folding each offending
    pair (a, b) into (gcd, lcm) with explicit unimodular 2x2 transforms.
    """
    n = m.n
    a = [list(row) for row in m.rows]
    p = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    q = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    for t in range(n):
        while True:
            pivot = None
            for i in range(t, n):
                for j in range(t, n):
                    v = a[i][j]
                    if v != 0 and (pivot is None or abs(v) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break  # remaining block is zero; trailing diagonal stays 0
            if pivot[0] != t:
                _swap_rows(a, p, t, pivot[0])
            if pivot[1] != t:
                _swap_cols(a, q, t, pivot[1])
            if a[t][t] < 0:
                _negate_row(a, p, t)
            for r in range(t + 1, n):
                if a[r][t] != 0:
                    _addmul_row(a, p, r, t, -(a[r][t] // a[t][t]))
            for c in range(t + 1, n):
                if a[t][c] != 0:
                    _addmul_col(a, q, c, t, -(a[t][c] // a[t][t]))
            if all(a[r][t] == 0 for r in range(t + 1, n)) and all(
                a[t][c] == 0 for c in range(t + 1, n)
            ):
                break
        if pivot is None:
            break

    # repair the divisibility chain on the nonzero prefix
    rank = sum(1 for i in range(n) if a[i][i] != 0)
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            x, y = a[i][i], a[i + 1][i + 1]
            if y % x != 0:
                changed = True
                g = gcd(x, y)
                lcm = x // g * y
                # D = P2 diag(x, y) Q2 with D = diag(g, lcm); Bezout u*x + v*y = g
                u, v = _bezout(x, y)
                p2 = ((u, v), (-(y // g), x // g))
                q2 = ((1, -(v * y) // g), (1, (u * x) // g))
                _apply_2x2_left(a, p, i, i + 1, p2)
                _apply_2x2_right(a, q, i, i + 1, q2)

    d = tuple(a[i][i] for i in range(n))
    result = SmithDecomposition(d, IntMatrix(p), IntMatrix(q))
    assert result.verify(m)
    return result


def _bezout(x: int, y: int):
    """u, v with u*x + v*y = gcd(x, y)."""
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_s, s = s, old_s - qt * s
        old_t, t = t, old_t - qt * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def _apply_2x2_left(a, p, i, j, m2):
    """Rows i, j of a (and p) <- m2 * those rows."""
    for mat in (a, p):
        ri = mat[i]
        rj = mat[j]
        mat[i] = [m2[0][0] * x + m2[0][1] * y for x, y in zip(ri, rj)]
        mat[j] = [m2[1][0] * x + m2[1][1] * y for x, y in zip(ri, rj)]


def _apply_2x2_right(a, q, i, j, m2):
    """Columns i, j of a (and q) <- those columns * m2."""
    for mat in (a, q):
        for row in mat:
            ci, cj = row[i], row[j]
            row[i] = ci * m2[0][0] + cj * m2[1][0]
            row[j] = ci * m2[0][1] + cj * m2[1][1]


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = m.n
    a = [list(row) for row in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(m: IntMatrix) -> bool:
    return abs(determinant(m)) == 1


def mat_pow(m: IntMatrix, k: int) -> IntMatrix:
    """Exact m**k for k >= 0 by binary exponentiation; m**0 is the identity."""
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    result = IntMatrix.identity(m.n)
    base = m
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def mat_poly_eval(p: IntPolynomial, m: IntMatrix) -> IntMatrix:
    """Horner evaluation p(m); the constant term contributes p(0) * I."""
    n = m.n
    if not p.coeffs:
        return IntMatrix.zero(n)
    acc = IntMatrix.diagonal([p.coeffs[-1]] * n)
    for c in reversed(p.coeffs[:-1]):
        acc = acc @ m + IntMatrix.diagonal([c] * n)
    return acc


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix via the adjugate.

    For det(m) = +-1 the inverse is det(m) * adj(m), so no rational
    arithmetic is needed.
    """
    det = determinant(m)
    if abs(det) != 1:
        raise ValueError("matrix is not unimodular")
    n = m.n
    if n == 1:
        return IntMatrix([[det]])
    idx = range(n)
    adj = [[0] * n for _ in range(n)]
    for i in idx:
        rows = [r for r in idx if r != i]
        for j in idx:
            cols = [c for c in idx if c != j]
            minor = m.submatrix(rows, cols)
            adj[j][i] = (-1) ** (i + j) * determinant(minor)
    inv = IntMatrix(adj).scale(det)
    assert inv @ m == IntMatrix.identity(n)
    return inv


def determinantal_divisors(m: IntMatrix) -> list:
    """gcd of all k x k minors, for k = 1..n (0 where every minor vanishes).

    Independent oracle for snf: with D_0 = 1, the Smith diagonal satisfies
    d_k = D_k / D_{k-1} along the nonzero prefix.  Minor enumeration is
    exponential, so this is for small n only.
    """
    n = m.n
    out = []
    for k in range(1, n + 1):
        g = 0
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(n), k):
                g = gcd(g, determinant(m.submatrix(rows, cols)))
        out.append(g)
    return out


def random_glnz(n: int, steps: int = 20, seed: int = 0) -> IntMatrix:
    """Seeded product of `steps` random elementary matrices in GL_n(Z).

    Steps are row swaps, row negations, and row additions with multiplier
    bounded by |k| <= 3; the result is always unimodular and identical for
    identical seeds.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if steps < 0:
        raise ValueError("steps must be >= 0")
    rng = random.Random(seed)
    a = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    dummy = [[0] * n for _ in range(n)]
    for _ in range(steps):
        op = rng.randrange(3) if n > 1 else 1
        if op == 0:
            i, j = rng.sample(range(n), 2)
            _swap_rows(a, dummy, i, j)
        elif op == 1:
            _negate_row(a, dummy, rng.randrange(n))
        else:
            i, j = rng.sample(range(n), 2)
            k = rng.choice([-3, -2, -1, 1, 2, 3])
            _addmul_row(a, dummy, i, j, k)
    return IntMatrix(a)


# ---------------------------------------------------------------------------
# text formats shared by the CLI and test fixtures:
# matrices as `5,2;2,1`, polynomials constant-first as `-1,1`


def parse_matrix(text: str) -> IntMatrix:
    rows = []
    for i, row_text in enumerate(text.strip().split(";")):
        row = []
        for j, cell in enumerate(row_text.split(",")):
            try:
                row.append(int(cell.strip()))
            except ValueError:
                raise MatrixParseError(
                    f"bad integer {cell.strip()!r} at row {i + 1}, column {j + 1}"
                ) from None
        rows.append(row)
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise MatrixParseError(
                f"row {i + 1} has {len(row)} entries, expected {width}"
            )
    if len(rows) != width:
        raise MatrixParseError(f"matrix is {len(rows)}x{width}, expected square")
    return IntMatrix(rows)


def format_matrix(m: IntMatrix) -> str:
    return ";".join(",".join(str(x) for x in row) for row in m.rows)


def parse_poly(text: str) -> IntPolynomial:
    coeffs = []
    for j, cell in enumerate(text.strip().split(",")):
        try:
            coeffs.append(int(cell.strip()))
        except ValueError:
            raise MatrixParseError(
                f"bad coefficient {cell.strip()!r} at position {j + 1}"
            ) from None
    return IntPolynomial(coeffs)


def format_poly(p: IntPolynomial) -> str:
    if not p.coeffs:
        return "0"
    return ",".join(str(c) for c in p.coeffs)
