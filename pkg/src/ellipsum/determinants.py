"""Structured determinants with closed-form product evaluations.

Four families are covered:

* the quadratic-base determinant whose LU factorization is carried out
  explicitly (``andrews_stanton_*``),
* the general elliptic determinant lemma with a row-periodic function family
  (``elliptic_det_lemma_sides``),
* its shifted-factorial corollary (``corollary_determ_sides``),
* the same corollary rewritten in theta functions (``theta_det_sides``).

Matrix entries are assembled from unreduced Pochhammer fractions so the
structural zeros produced by negative indices are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import SingularToWorkingPrecision
from .kernel import (
    DEFAULT_POLICY,
    Nome,
    TruncationPolicy,
    binom2,
    eval_E,
    pochhammer_e,
    pochhammer_frac,
    theta1,
)

# Trials whose condition estimate exceeds this are resampled, not failed.
COND_LIMIT = 1e8


def det_numeric(matrix) -> tuple[complex, float]:
    """Determinant via LU with partial pivoting plus a condition estimate.

    Returns (det, cond).  Raises if the matrix is singular at working
    precision (non-finite or wildly overflowing condition estimate).
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("det_numeric requires a square matrix")
    if m.shape[0] > 12:
        raise ValueError("matrix size above 12 is outside the conditioned regime")
    det = complex(np.linalg.det(m))
    try:
        cond = float(np.linalg.cond(m))
    except np.linalg.LinAlgError as exc:
        raise SingularToWorkingPrecision(str(exc)) from exc
    if not np.isfinite(det) or not np.isfinite(cond):
        raise SingularToWorkingPrecision("determinant not finite at working precision")
    return det, cond


def _poch_ratio_frac(nums, dens, nome: Nome, n: int, policy: TruncationPolicy):
    """prod (a; q, p)_n over nums divided by the same over dens, assembled as
    one fraction so reciprocal zeros cancel structurally."""
    top = 1.0
    bot = 1.0
    for a in nums:
        u, v = pochhammer_frac(a, nome, n, policy)
        top *= u
        bot *= v
    for a in dens:
        u, v = pochhammer_frac(a, nome, n, policy)
        top *= v
        bot *= u
    return top / bot


def _qpow_poch_frac(exponent: int, nome: Nome, n: int,
                    policy: TruncationPolicy):
    """(q^exponent; q, p)_n as a fraction, with integer exponent bookkeeping
    so that factors landing exactly on E(q^0) = 0 vanish exactly."""
    q, p = nome.q, nome.p

    def factor(e: int):
        return 0.0 if e == 0 else eval_E(q ** e, p, policy)

    if n == 0:
        return 1.0, 1.0
    if n > 0:
        num = 1.0
        for k in range(n):
            num = num * factor(exponent + k)
        return num, 1.0
    den = 1.0
    for k in range(-n):
        den = den * factor(exponent + n + k)
    return 1.0, den


def andrews_stanton_entry(x, y, nome: Nome, i: int, j: int,
                          policy: TruncationPolicy = DEFAULT_POLICY):
    """Entry M_{i,j} (1-based) of the quadratic-base determinant.

    Assembled as one unreduced fraction; the pure q-power factorial keeps
    its exponent as an integer so the structural zeros at j > 2i are exact.
    """
    q = nome.q
    n2 = nome.with_base(q * q)
    m = i - j
    top = 1.0
    bot = 1.0
    for a in (y * q ** (1 - i) / x, q ** (2 - i) / (x * y), q ** (2 - 4 * i) / (x * x)):
        u, v = pochhammer_frac(a, n2, m, policy)
        top *= u
        bot *= v
    for a in (q ** (2 - 2 * i) / (x * y), y * q ** (1 - 2 * i) / x):
        u, v = pochhammer_frac(a, nome, m, policy)
        top *= v
        bot *= u
    u, v = _qpow_poch_frac(i + 1, nome, m, policy)
    top *= v
    bot *= u
    return top / bot


def andrews_stanton_matrix(x, y, nome: Nome, n: int,
                           policy: TruncationPolicy = DEFAULT_POLICY) -> list:
    return [[andrews_stanton_entry(x, y, nome, i, j, policy)
             for j in range(1, n + 1)] for i in range(1, n + 1)]


def andrews_stanton_sides(x, y, nome: Nome, n: int,
                          policy: TruncationPolicy = DEFAULT_POLICY):
    """(det of the n x n matrix, closed-form double product)."""
    det, _ = det_numeric(andrews_stanton_matrix(x, y, nome, n, policy))
    q = nome.q
    n2 = nome.with_base(q * q)
    prod = 1.0
    for i in range(1, n + 1):
        prod *= pochhammer_e(q, nome, i, policy)
        prod *= pochhammer_e(x * x * q ** (2 * i - 2), nome, i, policy)
        prod /= pochhammer_e(q, n2, i, policy)
        prod /= pochhammer_e(x * x * q ** (2 * i - 2), n2, i, policy)
        prod *= pochhammer_e(x * y * q ** (i - 1), n2, i, policy)
        prod *= pochhammer_e(x * q ** i / y, n2, i, policy)
        prod /= pochhammer_e(x * y * q ** (i - 1), nome, i, policy)
        prod /= pochhammer_e(x * q ** i / y, nome, i, policy)
    return det, prod


def andrews_stanton_lu(x, y, nome: Nome, n: int,
                       policy: TruncationPolicy = DEFAULT_POLICY):
    """The explicit unit-upper-triangular U and diagonal of L = M U.

    Returns (U, L_diag) with U an n x n nested list, U_{i,i} = 1, and L_diag
    the closed-form diagonal entries of the lower-triangular product M U.
    """
    q, p = nome.q, nome.p
    n2 = nome.with_base(q * q)
    U = [[0.0j for _ in range(n)] for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            val = (-1.0) ** (i + j) * q ** ((i - j) * (i + j - 7) // 2)
            val *= eval_E(x * x * q ** (3 * i - 2), p, policy)
            val /= eval_E(x * x * q ** (i + 2 * j - 2), p, policy)
            val *= pochhammer_e(q ** i, nome, 2 * j - 2 * i, policy)
            val *= pochhammer_e(q ** (3 - 3 * j) / (x * x), nome, j - i, policy)
            val /= pochhammer_e(q * q, n2, j - i, policy)
            val /= pochhammer_e(q ** (4 - 4 * j) / (x * x), n2, j - i, policy)
            val /= pochhammer_e(q ** (3 - 2 * j) / (x * x), n2, j - i, policy)
            U[i - 1][j - 1] = val
    l_diag = []
    for i in range(1, n + 1):
        val = pochhammer_e(q * q, nome, i - 1, policy)
        val *= pochhammer_e(x * x * q ** (2 * i - 1), nome, i - 1, policy)
        val *= pochhammer_e(x * y * q ** (i + 1), n2, i - 1, policy)
        val *= pochhammer_e(x * q ** (i + 2) / y, n2, i - 1, policy)
        val /= pochhammer_e(q ** 3, n2, i - 1, policy)
        val /= pochhammer_e(x * x * q ** (2 * i), n2, i - 1, policy)
        val /= pochhammer_e(x * y * q ** i, nome, i - 1, policy)
        val /= pochhammer_e(x * q ** (i + 1) / y, nome, i - 1, policy)
        l_diag.append(val)
    return U, l_diag


def shifted_product_family(b, c, nome: Nome, n: int,
                           policy: TruncationPolicy = DEFAULT_POLICY) -> list:
    """The function family P_j(X) = (b X q^{n-j-1}, b c q^{n-j-1}/X; q, p)_j.

    Each member satisfies P_j(pX) = (c / X^2 p)^j P_j(X) and P_j(c/X) = P_j(X),
    the two hypotheses of the elliptic determinant lemma.
    """
    q = nome.q

    def make(j: int) -> Callable:
        def pj(xv):
            s = q ** (n - j - 1)
            return pochhammer_e(b * xv * s, nome, j, policy) * \
                pochhammer_e(b * c * s / xv, nome, j, policy)
        return pj

    return [make(j) for j in range(n)]


def det_lemma_matrix(xs: Sequence, a_values: Sequence, c, nome: Nome,
                     family: Sequence[Callable],
                     policy: TruncationPolicy = DEFAULT_POLICY) -> list:
    n = len(xs)
    p = nome.p
    matrix = []
    for i in range(n):
        row = []
        for j in range(1, n + 1):
            val = family[j - 1](xs[i])
            for k in range(j + 1, n + 1):
                ak = a_values[k - 1]
                val *= eval_E(ak * xs[i], p, policy) * eval_E(c * ak / xs[i], p, policy)
            row.append(val)
        matrix.append(row)
    return matrix


def elliptic_det_lemma_sides(xs: Sequence, a_values: Sequence, c, nome: Nome,
                             family: Sequence[Callable],
                             policy: TruncationPolicy = DEFAULT_POLICY):
    """(LHS determinant, RHS product) of the elliptic determinant lemma.

    ``a_values`` is the full list A_1..A_n; A_1 only enters through
    P_0(1/A_1), which is constant for any admissible family.  ``family``
    holds the n callables P_0..P_{n-1}.
    """
    n = len(xs)
    if len(a_values) != n or len(family) != n:
        raise ValueError("xs, a_values and family must share length n")
    p = nome.p
    det, _ = det_numeric(det_lemma_matrix(xs, a_values, c, nome, family, policy))
    rhs = 1.0
    for i in range(n):
        for j in range(i + 1, n):
            rhs *= a_values[j] * xs[j] * eval_E(xs[i] / xs[j], p, policy) * \
                eval_E(c / (xs[i] * xs[j]), p, policy)
    for i in range(1, n + 1):
        rhs *= family[i - 1](1.0 / a_values[i - 1])
    return det, rhs


def corollary_determ_matrix(xs: Sequence, a, b, c, nome: Nome,
                            policy: TruncationPolicy = DEFAULT_POLICY) -> list:
    n = len(xs)
    matrix = []
    for i in range(n):
        row = []
        for j in range(1, n + 1):
            num = pochhammer_e(a * xs[i], nome, n - j, policy) * \
                pochhammer_e(a * c / xs[i], nome, n - j, policy)
            den = pochhammer_e(b * xs[i], nome, n - j, policy) * \
                pochhammer_e(b * c / xs[i], nome, n - j, policy)
            row.append(num / den)
        matrix.append(row)
    return matrix


def corollary_determ_sides(xs: Sequence, a, b, c, nome: Nome,
                           policy: TruncationPolicy = DEFAULT_POLICY):
    """(det of the shifted-factorial ratio matrix, closed-form product)."""
    n = len(xs)
    q, p = nome.q, nome.p
    det, _ = det_numeric(corollary_determ_matrix(xs, a, b, c, nome, policy))
    rhs = a ** binom2(n) * q ** _binom3(n)
    for i in range(n):
        for j in range(i + 1, n):
            rhs *= xs[j] * eval_E(xs[i] / xs[j], p, policy) * \
                eval_E(c / (xs[i] * xs[j]), p, policy)
    for i in range(1, n + 1):
        rhs *= pochhammer_e(b / a, nome, i - 1, policy)
        rhs *= pochhammer_e(a * b * c * q ** (2 * n - 2 * i), nome, i - 1, policy)
        rhs /= pochhammer_e(b * xs[i - 1], nome, n - 1, policy)
        rhs /= pochhammer_e(b * c / xs[i - 1], nome, n - 1, policy)
    return det, rhs


def _binom3(n: int) -> int:
    return n * (n - 1) * (n - 2) // 6


def theta_product_chain(z, m: int, p, policy: TruncationPolicy = DEFAULT_POLICY):
    """prod_{k=0}^{m-1} theta_1(z + k): theta analogue of a shifted factorial."""
    val = 1.0
    for k in range(m):
        val = val * theta1(z + k, p, policy)
    return val


def theta_det_sides(xs: Sequence, a, b, c, p,
                    policy: TruncationPolicy = DEFAULT_POLICY):
    """(det, product) of the theta-function determinant identity.

    Arguments are additive here: matrix entries are chains of theta_1 values
    at shifted angles, exercising the theta code path directly rather than
    reducing to the multiplicative kernel.
    """
    n = len(xs)
    matrix = []
    for i in range(n):
        row = []
        for j in range(1, n + 1):
            val = theta_product_chain(a + xs[i], n - j, p, policy)
            val *= theta_product_chain(a + c - xs[i], n - j, p, policy)
            val *= theta_product_chain(b + xs[i] + n - j, j - 1, p, policy)
            val *= theta_product_chain(b + c + n - j - xs[i], j - 1, p, policy)
            row.append(val)
        matrix.append(row)
    det, _ = det_numeric(matrix)
    rhs = 1.0
    for i in range(n):
        for j in range(i + 1, n):
            rhs *= theta1(xs[i] - xs[j], p, policy) * theta1(c - xs[i] - xs[j], p, policy)
    for i in range(1, n + 1):
        rhs *= theta_product_chain(b - a, i - 1, p, policy)
        rhs *= theta_product_chain(a + b + c + 2 * n - 2 * i, i - 1, p, policy)
    return det, rhs


@dataclass(frozen=True)
class AndrewsStantonProblem:
    x: complex
    y: complex
    n: int
    nome: Nome

    def sides(self, policy: TruncationPolicy = DEFAULT_POLICY):
        return andrews_stanton_sides(self.x, self.y, self.nome, self.n, policy)


@dataclass(frozen=True)
class CorollaryDetermProblem:
    xs: tuple
    a: complex
    b: complex
    c: complex
    nome: Nome

    def sides(self, policy: TruncationPolicy = DEFAULT_POLICY):
        return corollary_determ_sides(self.xs, self.a, self.b, self.c, self.nome, policy)


@dataclass(frozen=True)
class EllipticDetLemmaProblem:
    """Lemma instance with the shipped shifted-factorial family (parameter b)."""

    xs: tuple
    a_values: tuple
    b: complex
    c: complex
    nome: Nome

    def sides(self, policy: TruncationPolicy = DEFAULT_POLICY):
        family = shifted_product_family(self.b, self.c, self.nome, len(self.xs), policy)
        return elliptic_det_lemma_sides(self.xs, self.a_values, self.c, self.nome,
                                        family, policy)


@dataclass(frozen=True)
class ThetaDetProblem:
    xs: tuple
    a: complex
    b: complex
    c: complex
    p: complex

    def sides(self, policy: TruncationPolicy = DEFAULT_POLICY):
        return theta_det_sides(self.xs, self.a, self.b, self.c, self.p, policy)


DetProblem = AndrewsStantonProblem | CorollaryDetermProblem | \
    EllipticDetLemmaProblem | ThetaDetProblem
