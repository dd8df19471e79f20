"""Terminating very-well-poised balanced elliptic series by direct summation.

The central sum has summand

    E(a1 q^{2k}) / E(a1) * (a1, a4, ..., a_{r+1}; q, p)_k q^k
                         / (q, a1 q/a4, ..., a1 q/a_{r+1}; q, p)_k,

with one designated upper parameter equal to q^{-n} so that the series
terminates.  Termination is always an input (the integer ``n_term``), never
detected from floating parameter values.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Sequence

from .errors import BalanceViolation, DegenerateParameters
from .kernel import (
    BALANCE_TOL,
    DEFAULT_POLICY,
    DELTA_DEGEN,
    CompensatedSum,
    Nome,
    TruncationPolicy,
    eval_E,
)


@dataclass(frozen=True)
class OmegaSpec:
    """A terminating very-well-poised balanced series.

    ``upper`` holds the upper parameters *except* the terminating one; the
    evaluator inserts q^{-n_term} itself.  With m = len(upper) the series has
    r = m + 3, i.e. a ``(r+1) omega r``.
    """

    a1: complex
    upper: tuple = field(default_factory=tuple)
    nome: Nome = None
    n_term: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "upper", tuple(self.upper))
        if self.n_term < 0:
            raise ValueError("n_term must be a nonnegative integer")

    @property
    def r(self) -> int:
        return len(self.upper) + 3

    def full_upper(self) -> tuple:
        return self.upper + (self.nome.q ** (-self.n_term),)


def balance_residual(spec: OmegaSpec) -> float:
    """Relative size of (a4...a_{r+1})^2 - a1^{r-3} q^{r-5}, scale-normalized."""
    prod = 1.0
    for a in spec.full_upper():
        prod = prod * a
    lhs = prod * prod
    rhs = spec.a1 ** (spec.r - 3) * spec.nome.q ** (spec.r - 5)
    scale = max(abs(lhs), abs(rhs), 1e-300)
    return float(abs(lhs - rhs) / scale)


def omega_terms(a1, uppers: Sequence, nome: Nome, kmax: int,
                policy: TruncationPolicy = DEFAULT_POLICY) -> list:
    """Summands t_0..t_kmax of the very-well-poised series with the given
    (complete) upper parameter list.

    Numerator and denominator shifted factorials are accumulated one E factor
    per step; denominator factors below the degeneracy threshold raise.
    """
    q, p = nome.q, nome.p
    e_a1 = eval_E(a1, p, policy)
    if abs(e_a1) < DELTA_DEGEN:
        raise DegenerateParameters(f"E(a1) ~ 0 for a1={a1!r}")
    lowers = [q] + [a1 * q / a for a in uppers]
    # k = 0 term is 1, in the same scalar type as the parameters.
    terms = [a1 * 0 + 1.0]
    num_args = list(uppers)
    # Incremental products: at step k multiply in the (k-1)-th factor of
    # every shifted factorial.
    num = 1.0
    den = 1.0
    qk = 1.0
    for k in range(1, kmax + 1):
        shift = q ** (k - 1)
        num = num * eval_E(a1 * shift, p, policy)
        for a in num_args:
            num = num * eval_E(a * shift, p, policy)
        for i, b in enumerate(lowers):
            f = eval_E(b * shift, p, policy)
            if abs(f) < DELTA_DEGEN:
                raise DegenerateParameters(
                    f"denominator factor {i} at k={k}: |E| = {abs(f):.3e}")
            den = den * f
        qk = qk * q
        pref = eval_E(a1 * q ** (2 * k), p, policy) / e_a1
        terms.append(pref * num * qk / den)
    return terms


def omega_sum(a1, uppers: Sequence, nome: Nome, kmax: int,
              policy: TruncationPolicy = DEFAULT_POLICY):
    """Compensated left-to-right sum of the series; returns (value, scale).

    ``scale`` is the largest summand magnitude, used by zero-sided identity
    checks to normalize what "numerically zero" means.
    """
    acc = CompensatedSum()
    scale = 0.0
    for t in omega_terms(a1, uppers, nome, kmax, policy):
        acc.add(t)
        scale = max(scale, float(abs(t)))
    return acc.value(), scale


def eval_omega(spec: OmegaSpec, strict_balance: bool = True,
               policy: TruncationPolicy = DEFAULT_POLICY):
    """Value of the terminating series described by ``spec``.

    The balancing constraint is checked first; violations raise in strict
    mode and warn otherwise (exploratory use).
    """
    res = balance_residual(spec)
    if res > BALANCE_TOL:
        if strict_balance:
            raise BalanceViolation(
                f"balancing residual {res:.3e} exceeds {BALANCE_TOL:.1e}")
        warnings.warn(f"evaluating an unbalanced series (residual {res:.3e})",
                      stacklevel=2)
    value, _ = omega_sum(spec.a1, spec.full_upper(), spec.nome, spec.n_term, policy)
    return value
