"""Catalog of summation and transformation identities with random checking.

Each entry bundles the free parameters, exact solvers for the constrained
ones, the termination index and its sampling range, an optional residue-class
filter, and independent left/right evaluators.  Left and right sides never
share assembled shifted-factorial subexpressions; both go back to the kernel,
so a shared bug cannot cancel itself.

Both evaluators return (value, scale) where scale bounds the largest
intermediate summand behind the value (for plain products it is just the
magnitude).  Identities whose right side vanishes on part of their range are
checked against the left scale instead of a meaningless relative error, and
draws where either scale dwarfs the value are resampled as
cancellation-dominated.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from time import perf_counter
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateParameters, SamplingExhausted
from .kernel import (
    DEFAULT_POLICY,
    DELTA_DEGEN,
    EXTENDED_POLICY,
    CompensatedSum,
    Nome,
    TruncationPolicy,
    eval_E,
    pochhammer_e,
)
from .report import TrialFailure, VerificationReport, point_dump
from .series import omega_sum

TINY = 1e-300


@dataclass(frozen=True)
class SamplingRegion:
    """Moduli bounds for the random parameter draws (phases are uniform)."""

    q_mod: tuple = (0.3, 0.8)
    p_mod: tuple = (0.05, 0.3)
    param_mod: tuple = (0.5, 2.0)


DEFAULT_REGION = SamplingRegion()


@dataclass
class ParamPoint:
    """A concrete sampled parameter point."""

    nome: Nome
    values: dict
    integers: dict

    def to_extended(self, dps: int = 50) -> "ParamPoint":
        import mpmath

        mpmath.mp.dps = dps
        conv = lambda z: mpmath.mpc(z)
        nome = Nome(conv(self.nome.q), conv(self.nome.p))
        return ParamPoint(nome, {k: conv(v) for k, v in self.values.items()},
                          dict(self.integers))


@dataclass(frozen=True)
class Identity:
    id: str
    description: str
    free_params: tuple
    solved_params: tuple
    termination: tuple  # (name, lo, hi)
    lhs: Callable
    rhs: Callable
    solve: Callable
    branch: Callable | None = None
    extra_bases: tuple = ()
    zero_rhs: bool = False


# --------------------------------------------------------------------------
# Shared evaluation helpers
# --------------------------------------------------------------------------

def _check_degen(value, label: str):
    if abs(value) < DELTA_DEGEN:
        raise DegenerateParameters(f"{label}: |E| = {abs(value):.3e}")
    return value


def _vwp_sum(prefactor, num_groups, den_groups, weight, kmax: int, p,
             policy: TruncationPolicy):
    """Mixed-base very-well-poised-like sum.

    Groups are (params, base, step) triples contributing the shifted
    factorials (a; base, p)_{step*k} to the numerator or denominator of the
    k-th summand; ``prefactor(k)`` supplies the leading E-ratio and
    ``weight``^k the geometric part.  Returns (value, max term magnitude).
    """
    acc = CompensatedSum()
    scale = 0.0
    num = 1.0
    den = 1.0
    w = 1.0
    for k in range(kmax + 1):
        if k > 0:
            for params, base, step in num_groups:
                for a in params:
                    for t in range(step * (k - 1), step * k):
                        num = num * eval_E(a * base ** t, p, policy)
            for params, base, step in den_groups:
                for a in params:
                    for t in range(step * (k - 1), step * k):
                        f = eval_E(a * base ** t, p, policy)
                        _check_degen(f, f"denominator factor at k={k}")
                        den = den * f
            w = w * weight
        term = prefactor(k) * num * w / den
        acc.add(term)
        scale = max(scale, float(abs(term)))
    return acc.value(), scale


def _eprefactor(a1, gap: int, q, p, policy: TruncationPolicy):
    e_a1 = _check_degen(eval_E(a1, p, policy), "E(a1)")

    def pref(k: int):
        return eval_E(a1 * q ** (gap * k), p, policy) / e_a1

    return pref


def _poch_ratio(nums: Sequence, dens: Sequence, nome: Nome, n: int,
                policy: TruncationPolicy):
    val = 1.0
    for a in nums:
        val = val * pochhammer_e(a, nome, n, policy)
    for a in dens:
        val = val / pochhammer_e(a, nome, n, policy, min_factor=DELTA_DEGEN)
    return val


def _e_ratio(nums: Sequence, dens: Sequence, p, policy: TruncationPolicy):
    val = 1.0
    for z in nums:
        val = val * eval_E(z, p, policy)
    for z in dens:
        val = val / _check_degen(eval_E(z, p, policy), "E-ratio denominator")
    return val


def _sigma3(n: int) -> int:
    return (3 - n % 3) % 3


# --------------------------------------------------------------------------
# Left-hand-side families
# --------------------------------------------------------------------------

def _lhs_omega(a1, uppers, nome: Nome, kmax: int, policy):
    return omega_sum(a1, uppers, nome, kmax, policy)


def _lhs_quadratic(v, n: int, nome: Nome, policy):
    """Sum with E(a q^{3k}) prefactor and alternating q / q^2 factorials."""
    a, b, c, d, e, f = v["a"], v["b"], v["c"], v["d"], v["e"], v["f"]
    q, p = nome.q, nome.p
    q2 = q * q
    num = [((b, c, d), q, 1), ((e, f, q ** (-2 * n)), q2, 1)]
    den = [((a * q2 / b, a * q2 / c, a * q2 / d), q2, 1),
           ((a * q / e, a * q / f, a * q ** (2 * n + 1)), q, 1)]
    return _vwp_sum(_eprefactor(a, 3, q, p, policy), num, den, q, n, p, policy)


def _lhs_cubic(v, n: int, nome: Nome, policy):
    """Sum with E(a q^{4k}) prefactor, doubled-index middle factorial and a
    q^3-base terminating block."""
    a, b, c, d, e = v["a"], v["b"], v["c"], v["d"], v["e"]
    q, p = nome.q, nome.p
    q3 = q ** 3
    num = [((b, c), q, 1), ((d,), q, 2), ((e, q ** (-3 * n)), q3, 1)]
    den = [((a * q3 / b, a * q3 / c), q3, 1), ((a * q / d,), q, 2),
           ((a * q / e, a * q ** (3 * n + 1)), q, 1)]
    return _vwp_sum(_eprefactor(a, 4, q, p, policy), num, den, q, n, p, policy)


def _lhs_mixed32(v, n: int, nome: Nome, policy):
    """Sum with E(a q^{3k}) prefactor and swapped q^2 / q factorial bases."""
    a, b, c, d, e, f = v["a"], v["b"], v["c"], v["d"], v["e"], v["f"]
    q, p = nome.q, nome.p
    q2 = q * q
    num = [((b, c, d), q2, 1), ((e, f, q ** (-n)), q, 1)]
    den = [((a * q / b, a * q / c, a * q / d), q, 1),
           ((a * q2 / e, a * q2 / f, a * q ** (n + 2)), q2, 1)]
    return _vwp_sum(_eprefactor(a, 3, q, p, policy), num, den, q, n, p, policy)


def _lhs_family43(b1, b2, dslot, eslot, a, n: int, nome: Nome, policy):
    """E(a q^{4k}) family with single doubled slot and q^3 tail block."""
    q, p = nome.q, nome.p
    q3 = q ** 3
    num = [((b1, b2), q3, 1), ((dslot,), q, 2), ((eslot, q ** (-n)), q, 1)]
    den = [((a * q / b1, a * q / b2), q, 1), ((a * q / dslot,), q, 2),
           ((a * q3 / eslot, a * q ** (n + 3)), q3, 1)]
    return _vwp_sum(_eprefactor(a, 4, q, p, policy), num, den, q, n, p, policy)


def _lhs_family_half(b1, b2, d1, d2, a, n: int, nome: Nome, policy):
    """E(a q^{4k}) family with doubled terminating factorial, k <= n/2."""
    q, p = nome.q, nome.p
    q3 = q ** 3
    num = [((b1, b2), q3, 1), ((q ** (-n),), q, 2), ((d1, d2), q, 1)]
    den = [((a * q / b1, a * q / b2), q, 1), ((a * q ** (n + 1),), q, 2),
           ((a * q3 / d1, a * q3 / d2), q3, 1)]
    return _vwp_sum(_eprefactor(a, 4, q, p, policy), num, den, q, n // 2, p, policy)


def _gr_prefactor(a, b, q, r, p, policy):
    ea = _check_degen(eval_E(a, p, policy), "E(a)")
    eb = _check_degen(eval_E(b, p, policy), "E(b)")

    def pref(k: int):
        return eval_E(a * (q * r) ** k, p, policy) * \
            eval_E(b * r ** k * q ** (-k), p, policy) / (ea * eb)

    return pref


# --------------------------------------------------------------------------
# Identity registry
# --------------------------------------------------------------------------

_REGISTRY: list = []


def _register(ident: Identity) -> Identity:
    if any(x.id == ident.id for x in _REGISTRY):
        raise ValueError(f"duplicate identity id {ident.id}")
    _REGISTRY.append(ident)
    return ident


def _pt_unpack(pt: ParamPoint):
    return pt.values, pt.integers["n"], pt.nome


# ---- ten-term transformation and Jackson evaluation ----------------------

def _e109_lhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    uppers = (v["b"], v["c"], v["d"], v["e"], v["f"], v["g"], nome.q ** (-n))
    return _lhs_omega(v["a"], uppers, nome, n, policy)


def _e109_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b, c, d, e, f, g = (v[k] for k in "abcdefg")
    q = nome.q
    lam = a * a * q / (b * c * d)
    pref = _poch_ratio([a * q, a * q / (e * f), lam * q / e, lam * q / f],
                       [a * q / e, a * q / f, lam * q / (e * f), lam * q],
                       nome, n, policy)
    uppers = (lam * b / a, lam * c / a, lam * d / a, e, f, g, q ** (-n))
    val, wscale = omega_sum(lam, uppers, nome, n, policy)
    return pref * val, abs(pref) * wscale


_register(Identity(
    id="e109",
    description="ten-term very-well-poised transformation with shifted base point",
    free_params=("a", "b", "c", "d", "e", "f"),
    solved_params=("g",),
    termination=("n", 0, 5),
    lhs=_e109_lhs,
    rhs=_e109_rhs,
    solve=lambda v, n, q: {"g": v["a"] ** 3 * q ** (n + 2) /
                           (v["b"] * v["c"] * v["d"] * v["e"] * v["f"])},
))


def _e87_lhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    uppers = (v["b"], v["c"], v["d"], v["e"], nome.q ** (-n))
    return _lhs_omega(v["a"], uppers, nome, n, policy)


def _e87_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b, c, d = v["a"], v["b"], v["c"], v["d"]
    q = nome.q
    val = _poch_ratio([a * q, a * q / (b * c), a * q / (b * d), a * q / (c * d)],
                      [a * q / b, a * q / c, a * q / d, a * q / (b * c * d)],
                      nome, n, policy)
    return val, abs(val)


_register(Identity(
    id="e87",
    description="eight-term very-well-poised summation in closed product form",
    free_params=("a", "b", "c", "d"),
    solved_params=("e",),
    termination=("n", 0, 6),
    lhs=_e87_lhs,
    rhs=_e87_rhs,
    solve=lambda v, n, q: {"e": v["a"] ** 2 * q ** (n + 1) /
                           (v["b"] * v["c"] * v["d"])},
))


# ---- two-base telescoping sums --------------------------------------------

def _gr_lhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b, c, d, r = v["a"], v["b"], v["c"], v["d"], v["r"]
    q, p = nome.q, nome.p
    num = [((a / c, c / b), q, 1), ((a * b * d, 1.0 / d), r, 1)]
    den = [((c * r, a * b * r / c), r, 1), ((q / (b * d), a * d * q), q, 1)]
    return _vwp_sum(_gr_prefactor(a, b, q, r, p, policy), num, den, q, n, p, policy)


def _gr_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b, c, d, r = v["a"], v["b"], v["c"], v["d"], v["r"]
    q, p = nome.q, nome.p
    nr = nome.with_base(r)
    first = _e_ratio([c, a * b / c, a * d, b * d], [a, b, c * d, a * b * d / c],
                     p, policy)
    ratio = _poch_ratio([a / c, b * q ** (-n) / c], [b * d * q ** (-n), a * d],
                        nome, n + 1, policy)
    ratio *= _poch_ratio([a * b * d, d * r ** (-n)], [r ** (-n) / c, a * b / c],
                         nr, n + 1, policy)
    val = first * (1.0 - ratio)
    return val, abs(first) * max(1.0, float(abs(ratio)))


_register(Identity(
    id="gr_sum_general",
    description="two-base telescoping sum with free weight parameter",
    free_params=("a", "b", "c", "d"),
    solved_params=(),
    termination=("n", 0, 6),
    lhs=_gr_lhs,
    rhs=_gr_rhs,
    solve=lambda v, n, q: {},
    extra_bases=("r",),
))


def _sum1_lhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b, c, r = v["a"], v["b"], v["c"], v["r"]
    q, p = nome.q, nome.p
    num = [((a / c, c / b), q, 1), ((a * b * r ** n, r ** (-n)), r, 1)]
    den = [((c * r, a * b * r / c), r, 1),
           ((q * r ** (-n) / b, a * q * r ** n), q, 1)]
    return _vwp_sum(_gr_prefactor(a, b, q, r, p, policy), num, den, q, n, p, policy)


def _sum1_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b, c, r = v["a"], v["b"], v["c"], v["r"]
    p = nome.p
    val = _e_ratio([c, a * b / c, a * r ** n, b * r ** n],
                   [a, b, c * r ** n, a * b * r ** n / c], p, policy)
    return val, abs(val)


_register(Identity(
    id="sum1",
    description="two-base telescoping sum at the closing weight r^n",
    free_params=("a", "b", "c"),
    solved_params=(),
    termination=("n", 0, 6),
    lhs=_sum1_lhs,
    rhs=_sum1_rhs,
    solve=lambda v, n, q: {},
    extra_bases=("r",),
))


# ---- stretched-base summation family --------------------------------------

def _make_thmr(r: int) -> Identity:
    def lhs(pt, policy):
        v, n, nome = _pt_unpack(pt)
        a, b, c = v["a"], v["b"], v["c"]
        q = nome.q
        nr = nome.with_base(q ** r)
        uppers = [c, a * b / c]
        uppers += [b * q ** i for i in range(1, r + 1)]
        uppers += [a * q ** (n + i) for i in range(r)]
        uppers.append(q ** (-r * n))
        return _lhs_omega(a * b, tuple(uppers), nr, n, policy)

    def rhs(pt, policy):
        v, n, nome = _pt_unpack(pt)
        a, b, c = v["a"], v["b"], v["c"]
        q = nome.q
        nr = nome.with_base(q ** r)
        val = _poch_ratio([a / c, c / b], [a, 1.0 / b], nome, n, policy)
        val *= _poch_ratio([q ** r, a * b * q ** r],
                           [c * q ** r, a * b * q ** r / c], nr, n, policy)
        return val, abs(val)

    return Identity(
        id=f"thmr_r{r}",
        description=f"stretched-base (step {r}) very-well-poised summation",
        free_params=("a", "b", "c"),
        solved_params=(),
        termination=("n", 0, 5 if r <= 2 else (4 if r == 3 else 3)),
        lhs=lhs,
        rhs=rhs,
        solve=lambda v, n, q: {},
    )


for _r in (1, 2, 3, 4):
    _register(_make_thmr(_r))


# ---- quadratic transformation and its summation cases ----------------------

def _solve_quad_transform(which: str):
    def solve(v, n, q):
        d = v["a"] * q / (v["b"] * v["c"])
        f = v["a"] ** 2 * q ** (2 * n + 1) / v["e"]
        g = v["a"] / v["b"] if which == "gab" else v["a"] / v["e"]
        return {"d": d, "f": f, "g": g}

    return solve


def _quad_transform_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b, c, d, e, f, g = (v[k] for k in "abcdefg")
    q = nome.q
    q2 = q * q
    n2 = nome.with_base(q2)
    pref = _poch_ratio(
        [a * q2, a * a * q2 / (b * c * e), a * a * q2 / (b * d * e * g),
         a * g * q2 / (c * d)],
        [a * a * q2 / (b * e * g), a * g * q2 / c, a * q2 / d,
         a * a * q2 / (b * c * d * e)],
        n2, n, policy)
    uppers = (a / c, g * q2 / c, b * e * g / a, d, f, g, q2 ** (-n))
    val, wscale = omega_sum(a * g / c, uppers, n2, n, policy)
    return pref * val, abs(pref) * wscale


def _lhs_quadratic_pt(pt, policy):
    v, n, nome = _pt_unpack(pt)
    return _lhs_quadratic(v, n, nome, policy)


for _which in ("gab", "gae"):
    _register(Identity(
        id=f"etrafo_quadratic_{_which}",
        description="quadratic transformation into a ten-term series "
                    f"(gauge {_which[-2:]})",
        free_params=("a", "b", "c", "e"),
        solved_params=("d", "f", "g"),
        termination=("n", 0, 5),
        lhs=_lhs_quadratic_pt,
        rhs=_quad_transform_rhs,
        solve=_solve_quad_transform(_which),
    ))


def _cor1_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b, c, d, e = (v[k] for k in "abcde")
    q2 = nome.q ** 2
    n2 = nome.with_base(q2)
    val = _poch_ratio(
        [a * q2, a * a * q2 / (b * c * e), a * a * q2 / (b * d * e),
         a * q2 / (c * d)],
        [a * a * q2 / (b * e), a * q2 / c, a * q2 / d,
         a * a * q2 / (b * c * d * e)],
        n2, n, policy)
    return val, abs(val)


_register(Identity(
    id="cor1_ba",
    description="quadratic summation, first-parameter coalescence",
    free_params=("a", "c", "e"),
    solved_params=("b", "d", "f"),
    termination=("n", 0, 6),
    lhs=_lhs_quadratic_pt,
    rhs=_cor1_rhs,
    solve=lambda v, n, q: {"b": v["a"], "d": q / v["c"],
                           "f": v["a"] ** 2 * q ** (2 * n + 1) / v["e"]},
))

_register(Identity(
    id="cor1_ea",
    description="quadratic summation, middle-parameter coalescence",
    free_params=("a", "b", "c"),
    solved_params=("d", "e", "f"),
    termination=("n", 0, 6),
    lhs=_lhs_quadratic_pt,
    rhs=_cor1_rhs,
    solve=lambda v, n, q: {"d": v["a"] * q / (v["b"] * v["c"]), "e": v["a"],
                           "f": v["a"] * q ** (2 * n + 1)},
))


# ---- cubic transformation and its summation cases ---------------------------

def _solve_cubic_transform(which: str):
    def solve(v, n, q):
        d = v["a"] * q / (v["b"] * v["c"])
        e = v["a"] ** 2 * q ** (3 * n + 1) / d
        f = v["a"] / v["b"] if which == "fab" else v["a"] / e
        return {"d": d, "e": e, "f": f}

    return solve


def _cubic_transform_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b, c, d, e, f = (v[k] for k in "abcdef")
    q = nome.q
    q3 = q ** 3
    n3 = nome.with_base(q3)
    pref = _poch_ratio(
        [a * q3, a * a * q3 / (b * c * e), a * a * q3 / (b * d * e * f),
         a * f * q3 / (c * d)],
        [a * a * q3 / (b * e * f), a * q3 * f / c, a * q3 / d,
         a * a * q3 / (b * c * d * e)],
        n3, n, policy)
    uppers = (a / c, f * q3 / c, b * e * f / a, d, d * q, f, q3 ** (-n))
    val, wscale = omega_sum(a * f / c, uppers, n3, n, policy)
    return pref * val, abs(pref) * wscale


def _lhs_cubic_pt(pt, policy):
    v, n, nome = _pt_unpack(pt)
    return _lhs_cubic(v, n, nome, policy)


for _which in ("fab", "fae"):
    _register(Identity(
        id=f"etrafo2_cubic_{_which}",
        description="cubic transformation into a ten-term series "
                    f"(gauge {_which[-2:]})",
        free_params=("a", "b", "c"),
        solved_params=("d", "e", "f"),
        termination=("n", 0, 5),
        lhs=_lhs_cubic_pt,
        rhs=_cubic_transform_rhs,
        solve=_solve_cubic_transform(_which),
    ))


def _cor_cubic_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b, c, d, e = (v[k] for k in "abcde")
    q3 = nome.q ** 3
    n3 = nome.with_base(q3)
    val = _poch_ratio(
        [a * q3, a * a * q3 / (b * c * e), a * a * q3 / (b * d * e),
         a * q3 / (c * d)],
        [a * a * q3 / (b * e), a * q3 / c, a * q3 / d,
         a * a * q3 / (b * c * d * e)],
        n3, n, policy)
    return val, abs(val)


_register(Identity(
    id="cor_cubic_ba",
    description="cubic summation, first-parameter coalescence",
    free_params=("a", "c"),
    solved_params=("b", "d", "e"),
    termination=("n", 0, 5),
    lhs=_lhs_cubic_pt,
    rhs=_cor_cubic_rhs,
    solve=lambda v, n, q: {"b": v["a"], "d": q / v["c"],
                           "e": v["a"] ** 2 * q ** (3 * n + 1) * v["c"] / q},
))

_register(Identity(
    id="cor_cubic_ea",
    description="cubic summation, tail-parameter coalescence",
    free_params=("a", "b"),
    solved_params=("c", "d", "e"),
    termination=("n", 0, 3),
    lhs=_lhs_cubic_pt,
    rhs=_cor_cubic_rhs,
    solve=lambda v, n, q: {"c": q ** (-3 * n) / v["b"],
                           "d": v["a"] * q ** (3 * n + 1), "e": v["a"]},
))


def _cor_cubic_da_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b, c = v["a"], v["b"], v["c"]
    q = nome.q
    q3 = q ** 3
    n3 = nome.with_base(q3)
    val = _poch_ratio([a * q * q, a * q3, b * q, c * q],
                      [q, q * q, a * q3 / b, a * q3 / c], n3, n, policy)
    return val, abs(val)


_register(Identity(
    id="cor_cubic_da",
    description="cubic summation with doubled-index slot pinned to the base point",
    free_params=("a", "b"),
    solved_params=("c", "d", "e"),
    termination=("n", 0, 5),
    lhs=_lhs_cubic_pt,
    rhs=_cor_cubic_da_rhs,
    solve=lambda v, n, q: {"c": q / v["b"], "d": v["a"],
                           "e": v["a"] * q ** (3 * n + 1)},
))


# ---- mixed-base transformations -------------------------------------------

def _lhs_mixed32_pt(pt, policy):
    v, n, nome = _pt_unpack(pt)
    return _lhs_mixed32(v, n, nome, policy)


def _etrafo3_prefactor(v, n, nome, policy):
    a, b, c = v["a"], v["b"], v["c"]
    q = nome.q
    n2 = nome.with_base(q * q)
    val = _poch_ratio([a * q, a * q / (b * c)], [a * q / b, a * q / c],
                      nome, n, policy)
    val *= _poch_ratio([a * q ** (1 - n) / b, a * q ** (1 - n) / c],
                       [a * q ** (1 - n), a * q ** (1 - n) / (b * c)],
                       n2, n, policy)
    return val


def _etrafo3_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b, c, d, e, f = (v[k] for k in "abcdef")
    q = nome.q
    n2 = nome.with_base(q * q)
    pref = _etrafo3_prefactor(v, n, nome, policy)
    uppers = (b, c, d, a / e, a / f, q ** (1 - n), q ** (-n))
    val, wscale = omega_sum(a * a / (e * f), uppers, n2, n // 2, policy)
    return pref * val, abs(pref) * wscale


_register(Identity(
    id="etrafo3",
    description="quadratic-base transformation with halved inner series",
    free_params=("a", "b", "c", "e"),
    solved_params=("d", "f"),
    termination=("n", 0, 8),
    lhs=_lhs_mixed32_pt,
    rhs=_etrafo3_rhs,
    solve=lambda v, n, q: {"d": v["a"] ** 2 * q / (v["b"] * v["c"]),
                           "f": v["a"] * q ** (n + 1) / v["e"]},
))


def _lhs_etrafo4_pt(pt, policy):
    v, n, nome = _pt_unpack(pt)
    return _lhs_family_half(v["b"], v["c"], v["d"], v["e"], v["a"], n, nome, policy)


def _etrafo4_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b, c, d, e = (v[k] for k in "abcde")
    q = nome.q
    n3 = nome.with_base(q ** 3)
    pref = _poch_ratio([a * q], [a * q / b], nome, n, policy)
    pref *= _poch_ratio([a * q ** (2 - n) / b], [a * q ** (2 - n)], n3, n, policy)
    uppers = (b, c, a / d, a / e, q ** (2 - n), q ** (1 - n), q ** (-n))
    val, wscale = omega_sum(a * a / (d * e), uppers, n3, n // 3, policy)
    return pref * val, abs(pref) * wscale


_register(Identity(
    id="etrafo4",
    description="cubic-base transformation over the half-range sum",
    free_params=("a", "b", "d"),
    solved_params=("c", "e"),
    termination=("n", 0, 8),
    lhs=_lhs_etrafo4_pt,
    rhs=_etrafo4_rhs,
    solve=lambda v, n, q: {"c": v["a"] ** 2 * q ** (n + 1) / v["b"],
                           "e": v["a"] * q ** (n + 1) / v["d"]},
))


def _lhs_etrafo5_pt(pt, policy):
    v, n, nome = _pt_unpack(pt)
    return _lhs_family43(v["b"], v["c"], v["d"], v["e"], v["a"], n, nome, policy)


def _etrafo5_solve(v, n, q):
    c = v["a"] ** 2 * q / (v["b"] * v["d"])
    e = v["a"] * q ** (n + 1) / v["d"]
    return {"c": c, "e": e}


def _etrafo5_rhs_b0(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b, c, d, e = (v[k] for k in "abcde")
    q = nome.q
    n3 = nome.with_base(q ** 3)
    s = _sigma3(n)
    m = (n + s) // 3
    base = a * q ** (3 - s)
    pref = _poch_ratio(
        [base, base / (b * c), base / (b * d), base / (c * d)],
        [base / b, base / c, base / d, base / (b * c * d)], n3, m, policy)
    uppers = (a / (d * q), a / e, b, c, d, q ** (1 - n), q ** (-n))
    val, wscale = omega_sum(a * a / (d * e * q), uppers, n3, n // 3, policy)
    return pref * val, abs(pref) * wscale


def _etrafo5_rhs_b1(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b, c, d, e = (v[k] for k in "abcde")
    q = nome.q
    n3 = nome.with_base(q ** 3)
    s = _sigma3(n)
    m = (n + s) // 3
    hi = a * q ** (3 - s)
    lo = a * q ** (2 - s)
    pref = _poch_ratio(
        [hi, hi / (b * c), lo / (b * d), lo / (c * d)],
        [hi / b, hi / c, lo / d, lo / (b * c * d)], n3, m, policy)
    uppers = (a / d, a / e, b, c, d * q, q ** (2 - n), q ** (-n))
    val, wscale = omega_sum(a * a / (d * e), uppers, n3, n // 3, policy)
    return pref * val, abs(pref) * wscale


def _etrafo5_rhs_b2(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b, c, d, e = (v[k] for k in "abcde")
    q, p = nome.q, nome.p
    n3 = nome.with_base(q ** 3)
    s = _sigma3(n)
    m = (n + s) // 3
    hi = a * q ** (3 - s)
    lo = a * q ** (1 - s)
    pref = _e_ratio(
        [a * q ** s, a * q ** s / (b * c), a * q / (b * d), a * q / (c * d)],
        [a * q ** s / b, a * q ** s / c, a * q / d, a * q / (b * c * d)],
        p, policy)
    pref *= _poch_ratio(
        [hi, hi / (b * c), lo / (b * d), lo / (c * d)],
        [hi / b, hi / c, lo / d, lo / (b * c * d)], n3, m, policy)
    uppers = (a * q / d, a / e, b, c, d * q * q, q ** (2 - n), q ** (1 - n))
    val, wscale = omega_sum(a * a * q / (d * e), uppers, n3, n // 3, policy)
    return pref * val, abs(pref) * wscale


for _sigma, _rhs, _pred in (
        (0, _etrafo5_rhs_b0, lambda n: n % 3 != 2),
        (1, _etrafo5_rhs_b1, lambda n: n % 3 != 1),
        (2, _etrafo5_rhs_b2, lambda n: n % 3 != 0)):
    _register(Identity(
        id=f"etrafo5_b{_sigma}",
        description=f"cubic-base transformation, residue branch {_sigma}",
        free_params=("a", "b", "d"),
        solved_params=("c", "e"),
        termination=("n", 0, 8),
        lhs=_lhs_etrafo5_pt,
        rhs=_rhs,
        solve=_etrafo5_solve,
        branch=_pred,
    ))


# ---- summation corollaries of the mixed-base transformations ----------------

def _cor_etrafo3_fa_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    val = _etrafo3_prefactor(v, n, nome, policy)
    return val, abs(val)


def cor_etrafo3_fa_sigma_rhs(pt, policy=DEFAULT_POLICY):
    """The equivalent residue-indexed closed form of the same summation."""
    v, n, nome = _pt_unpack(pt)
    a, b, c, d = v["a"], v["b"], v["c"], v["d"]
    q = nome.q
    n2 = nome.with_base(q * q)
    s = n % 2
    m = (n + s) // 2
    base = a * q ** (2 - s)
    return _poch_ratio(
        [base, base / (b * c), base / (b * d), base / (c * d)],
        [base / b, base / c, base / d, base / (b * c * d)], n2, m, policy)


_register(Identity(
    id="cor_etrafo3_fa",
    description="quadratic-base summation from pinning the inner series",
    free_params=("a", "b", "c"),
    solved_params=("d", "e", "f"),
    termination=("n", 0, 8),
    lhs=_lhs_mixed32_pt,
    rhs=_cor_etrafo3_fa_rhs,
    solve=lambda v, n, q: {"d": v["a"] ** 2 * q / (v["b"] * v["c"]),
                           "e": q ** (n + 1), "f": v["a"]},
))


def _lhs_egs(pt, policy):
    # The base point itself occupies the first quadratic-base slot here.
    v, n, nome = _pt_unpack(pt)
    slots = {"a": v["a"], "b": v["a"], "c": v["b"], "d": v["c"],
             "e": v["d"], "f": v["e"]}
    return _lhs_mixed32(slots, n, nome, policy)


def _egs_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    if n % 2 == 1:
        return 0.0, 0.0
    a, b, c, d = v["a"], v["b"], v["c"], v["d"]
    q2 = nome.q ** 2
    n2 = nome.with_base(q2)
    val = _poch_ratio(
        [a * q2, a * q2 / (b * c), a * q2 / (b * d), a * q2 / (c * d)],
        [a * q2 / b, a * q2 / c, a * q2 / d, a * q2 / (b * c * d)],
        n2, n // 2, policy)
    return val, abs(val)


_register(Identity(
    id="egs",
    description="quadratic-base summation vanishing at odd order",
    free_params=("a", "b", "d"),
    solved_params=("c", "e"),
    termination=("n", 0, 9),
    lhs=_lhs_egs,
    rhs=_egs_rhs,
    solve=lambda v, n, q: {"c": v["a"] * q / v["b"],
                           "e": v["a"] * q ** (n + 1) / v["d"]},
    zero_rhs=True,
))


def _lhs_cor_etrafo4_ea(pt, policy):
    v, n, nome = _pt_unpack(pt)
    return _lhs_family_half(v["b"], v["c"], v["a"], v["d"], v["a"], n, nome, policy)


def _cor_etrafo4_ea_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b = v["a"], v["b"]
    q = nome.q
    n3 = nome.with_base(q ** 3)
    val = _poch_ratio([a * q], [a * q / b], nome, n, policy)
    val *= _poch_ratio([a * q ** (2 - n) / b], [a * q ** (2 - n)], n3, n, policy)
    return val, abs(val)


_register(Identity(
    id="cor_etrafo4_ea",
    description="half-range cubic-base summation, tail coalescence",
    free_params=("a", "b"),
    solved_params=("c", "d"),
    termination=("n", 0, 8),
    lhs=_lhs_cor_etrafo4_ea,
    rhs=_cor_etrafo4_ea_rhs,
    solve=lambda v, n, q: {"c": v["a"] ** 2 * q ** (n + 1) / v["b"],
                           "d": q ** (n + 1)},
))


def _lhs_c2(pt, policy):
    v, n, nome = _pt_unpack(pt)
    return _lhs_family_half(v["a"], v["b"], v["c"], v["d"], v["a"], n, nome, policy)


def _c2_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    if n % 3 == 2:
        return 0.0, 0.0
    a, b, c, d = v["a"], v["b"], v["c"], v["d"]
    q3 = nome.q ** 3
    n3 = nome.with_base(q3)
    val = _poch_ratio(
        [a * q3, a * q3 / (b * c), a * q3 / (b * d)],
        [a * q3 / c, a * q3 / d, a * q3 / (b * c * d)], n3, n // 3, policy)
    return val, abs(val)


_register(Identity(
    id="c2",
    description="half-range cubic-base summation vanishing on one residue class",
    free_params=("a", "c"),
    solved_params=("b", "d"),
    termination=("n", 0, 8),
    lhs=_lhs_c2,
    rhs=_c2_rhs,
    solve=lambda v, n, q: {"b": v["a"] * q ** (n + 1),
                           "d": v["a"] * q ** (n + 1) / v["c"]},
    zero_rhs=True,
))


def _lhs_cor_etrafo5_ea(pt, policy):
    v, n, nome = _pt_unpack(pt)
    return _lhs_family43(v["b"], v["c"], v["d"], v["a"], v["a"], n, nome, policy)


def _cor_etrafo5_ea_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b, c, d = v["a"], v["b"], v["c"], v["d"]
    q = nome.q
    q3 = q ** 3
    n3 = nome.with_base(q3)
    if n % 3 == 0:
        base, m = a * q3, n // 3
        val = _poch_ratio(
            [base, base / (b * c), base / (b * d), base / (c * d)],
            [base / b, base / c, base / d, base / (b * c * d)], n3, m, policy)
    elif n % 3 == 1:
        base, m = a * q, (n + 2) // 3
        val = _poch_ratio(
            [base, base / (b * c), base / (b * d), base / (c * d)],
            [base / b, base / c, base / d, base / (b * c * d)], n3, m, policy)
    else:
        hi, lo, m = a * q * q, a * q, (n + 1) // 3
        val = _poch_ratio(
            [hi, hi / (b * c), lo / (b * d), lo / (c * d)],
            [hi / b, hi / c, lo / d, lo / (b * c * d)], n3, m, policy)
    return val, abs(val)


_register(Identity(
    id="cor_etrafo5_ea",
    description="cubic-base summation with residue-split closed forms",
    free_params=("a", "b"),
    solved_params=("c", "d"),
    termination=("n", 0, 6),
    lhs=_lhs_cor_etrafo5_ea,
    rhs=_cor_etrafo5_ea_rhs,
    solve=lambda v, n, q: {"d": q ** (n + 1),
                           "c": v["a"] ** 2 * q ** (-n) / v["b"]},
))


def _lhs_cor_chu(pt, policy):
    v, n, nome = _pt_unpack(pt)
    return _lhs_family43(v["a"], v["b"], v["c"], v["d"], v["a"], n, nome, policy)


def _cor_chu_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    if n % 3 != 0:
        return 0.0, 0.0
    a, b = v["a"], v["b"]
    q = nome.q
    q3 = q ** 3
    n3 = nome.with_base(q3)
    val = _poch_ratio([q, q * q, a * q3, b * b / a],
                      [b * q, b * q * q, b / a, a * q3 / b], n3, n // 3, policy)
    return val, abs(val)


_register(Identity(
    id="cor_chu",
    description="cubic-base summation vanishing off one residue class",
    free_params=("a", "b"),
    solved_params=("c", "d"),
    termination=("n", 0, 9),
    lhs=_lhs_cor_chu,
    rhs=_cor_chu_rhs,
    solve=lambda v, n, q: {"c": v["a"] * q / v["b"], "d": v["b"] * q ** n},
    zero_rhs=True,
))


def _lhs_cor_etrafo5_da(pt, policy):
    v, n, nome = _pt_unpack(pt)
    return _lhs_family43(v["b"], v["c"], v["a"], v["d"], v["a"], n, nome, policy)


def _cor_etrafo5_da_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    if n % 3 == 1:
        return 0.0, 0.0
    a, b, c = v["a"], v["b"], v["c"]
    q = nome.q
    q3 = q ** 3
    n3 = nome.with_base(q3)
    if n % 3 == 0:
        val = _poch_ratio([a * q3, q * q / b, q * q / c],
                          [q * q / (b * c), a * q3 / b, a * q3 / c],
                          n3, n // 3, policy)
    else:
        val = _poch_ratio([a * q * q, q / b, q / c],
                          [q / (b * c), a * q * q / b, a * q * q / c],
                          n3, (n + 2) // 3, policy)
    return val, abs(val)


_register(Identity(
    id="cor_etrafo5_da",
    description="cubic-base summation with doubled slot at the base point",
    free_params=("a", "b"),
    solved_params=("c", "d"),
    termination=("n", 0, 8),
    lhs=_lhs_cor_etrafo5_da,
    rhs=_cor_etrafo5_da_rhs,
    solve=lambda v, n, q: {"c": v["a"] * q / v["b"], "d": q ** (n + 1)},
    zero_rhs=True,
))


# ---- quartic results --------------------------------------------------------

def _quartic_trafo_lhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b = v["a"], v["b"]
    q, p = nome.q, nome.p
    q2, q3, q4 = q * q, q ** 3, q ** 4
    num = [((b * b / (a * q2),), q, 1),
           ((a * q / b, a * q2 / b, a * q3 / b), q2, 1),
           ((a * b * q ** (4 * n), q ** (-4 * n)), q4, 1)]
    den = [((a * a * q ** 6 / (b * b),), q4, 1),
           ((b, b * q, b * q2), q3, 1),
           ((q ** (1 - 4 * n) / b, a * q ** (4 * n + 1)), q, 1)]
    return _vwp_sum(_eprefactor(a, 5, q, p, policy), num, den, q, n, p, policy)


def _quartic_trafo_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a, b = v["a"], v["b"]
    q = nome.q
    q2, q4 = q * q, q ** 4
    n4 = nome.with_base(q4)
    pref = _poch_ratio([a * q], [b], nome, 4 * n, policy)
    pref *= _poch_ratio([q4, b ** 3 / (a * q2)],
                        [a * b, a * a * q ** 6 / (b * b)], n4, n, policy)
    uppers = (a * a * q2 / (b * b), b, b / q, b / q2, b / q ** 3)
    val, wscale = omega_sum(a * b / q4, uppers, n4, n, policy)
    return pref * val, abs(pref) * wscale


_register(Identity(
    id="quartic_trafo",
    description="quartic-step transformation between two-parameter sums",
    free_params=("a", "b"),
    solved_params=(),
    termination=("n", 0, 3),
    lhs=_quartic_trafo_lhs,
    rhs=_quartic_trafo_rhs,
    solve=lambda v, n, q: {},
))


def _quartic_sum_lhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    a = v["a"]
    q, p = nome.q, nome.p
    q2, q3, q4 = q * q, q ** 3, q ** 4
    num = [((a * a,), q4, 1), ((a, a * q, a * q2), q3, 1),
           ((a * q ** (n + 1), q ** (-n)), q, 1)]
    den = [((q,), q, 1), ((a, a * q, a * q2), q2, 1),
           ((a * q ** (3 - n), a * a * q ** (n + 4)), q4, 1)]
    return _vwp_sum(_eprefactor(a * a, 5, q, p, policy), num, den, q, n, p, policy)


def _quartic_sum_rhs(pt, policy):
    v, n, nome = _pt_unpack(pt)
    if n % 4 != 0:
        return 0.0, 0.0
    a = v["a"]
    q = nome.q
    q4 = q ** 4
    n4 = nome.with_base(q4)
    val = _poch_ratio([q, q * q, q ** 3, a * a * q4],
                      [a * q * q, a * q ** 3, a * q4, q / a],
                      n4, n // 4, policy)
    return val, abs(val)


_register(Identity(
    id="quartic_sum",
    description="quartic-step summation vanishing off one residue class",
    free_params=("a",),
    solved_params=(),
    termination=("n", 0, 8),
    lhs=_quartic_sum_lhs,
    rhs=_quartic_sum_rhs,
    solve=lambda v, n, q: {},
    zero_rhs=True,
))


# --------------------------------------------------------------------------
# Sampling and checking
# --------------------------------------------------------------------------

def list_identities() -> list:
    """All catalog entries, stable order."""
    return list(_REGISTRY)


def get_identity(ident_id: str) -> Identity:
    for ident in _REGISTRY:
        if ident.id == ident_id:
            return ident
    raise KeyError(f"unknown identity id {ident_id!r}")


def _rng_for(ident_id: str, seed: int, trial: int) -> np.random.Generator:
    key = zlib.crc32(ident_id.encode("utf-8"))
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(key, trial))
    return np.random.Generator(np.random.Philox(ss))


def _draw_complex(rng: np.random.Generator, bounds: tuple) -> complex:
    mod = rng.uniform(bounds[0], bounds[1])
    phase = rng.uniform(0.0, 2.0 * np.pi)
    return complex(mod * np.cos(phase), mod * np.sin(phase))


def _bases_clear(q: complex, p: complex) -> bool:
    # Sampling keeps powers of q away from powers of p (identities with
    # b-periodicity proofs assume q^{m1} != p^{m2}).
    for m1 in range(1, 5):
        qm = q ** m1
        for m2 in range(1, 5):
            pm = p ** m2
            if abs(qm - pm) < 1e-6 * max(abs(qm), abs(pm)):
                return False
    return True


def _draw_point(ident: Identity, rng: np.random.Generator,
                region: SamplingRegion) -> ParamPoint:
    while True:
        q = _draw_complex(rng, region.q_mod)
        p = _draw_complex(rng, region.p_mod)
        if _bases_clear(q, p):
            break
    values = {}
    for name in ident.extra_bases:
        values[name] = _draw_complex(rng, region.q_mod)
    for name in ident.free_params:
        values[name] = _draw_complex(rng, region.param_mod)
    t_name, lo, hi = ident.termination
    allowed = [m for m in range(lo, hi + 1)
               if ident.branch is None or ident.branch(m)]
    n = int(allowed[rng.integers(0, len(allowed))])
    values.update(ident.solve(values, n, q))
    return ParamPoint(Nome(q, p), values, {t_name: n})


def _is_finite(z) -> bool:
    try:
        return bool(np.isfinite(complex(z).real) and np.isfinite(complex(z).imag))
    except (OverflowError, TypeError):
        return True  # wide scalar types do not overflow


def _extend_point(ident: Identity, pt: ParamPoint, dps: int = 50) -> ParamPoint:
    """Extended-precision view of a sampled point.

    Free parameters and bases are widened and the constrained parameters are
    re-solved at full precision, so extended runs measure the identity itself
    rather than the binary64 rounding of the constraint solver.
    """
    import mpmath

    mpmath.mp.dps = dps
    conv = lambda z: mpmath.mpc(z)
    nome = Nome(conv(pt.nome.q), conv(pt.nome.p))
    values = {name: conv(pt.values[name])
              for name in (*ident.extra_bases, *ident.free_params)}
    n = pt.integers[ident.termination[0]]
    values.update(ident.solve(values, n, nome.q))
    return ParamPoint(nome, values, dict(pt.integers))


MAX_RESAMPLES = 100

# A nonzero identity value this far below the summand scale is numerically
# indistinguishable from zero in binary64; such draws are resampled, in the
# same spirit as the determinant condition-number guard.
CONDITION_LIMIT = 1e6
CONDITION_LIMIT_EXTENDED = 1e30


def _admissible_trial(ident: Identity, seed: int, trial: int,
                      region: SamplingRegion, precision: str,
                      policy: TruncationPolicy | None):
    """Draw until both sides evaluate cleanly; returns point, values, count."""
    rng = _rng_for(ident.id, seed, trial)
    pol = policy or (EXTENDED_POLICY if precision == "extended" else DEFAULT_POLICY)
    cond_limit = CONDITION_LIMIT_EXTENDED if precision == "extended" else CONDITION_LIMIT
    resamples = 0
    for _ in range(MAX_RESAMPLES + 1):
        pt = _draw_point(ident, rng, region)
        work = _extend_point(ident, pt) if precision == "extended" else pt
        try:
            lhs, scale = ident.lhs(work, pol)
            rhs, rhs_scale = ident.rhs(work, pol)
            if not (_is_finite(lhs) and _is_finite(rhs)):
                raise DegenerateParameters("non-finite value at working precision")
            if rhs != 0 and max(scale, rhs_scale) > \
                    cond_limit * float(abs(lhs) + abs(rhs)):
                raise DegenerateParameters(
                    "cancellation-dominated draw, value far below summand scale")
            return pt, lhs, rhs, scale, resamples
        except DegenerateParameters:
            resamples += 1
    raise SamplingExhausted(
        f"{ident.id}: no admissible point after {MAX_RESAMPLES} resamples")


def sample_point(ident: Identity, seed: int,
                 region: SamplingRegion = DEFAULT_REGION) -> ParamPoint:
    """An admissible parameter point for the identity; deterministic in seed.

    The point returned is the one trial 0 of :func:`check_identity` would
    use with the same seed.
    """
    pt, _, _, _, _ = _admissible_trial(ident, seed, 0, region, "double", None)
    return pt


def trial_error(lhs, rhs, scale: float) -> float:
    """Relative error of one trial; zero right sides use the summand scale."""
    if rhs == 0:
        return float(abs(lhs)) / max(scale, TINY)
    return float(abs(lhs - rhs) / (abs(lhs) + abs(rhs) + TINY))


def check_identity(ident: Identity, trials: int = 100, tol: float = 1e-8,
                   seed: int = 1, region: SamplingRegion = DEFAULT_REGION,
                   precision: str = "double",
                   policy: TruncationPolicy | None = None) -> VerificationReport:
    """Randomized verification of one identity over independent trials."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    started = perf_counter()
    errs = []
    failures = []
    total_resamples = 0
    worst_err = -1.0
    worst_point = None
    for trial in range(trials):
        pt, lhs, rhs, scale, resamples = _admissible_trial(
            ident, seed, trial, region, precision, policy)
        total_resamples += resamples
        err = trial_error(lhs, rhs, scale)
        errs.append(err)
        dump = point_dump(pt.nome, pt.values, pt.integers)
        if err > worst_err:
            worst_err = err
            worst_point = dump
        if err > tol:
            failures.append(TrialFailure(trial_index=trial, rel_err=err, point=dump))
    return VerificationReport(
        identity_id=ident.id,
        trials=trials,
        tol=tol,
        seed=seed,
        max_rel_err=max(errs),
        mean_rel_err=sum(errs) / len(errs),
        failures=failures,
        resamples=total_resamples,
        wall_time_ms=(perf_counter() - started) * 1e3,
        worst_point=worst_point,
    )


def cross_check_transform_pairs(trials: int = 20, seed: int = 1,
                                region: SamplingRegion = DEFAULT_REGION,
                                p_zero: bool = False,
                                policy: TruncationPolicy | None = None) -> dict:
    """Agreement of the two gauge choices of each transformation's right side.

    The left side of the quadratic (resp. cubic) transformation does not
    involve the gauge parameter, so the two right-hand forms must agree at
    matched points; this is itself a ten-term transformation instance.
    Returns {pair name: max relative difference}.
    """
    pol = policy or DEFAULT_POLICY
    out = {}
    for pair_name, id_a, id_b in (
            ("quadratic", "etrafo_quadratic_gab", "etrafo_quadratic_gae"),
            ("cubic", "etrafo2_cubic_fab", "etrafo2_cubic_fae")):
        ident_a = get_identity(id_a)
        ident_b = get_identity(id_b)
        worst = 0.0
        for trial in range(trials):
            rng = _rng_for(pair_name, seed, trial)
            for _ in range(MAX_RESAMPLES + 1):
                pt = _draw_point(ident_a, rng, region)
                if p_zero:
                    pt = ParamPoint(Nome(pt.nome.q, 0.0), pt.values, pt.integers)
                n = pt.integers["n"]
                vb = dict(pt.values)
                vb.update(ident_b.solve(
                    {k: vb[k] for k in ident_b.free_params}, n, pt.nome.q))
                pt_b = ParamPoint(pt.nome, vb, pt.integers)
                try:
                    ra, sa = ident_a.rhs(pt, pol)
                    rb, sb = ident_b.rhs(pt_b, pol)
                    if not (_is_finite(ra) and _is_finite(rb)):
                        raise DegenerateParameters("non-finite")
                    if max(sa, sb) > CONDITION_LIMIT * float(abs(ra) + abs(rb)):
                        raise DegenerateParameters("cancellation-dominated")
                except DegenerateParameters:
                    continue
                worst = max(worst, float(abs(ra - rb) / (abs(ra) + abs(rb) + TINY)))
                break
            else:
                raise SamplingExhausted(pair_name)
        out[pair_name] = worst
    return out
