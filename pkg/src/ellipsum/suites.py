"""Named property suites behind the CLI: kernel, inversion, determinants,
cn, conjecture.

Each runner returns a list of CheckResult records; a suite passes when every
check's worst relative error stays within its tolerance.  All randomness is
drawn from the same seeded, splittable generator family as the catalog, so
suite output is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import DEFAULT_REGION, SamplingRegion, _draw_complex, _rng_for
from .determinants import (
    COND_LIMIT,
    andrews_stanton_lu,
    andrews_stanton_matrix,
    andrews_stanton_sides,
    corollary_determ_matrix,
    corollary_determ_sides,
    det_lemma_matrix,
    det_numeric,
    elliptic_det_lemma_sides,
    shifted_product_family,
    theta_det_sides,
)
from .errors import BalanceViolation, DegenerateParameters
from .inversion import (
    KrattenthalerPair,
    RawRPair,
    RStepPair,
    check_orthogonality,
    cubic_replay_sides,
    esum_sides,
    macdonald_sides,
    quadratic_replay_sides,
)
from .kernel import Nome, binom2, eval_E, pochhammer_e, theta1
from .multivar import CnPoint, cn_jackson_sides, conjecture_sides, omega87_sides

TINY = 1e-300


@dataclass
class CheckResult:
    name: str
    trials: int
    tol: float
    max_rel_err: float
    resamples: int = 0

    @property
    def passed(self) -> bool:
        return self.max_rel_err <= self.tol

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "tol": self.tol,
            "max_rel_err": self.max_rel_err,
            "resamples": self.resamples,
            "passed": self.passed,
        }


def _rel(a, b) -> float:
    return float(abs(a - b) / (abs(a) + abs(b) + TINY))


def _resampling(draw, check, max_tries: int = 100):
    """Run check(draw()) with resampling on degenerate/ill-conditioned draws."""
    tries = 0
    while True:
        try:
            return check(*draw()), tries
        except (DegenerateParameters, BalanceViolation):
            tries += 1
            if tries > max_tries:
                raise


# --------------------------------------------------------------------------
# kernel
# --------------------------------------------------------------------------

def run_kernel_suite(trials: int = 100, seed: int = 1,
                     region: SamplingRegion = DEFAULT_REGION) -> list:
    results = []

    def draws(tag: str):
        rng = _rng_for(f"suite.kernel.{tag}", seed, 0)
        for _ in range(trials):
            q = _draw_complex(rng, region.q_mod)
            p = _draw_complex(rng, region.p_mod)
            x = _draw_complex(rng, region.param_mod)
            a = _draw_complex(rng, region.param_mod)
            yield rng, q, p, x, a

    worst = 0.0
    for rng, q, p, x, a in draws("reflection"):
        worst = max(worst, _rel(eval_E(x, p), -x * eval_E(1 / x, p)))
        worst = max(worst, _rel(eval_E(x, p), eval_E(p / x, p)))
    results.append(CheckResult("reflection", trials, 1e-10, worst))

    worst = 0.0
    for rng, q, p, x, a in draws("shift_base"):
        for k in (-2, -1, 1, 2):
            rhs = (-x) ** k * p ** binom2(k) * eval_E(x * p ** k, p)
            worst = max(worst, _rel(eval_E(x, p), rhs))
    results.append(CheckResult("quasi_periodicity", trials, 1e-10, worst))

    worst = 0.0
    for rng, q, p, x, a in draws("shift_factorial"):
        nome = Nome(q, p)
        for k in (1, 2):
            for n in (1, 2, 3, 4):
                lhs = pochhammer_e(a, nome, n)
                rhs = (-a) ** (n * k) * p ** (n * binom2(k)) * \
                    q ** (k * binom2(n)) * pochhammer_e(a * p ** k, nome, n)
                worst = max(worst, _rel(lhs, rhs))
    results.append(CheckResult("factorial_quasi_periodicity", trials, 1e-10, worst))

    worst = 0.0
    for rng, q, p, x, a in draws("relations"):
        nome = Nome(q, p)
        n = int(rng.integers(0, 4))
        k = int(rng.integers(0, 4))
        # (a q^{-n})_n against the reversed product
        lhs = pochhammer_e(a * q ** (-n), nome, n)
        rhs = pochhammer_e(q / a, nome, n) * (-a / q) ** n * q ** (-binom2(n))
        worst = max(worst, _rel(lhs, rhs))
        # (a q^{-n})_k shifted down
        lhs = pochhammer_e(a * q ** (-n), nome, k)
        rhs = pochhammer_e(q / a, nome, n) * pochhammer_e(a, nome, k) * \
            q ** (-n * k) / pochhammer_e(q ** (1 - k) / a, nome, n)
        worst = max(worst, _rel(lhs, rhs))
        # (a q^n)_k shifted up, both printed forms
        lhs = pochhammer_e(a * q ** n, nome, k)
        rhs = pochhammer_e(a * q ** k, nome, n) * pochhammer_e(a, nome, k) / \
            pochhammer_e(a, nome, n)
        worst = max(worst, _rel(lhs, rhs))
        rhs = pochhammer_e(a, nome, n + k) / pochhammer_e(a, nome, n)
        worst = max(worst, _rel(lhs, rhs))
        # (a)_{n-k} via the reciprocal tail
        lhs = pochhammer_e(a, nome, n - k)
        rhs = pochhammer_e(a, nome, n) * (-q ** (1 - n) / a) ** k * \
            q ** binom2(k) / pochhammer_e(q ** (1 - n) / a, nome, k)
        worst = max(worst, _rel(lhs, rhs))
        # base splitting (a)_{kn} over residue classes
        kk = int(rng.integers(1, 4))
        lhs = pochhammer_e(a, nome, kk * n)
        nk = nome.with_base(q ** kk)
        rhs = 1.0
        for i in range(kk):
            rhs = rhs * pochhammer_e(a * q ** i, nk, n)
        worst = max(worst, _rel(lhs, rhs))
    results.append(CheckResult("factorial_relations", trials, 1e-10, worst))

    worst = 0.0
    for rng, q, p, x, a in draws("p_zero"):
        nome = Nome(q, 0.0)
        for n in (-3, -1, 0, 2, 4):
            lhs = pochhammer_e(a, nome, n)
            if n >= 0:
                rhs = 1.0
                for j in range(n):
                    rhs *= 1 - a * q ** j
            else:
                rhs = 1.0
                for j in range(-n):
                    rhs /= 1 - a * q ** (n + j)
            worst = max(worst, _rel(lhs, rhs))
    results.append(CheckResult("classical_reduction", trials, 1e-12, worst))

    worst = 0.0
    for rng, q, p, x, a in draws("doubling"):
        worst = max(worst, _rel(eval_E(x, p) * eval_E(-x, p), eval_E(x * x, p * p)))
        # the very-well-poised prefactor as a half-nome factorial ratio
        k = int(rng.integers(1, 5))
        root_a = a ** 0.5
        root_p = p ** 0.5
        half = Nome(q, root_p)
        num = pochhammer_e(q * root_a, half, k) * pochhammer_e(-q * root_a, half, k)
        den = pochhammer_e(root_a, half, k) * pochhammer_e(-root_a, half, k)
        worst = max(worst, _rel(eval_E(a * q ** (2 * k), p) / eval_E(a, p), num / den))
    results.append(CheckResult("nome_doubling", trials, 1e-10, worst))

    worst = 0.0
    rng = _rng_for("suite.kernel.theta", seed, 0)
    for _ in range(trials):
        pmod = rng.uniform(0.05, 0.5)
        pphase = rng.uniform(0, 2 * np.pi)
        p = complex(pmod * np.cos(pphase), pmod * np.sin(pphase))
        z = complex(rng.uniform(0.1, 3.0), rng.uniform(-0.4, 0.4))
        series = 0.0j
        logp = complex(np.log(abs(p)), np.angle(p))
        for m in range(31):
            series += (-1) ** m * np.exp(logp * ((2 * m + 1) ** 2 / 4.0)) * \
                np.sin((2 * m + 1) * z)
        series *= 2
        worst = max(worst, _rel(theta1(z, p), series))
        worst = max(worst, _rel(theta1(-z, p), -theta1(z, p)))
    results.append(CheckResult("theta_product_vs_series", trials, 1e-10, worst))

    return results


# --------------------------------------------------------------------------
# inversion
# --------------------------------------------------------------------------

def run_inversion_suite(draws: int = 20, seed: int = 1,
                        region: SamplingRegion = DEFAULT_REGION,
                        n_max: int = 8) -> list:
    results = []

    worst = 0.0
    rng = _rng_for("suite.inversion.esum", seed, 0)
    for _ in range(100):
        p = _draw_complex(rng, region.p_mod)
        u, v, x, y = (_draw_complex(rng, region.param_mod) for _ in range(4))
        lhs, rhs = esum_sides(u, v, x, y, p)
        worst = max(worst, _rel(lhs, rhs))
    results.append(CheckResult("addition_formula", 100, 1e-10, worst))

    worst = 0.0
    rng = _rng_for("suite.inversion.macdonald", seed, 0)
    for _ in range(50):
        p = _draw_complex(rng, region.p_mod)
        n = int(rng.integers(0, 7))
        seqs = [[_draw_complex(rng, region.param_mod) for _ in range(n + 1)]
                for _ in range(4)]
        lhs, rhs = macdonald_sides(*seqs, p)
        worst = max(worst, _rel(lhs, rhs))
    results.append(CheckResult("telescoped_addition_lemma", 50, 1e-10, worst))

    for r in (1, 2, 3, 4):
        worst = 0.0
        resamples = 0
        rng = _rng_for(f"suite.inversion.rstep{r}", seed, 0)

        def draw():
            q = _draw_complex(rng, region.q_mod)
            p = _draw_complex(rng, region.p_mod)
            a = _draw_complex(rng, region.param_mod)
            b = _draw_complex(rng, region.param_mod)
            return (RStepPair(a, b, r, Nome(q, p)),)

        for _ in range(draws):
            val, tries = _resampling(draw, lambda pr: check_orthogonality(pr, n_max))
            resamples += tries
            worst = max(worst, val)
        results.append(CheckResult(f"orthogonality_step{r}", draws, 1e-8, worst,
                                   resamples))

    worst = 0.0
    resamples = 0
    rng = _rng_for("suite.inversion.rawr", seed, 0)

    def draw_raw():
        q = _draw_complex(rng, region.q_mod)
        p = _draw_complex(rng, region.p_mod)
        r = _draw_complex(rng, region.q_mod)
        a = _draw_complex(rng, region.param_mod)
        b = _draw_complex(rng, region.param_mod)
        return (RawRPair(a, b, r, Nome(q, p)),)

    for _ in range(draws):
        val, tries = _resampling(draw_raw, lambda pr: check_orthogonality(pr, n_max))
        resamples += tries
        worst = max(worst, val)
    results.append(CheckResult("orthogonality_free_base", draws, 1e-8, worst,
                               resamples))

    worst = 0.0
    resamples = 0
    rng = _rng_for("suite.inversion.kratt", seed, 0)

    def draw_kr():
        q = _draw_complex(rng, region.q_mod)
        p = _draw_complex(rng, region.p_mod)
        a = _draw_complex(rng, region.param_mod)
        bs = [_draw_complex(rng, region.param_mod) for _ in range(n_max + 2)]
        cs = [_draw_complex(rng, region.param_mod) for _ in range(n_max + 2)]
        return (KrattenthalerPair(a, bs.__getitem__, cs.__getitem__, Nome(q, p)),)

    for _ in range(draws):
        val, tries = _resampling(draw_kr, lambda pr: check_orthogonality(pr, n_max))
        resamples += tries
        worst = max(worst, val)
    results.append(CheckResult("orthogonality_sequence_pair", draws, 1e-8, worst,
                               resamples))

    for label, fn, nparams in (("replay_quadratic", quadratic_replay_sides, 4),
                               ("replay_cubic", cubic_replay_sides, 3)):
        worst = 0.0
        resamples = 0
        rng = _rng_for(f"suite.inversion.{label}", seed, 0)
        for _ in range(draws):
            # Individual terms overflow binary64 at small |q| and cancellation
            # can dominate; redraw on spread like the determinant cond guard.
            tries = 0
            while True:
                q = _draw_complex(rng, (0.55, 0.8))
                p = _draw_complex(rng, (0.05, 0.25))
                params = [_draw_complex(rng, (0.7, 1.4)) for _ in range(nparams)]
                nome = Nome(q, p)
                try:
                    err = 0.0
                    for n in range(6):
                        applied, closed, scale = fn(*params, nome, n)
                        if not (scale < 1e6 * abs(closed)):
                            raise DegenerateParameters("cancellation-dominated")
                        err = max(err, _rel(applied, closed))
                    break
                except (DegenerateParameters, OverflowError, ZeroDivisionError):
                    tries += 1
                    if tries > 100:
                        raise
            resamples += tries
            worst = max(worst, err)
        results.append(CheckResult(label, draws, 1e-8, worst, resamples))

    return results


# --------------------------------------------------------------------------
# determinants
# --------------------------------------------------------------------------

def run_determinants_suite(draws: int = 20, seed: int = 1,
                           region: SamplingRegion = DEFAULT_REGION) -> list:
    results = []

    def guarded(pairfn, matrixfn):
        # Ill-conditioned matrices are resampled rather than failed.
        def check(*args):
            _, cond = det_numeric(matrixfn(*args))
            if cond > COND_LIMIT:
                raise DegenerateParameters(f"cond {cond:.2e}")
            det, prod = pairfn(*args)
            return _rel(det, prod)
        return check

    worst = 0.0
    resamples = 0
    rng = _rng_for("suite.det.quadratic_base", seed, 0)
    check_as = guarded(andrews_stanton_sides, andrews_stanton_matrix)

    for _ in range(draws):
        val, tries = _resampling(lambda: draw_as_args(rng, region), check_as)
        resamples += tries
        worst = max(worst, val)
    results.append(CheckResult("quadratic_base_determinant", draws, 1e-8, worst,
                               resamples))

    worst = 0.0
    resamples = 0
    rng = _rng_for("suite.det.lu", seed, 0)

    def check_lu(x, y, nome, n):
        M = np.array(andrews_stanton_matrix(x, y, nome, n))
        det, cond = det_numeric(M)
        if cond > COND_LIMIT:
            raise DegenerateParameters(f"cond {cond:.2e}")
        U, l_diag = andrews_stanton_lu(x, y, nome, n)
        L = M @ np.array(U)
        err = 0.0
        for i in range(n):
            rowscale = max(abs(L[i, i]), TINY)
            for j in range(i + 1, n):
                err = max(err, float(abs(L[i, j]) / rowscale))
            err = max(err, _rel(L[i, i], l_diag[i]))
        prod = 1.0
        for v in l_diag:
            prod *= v
        return max(err, _rel(det, prod))

    for _ in range(draws):
        val, tries = _resampling(lambda: draw_as_args(rng, region), check_lu)
        resamples += tries
        worst = max(worst, val)
    results.append(CheckResult("lu_factorization", draws, 1e-9, worst, resamples))

    worst = 0.0
    resamples = 0
    rng = _rng_for("suite.det.ratio", seed, 0)

    def draw_cd():
        q = _draw_complex(rng, region.q_mod)
        p = _draw_complex(rng, region.p_mod)
        n = int(rng.integers(1, 6))
        xs = [_draw_complex(rng, region.param_mod) for _ in range(n)]
        a, b, c = (_draw_complex(rng, region.param_mod) for _ in range(3))
        return xs, a, b, c, Nome(q, p)

    for _ in range(draws):
        val, tries = _resampling(
            draw_cd, guarded(corollary_determ_sides, corollary_determ_matrix))
        resamples += tries
        worst = max(worst, val)
    results.append(CheckResult("factorial_ratio_determinant", draws, 1e-8, worst,
                               resamples))

    worst = 0.0
    resamples = 0
    rng = _rng_for("suite.det.lemma", seed, 0)

    def draw_lem():
        q = _draw_complex(rng, region.q_mod)
        p = _draw_complex(rng, region.p_mod)
        n = int(rng.integers(1, 6))
        nome = Nome(q, p)
        xs = [_draw_complex(rng, region.param_mod) for _ in range(n)]
        avs = [_draw_complex(rng, region.param_mod) for _ in range(n)]
        b, c = (_draw_complex(rng, region.param_mod) for _ in range(2))
        fam = shifted_product_family(b, c, nome, n)
        return xs, avs, c, nome, fam

    for _ in range(draws):
        val, tries = _resampling(
            draw_lem, guarded(elliptic_det_lemma_sides, det_lemma_matrix))
        resamples += tries
        worst = max(worst, val)
    results.append(CheckResult("periodic_family_determinant", draws, 1e-8, worst,
                               resamples))

    worst = 0.0
    rng = _rng_for("suite.det.theta", seed, 0)
    for _ in range(draws):
        pmod = rng.uniform(0.05, 0.45)
        pphase = rng.uniform(0, 2 * np.pi)
        p = complex(pmod * np.cos(pphase), pmod * np.sin(pphase))
        xs = [complex(rng.uniform(0.3, 2.8), rng.uniform(-0.3, 0.3)) for _ in range(2)]
        a, b, c = (complex(rng.uniform(0.0, 2.0), rng.uniform(-0.3, 0.3))
                   for _ in range(3))
        det, prod = theta_det_sides(xs, a, b, c, p)
        worst = max(worst, _rel(det, prod))
    results.append(CheckResult("theta_determinant_2x2", draws, 1e-8, worst))

    return results


def draw_as_args(rng, region):
    q = _draw_complex(rng, region.q_mod)
    p = _draw_complex(rng, region.p_mod)
    x = _draw_complex(rng, (0.7, 1.4))
    y = _draw_complex(rng, (0.7, 1.4))
    n = int(rng.integers(1, 6))
    return x, y, Nome(q, p), n


# --------------------------------------------------------------------------
# cn and conjecture
# --------------------------------------------------------------------------

def run_cn_suite(draws: int = 20, seed: int = 1,
                 region: SamplingRegion = DEFAULT_REGION,
                 sizes: tuple = ((1, 4), (2, 3), (3, 2))) -> list:
    results = []
    for n, n_cap in sizes:
        worst = 0.0
        resamples = 0
        rng = _rng_for(f"suite.cn.{n}", seed, 0)

        def draw():
            q = _draw_complex(rng, region.q_mod)
            p = _draw_complex(rng, region.p_mod)
            N = int(rng.integers(0, n_cap + 1))
            a, b, c, d = (_draw_complex(rng, region.param_mod) for _ in range(4))
            e = a * a * q ** (N - n + 2) / (b * c * d)
            xs = tuple(_draw_complex(rng, (0.8, 1.25)) for _ in range(n))
            return (CnPoint(Nome(q, p), n, N, xs, a=a, b=b, c=c, d=d, e=e),)

        def check(pt):
            lhs, rhs = cn_jackson_sides(pt)
            return _rel(lhs, rhs)

        for _ in range(draws):
            val, tries = _resampling(draw, check)
            resamples += tries
            worst = max(worst, val)
        results.append(CheckResult(f"cn_jackson_n{n}", draws, 1e-8, worst, resamples))

    # one-variable reduction against the closed Jackson evaluation
    worst = 0.0
    rng = _rng_for("suite.cn.reduction", seed, 0)
    for _ in range(draws):
        q = _draw_complex(rng, region.q_mod)
        p = _draw_complex(rng, region.p_mod)
        nome = Nome(q, p)
        N = int(rng.integers(0, 4))
        a, b, c, d = (_draw_complex(rng, region.param_mod) for _ in range(4))
        e = a * a * q ** (N + 1) / (b * c * d)
        x = _draw_complex(rng, (0.8, 1.25))
        pt = CnPoint(nome, 1, N, (x,), a=a, b=b, c=c, d=d, e=e)
        lhs, _ = cn_jackson_sides(pt)
        num = [a * x * x * q, a * q / (b * c), a * q / (b * d), a * q / (c * d)]
        den = [a * q / (b * c * d * x), a * q * x / b, a * q * x / c, a * q * x / d]
        closed = 1.0
        for u in num:
            closed *= pochhammer_e(u, nome, N)
        for u in den:
            closed /= pochhammer_e(u, nome, N)
        worst = max(worst, _rel(lhs, closed))
    results.append(CheckResult("cn_jackson_reduces_to_one_variable", draws, 1e-8,
                               worst))
    return results


def run_conjecture_suite(draws: int = 20, seed: int = 1,
                         region: SamplingRegion = DEFAULT_REGION,
                         n: int = 2, n_cap: int = 2) -> list:
    results = []
    worst = 0.0
    resamples = 0
    rng = _rng_for("suite.conjecture.main", seed, 0)

    def draw():
        q = _draw_complex(rng, region.q_mod)
        p = _draw_complex(rng, region.p_mod)
        N = int(rng.integers(0, n_cap + 1))
        x = _draw_complex(rng, (0.75, 0.95))
        a, b, c, d, e, f = (_draw_complex(rng, region.param_mod) for _ in range(6))
        g = a ** 3 * q ** (N + 2) / (b * c * d * e * f * x ** (n - 1))
        return (CnPoint(Nome(q, p), n, N, x, a=a, b=b, c=c, d=d, e=e, f=f, g=g),)

    def check(pt):
        lhs, rhs = conjecture_sides(pt)
        return _rel(lhs, rhs)

    for _ in range(draws):
        val, tries = _resampling(draw, check)
        resamples += tries
        worst = max(worst, val)
    results.append(CheckResult(f"conjecture_n{n}", draws, 1e-7, worst, resamples))

    worst = 0.0
    resamples = 0
    rng = _rng_for("suite.conjecture.rect", seed, 0)

    def draw87():
        q = _draw_complex(rng, region.q_mod)
        p = _draw_complex(rng, region.p_mod)
        N = int(rng.integers(0, n_cap + 1))
        x = _draw_complex(rng, (0.75, 0.95))
        a, b, c, d = (_draw_complex(rng, region.param_mod) for _ in range(4))
        e = a * a * q ** (N + 1) / (b * c * d * x ** (n - 1))
        return (CnPoint(Nome(q, p), n, N, x, a=a, b=b, c=c, d=d, e=e),)

    def check87(pt):
        lhs, rhs = omega87_sides(pt)
        return _rel(lhs, rhs)

    for _ in range(draws):
        val, tries = _resampling(draw87, check87)
        resamples += tries
        worst = max(worst, val)
    results.append(CheckResult(f"rectangle_evaluation_n{n}", draws, 1e-7, worst,
                               resamples))
    return results


SUITES = {
    "kernel": run_kernel_suite,
    "inversion": run_inversion_suite,
    "determinants": run_determinants_suite,
    "cn": run_cn_suite,
    "conjecture": run_conjecture_suite,
}
