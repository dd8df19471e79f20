import json

import pytest

from ellipsum import Nome
from ellipsum.catalog import (
    DEFAULT_REGION,
    ParamPoint,
    SamplingRegion,
    check_identity,
    cor_etrafo3_fa_sigma_rhs,
    cross_check_transform_pairs,
    get_identity,
    list_identities,
    sample_point,
    trial_error,
)
from ellipsum.kernel import DEFAULT_POLICY
from ellipsum.report import VerificationReport
from ellipsum.series import OmegaSpec, balance_residual

from conftest import rel_err
from oracles import classical_w_sum

ALL_IDS = [ident.id for ident in list_identities()]


class TestRegistry:
    def test_catalog_size(self):
        # All enumerated ids: the two-gauge transformations, four stretched
        # steps, three residue branches and every summation corollary.
        assert len(ALL_IDS) == 31

    def test_ids_unique(self):
        assert len(set(ALL_IDS)) == len(ALL_IDS)

    def test_descriptions_nonempty(self):
        for ident in list_identities():
            assert ident.description.strip()

    def test_lookup_unknown_raises(self):
        with pytest.raises(KeyError):
            get_identity("nope")

    def test_stable_order(self):
        assert ALL_IDS[:4] == ["e109", "e87", "gr_sum_general", "sum1"]


class TestSampling:
    def test_solved_constraint_residual(self):
        ident = get_identity("e87")
        pt = sample_point(ident, seed=5)
        v = pt.values
        spec = OmegaSpec(v["a"], (v["b"], v["c"], v["d"], v["e"]), pt.nome,
                         pt.integers["n"])
        assert balance_residual(spec) <= 1e-12

    def test_same_seed_identical_point(self):
        ident = get_identity("e109")
        p1 = sample_point(ident, seed=99)
        p2 = sample_point(ident, seed=99)
        assert p1.nome == p2.nome
        assert p1.values == p2.values and p1.integers == p2.integers

    def test_branch_filter_respected(self):
        ident = get_identity("etrafo5_b0")
        for seed in range(12):
            pt = sample_point(ident, seed=seed)
            assert pt.integers["n"] % 3 != 2

    def test_moduli_in_region(self):
        ident = get_identity("e87")
        pt = sample_point(ident, seed=3)
        assert 0.3 <= abs(pt.nome.q) <= 0.8
        assert 0.05 <= abs(pt.nome.p) <= 0.3
        for name in ident.free_params:
            assert 0.5 <= abs(pt.values[name]) <= 2.0


class TestCheckIdentity:
    def test_jackson_hundred_trials(self):
        rep = check_identity(get_identity("e87"), trials=100, tol=1e-9, seed=42)
        assert rep.passed
        assert rep.max_rel_err <= 1e-9

    def test_classical_limit_matches_independent_evaluator(self, rnd):
        # p = 0 region: both sides of the ten-term transformation against a
        # purely classical (1 - x)-based evaluator.
        ident = get_identity("e109")
        region = SamplingRegion(p_mod=(0.0, 0.0))
        pt = sample_point(ident, seed=11, region=region)
        v, n, q = pt.values, pt.integers["n"], pt.nome.q
        lhs, _ = ident.lhs(pt, DEFAULT_POLICY)
        want = classical_w_sum(v["a"],
                               (v["b"], v["c"], v["d"], v["e"], v["f"], v["g"],
                                q ** (-n)), q, n)
        assert rel_err(lhs, want) <= 1e-12

    def test_zero_branch_uses_summand_scale(self):
        ident = get_identity("egs")
        found_zero = False
        for seed in range(20):
            pt = sample_point(ident, seed=seed)
            if pt.integers["n"] % 2 == 1:
                lhs, scale = ident.lhs(pt, DEFAULT_POLICY)
                rhs, _ = ident.rhs(pt, DEFAULT_POLICY)
                assert rhs == 0.0
                assert abs(lhs) <= 1e-9 * scale
                found_zero = True
        assert found_zero

    def test_trial_error_zero_rhs_definition(self):
        assert trial_error(1e-12 + 0j, 0.0, scale=1.0) == 1e-12
        assert trial_error(1.0 + 0j, 1.0 + 0j, scale=5.0) == 0.0

    def test_report_round_trips(self):
        rep = check_identity(get_identity("sum1"), trials=5, tol=1e-8, seed=2)
        again = VerificationReport.from_dict(
            json.loads(json.dumps(rep.to_dict())))
        assert again.to_dict() == rep.to_dict()
        assert again.passed

    def test_extended_precision_tightens(self):
        rep = check_identity(get_identity("e87"), trials=3, tol=1e-8, seed=7,
                             precision="extended")
        assert rep.max_rel_err <= 1e-35

    def test_extended_precision_validates_every_entry(self):
        # At 50 digits every entry must hold far beyond binary64 roundoff;
        # this pins the formulas themselves, not just their float behavior.
        for ident in list_identities():
            rep = check_identity(ident, trials=2, tol=1e-30, seed=4,
                                 precision="extended")
            assert rep.passed, (ident.id, rep.max_rel_err)

    def test_failures_consistent_with_tolerance(self):
        rep = check_identity(get_identity("thmr_r2"), trials=40, tol=1e-8, seed=3)
        assert all(f.rel_err > rep.tol for f in rep.failures)
        assert (rep.max_rel_err > rep.tol) == bool(rep.failures)


class TestEtrafo5Branches:
    def test_overlapping_branches_agree(self):
        # Residues admitting two closed forms must give the same value.
        combos = {0: ("etrafo5_b0", "etrafo5_b1"),
                  1: ("etrafo5_b0", "etrafo5_b2"),
                  2: ("etrafo5_b1", "etrafo5_b2")}
        for residue, (id_a, id_b) in combos.items():
            ident_a, ident_b = get_identity(id_a), get_identity(id_b)
            hits = 0
            for seed in range(30):
                pt = sample_point(ident_a, seed=seed)
                if pt.integers["n"] % 3 != residue:
                    continue
                ra, _ = ident_a.rhs(pt, DEFAULT_POLICY)
                rb, _ = ident_b.rhs(pt, DEFAULT_POLICY)
                assert rel_err(ra, rb) <= 1e-9
                hits += 1
                if hits >= 3:
                    break
            assert hits >= 1


class TestSigmaBookkeeping:
    def test_sigma_form_matches_direct_form(self):
        ident = get_identity("cor_etrafo3_fa")
        for seed in range(10):
            pt = sample_point(ident, seed=seed)
            direct, _ = ident.rhs(pt, DEFAULT_POLICY)
            sigma = cor_etrafo3_fa_sigma_rhs(pt, DEFAULT_POLICY)
            assert rel_err(direct, sigma) <= 1e-9


class TestTransformPairs:
    def test_matched_right_sides_agree(self):
        out = cross_check_transform_pairs(trials=20, seed=1)
        assert out["quadratic"] <= 1e-9
        assert out["cubic"] <= 1e-9

    def test_classical_degeneration(self):
        out = cross_check_transform_pairs(trials=20, seed=1, p_zero=True)
        assert out["quadratic"] <= 1e-9
        assert out["cubic"] <= 1e-9


class TestSmallNomeContinuity:
    def test_every_identity_continuous_at_vanishing_nome(self):
        # Evaluations at p = 1e-6 stay within 1e-4 of the p = 0 values.
        # The window presumes O(1) factor arguments, so the probe keeps the
        # termination index at <= 1 (large q^{-rn} arguments scale the
        # p-linear term past any fixed tolerance).
        import dataclasses

        region = SamplingRegion(q_mod=(0.5, 0.8), p_mod=(0.0, 0.0))
        for ident in list_identities():
            name, lo, hi = ident.termination
            probe = dataclasses.replace(ident, termination=(name, lo, min(hi, 1)))
            hit = False
            for seed in range(12):
                pt = sample_point(probe, seed=seed, region=region)
                rhs0, _ = ident.rhs(pt, DEFAULT_POLICY)
                if rhs0 == 0:
                    continue
                lhs0, _ = ident.lhs(pt, DEFAULT_POLICY)
                tiny = ParamPoint(Nome(pt.nome.q, 1e-6), pt.values, pt.integers)
                lhs6, _ = ident.lhs(tiny, DEFAULT_POLICY)
                rhs6, _ = ident.rhs(tiny, DEFAULT_POLICY)
                assert rel_err(lhs6, lhs0) <= 1e-4, ident.id
                assert rel_err(rhs6, rhs0) <= 1e-4, ident.id
                hit = True
                break
            assert hit, f"no nonzero classical point found for {ident.id}"
