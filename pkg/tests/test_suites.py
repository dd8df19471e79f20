from ellipsum.suites import SUITES, run_conjecture_suite, run_kernel_suite


class TestSuiteRunners:
    def test_registry_names(self):
        assert sorted(SUITES) == ["cn", "conjecture", "determinants",
                                  "inversion", "kernel"]

    def test_kernel_suite_reproducible(self):
        a = [r.to_dict() for r in run_kernel_suite(trials=30, seed=5)]
        b = [r.to_dict() for r in run_kernel_suite(trials=30, seed=5)]
        assert a == b

    def test_check_result_shape(self):
        res = run_conjecture_suite(draws=3, seed=2)[0]
        d = res.to_dict()
        assert set(d) == {"name", "trials", "tol", "max_rel_err", "resamples",
                          "passed"}
        assert d["passed"] == (d["max_rel_err"] <= d["tol"])

    def test_conjecture_suite_size_override(self):
        results = run_conjecture_suite(draws=2, seed=1, n=1, n_cap=3)
        assert [r.name for r in results] == ["conjecture_n1",
                                             "rectangle_evaluation_n1"]
        assert all(r.passed for r in results)
