"""
Tests for the claim registry, budgets and verification reports.
"""

import pytest

from colour import PartitionsError, Variant, builtin_delta_gamma
from verifier import (CLAIMS, STATUS_FAIL, STATUS_PASS, BudgetError, ClaimVerifier, Settings,
                      VerificationReport, estimate_nodes, run_claim)


def assert_passes(report):
    assert report.status == STATUS_PASS, report.to_text()
    assert report.mismatch is None
    assert report.checked_terms > 0


def assert_fails(report):
    assert report.status == STATUS_FAIL
    assert report.mismatch is not None


@pytest.fixture
def verifier(settings):
    return ClaimVerifier(settings)


# ═══════════════════════════════════════════════════════════════════
# Settings and reports
# ═══════════════════════════════════════════════════════════════════


class TestSettings:
    """Environment-driven configuration."""

    def test_defaults(self, monkeypatch):
        for name in ("PARTITIONS_DEFAULT_ORDER", "PARTITIONS_BUDGET", "PARTITIONS_DB_PATH", "PARTITIONS_LOG_LEVEL"):
            monkeypatch.delenv(name, raising=False)
        assert Settings.from_env() == Settings()

    def test_overrides(self, monkeypatch):
        monkeypatch.setenv("PARTITIONS_DEFAULT_ORDER", "7")
        monkeypatch.setenv("PARTITIONS_BUDGET", "1000")
        monkeypatch.setenv("PARTITIONS_DB_PATH", "other.db")
        monkeypatch.setenv("PARTITIONS_LOG_LEVEL", "debug")
        settings = Settings.from_env()
        assert settings.default_order == 7
        assert settings.budget == 1000
        assert settings.db_path == "other.db"
        assert settings.log_level == "DEBUG"


class TestVerificationReport:
    """Serialisation and text rendering."""

    def test_dict_round_trip(self):
        report = VerificationReport(claim="main2", parameters={"n": 2, "order": 5}, status=STATUS_FAIL,
                                    checked_terms=6, mismatch={"q": 5, "expected": 1, "actual": 2},
                                    wall_time=0.25, details={"jacobi-form": STATUS_FAIL})
        assert VerificationReport.from_dict(report.to_dict()) == report

    def test_text(self):
        report = VerificationReport(claim="main2", parameters={"order": 5, "n": 2}, status=STATUS_PASS,
                                    checked_terms=6, mismatch=None, wall_time=0.5)
        lines = report.to_text().splitlines()
        assert lines[0] == "main2 [n=2, order=5]: PASS"
        assert "checked terms: 6" in lines[1]
        assert report.passed


# ═══════════════════════════════════════════════════════════════════
# Resolution and budgets
# ═══════════════════════════════════════════════════════════════════


class TestResolve:
    """Claim lookup and parameter defaults."""

    def test_defaults(self, verifier):
        claim, n, order = verifier.resolve("main2")
        assert (n, order) == (3, 15)
        assert claim.claim_id == "main2"

    def test_settings_order_used_without_claim_default(self, verifier):
        _, _, order = verifier.resolve("primc-spec")
        assert order == 10

    @pytest.mark.parametrize("claim_id, n, order", [
        ("no-such-claim", None, None),
        ("main2", 0, 5),
        ("main2", 2, -1),
        ("primc-dilated", 4, 5),
        ("capparelli-aag", 3, 5),
    ])
    def test_rejected(self, verifier, claim_id, n, order):
        with pytest.raises(PartitionsError):
            verifier.resolve(claim_id, n, order)

    def test_every_claim_resolves(self, verifier):
        for claim_id in CLAIMS:
            verifier.resolve(claim_id)


class TestBudget:
    """Refusal of runs whose estimate exceeds the budget."""

    def test_estimate_grows(self):
        assert estimate_nodes(2, 10) > estimate_nodes(2, 5) > 0

    def test_refused(self):
        verifier = ClaimVerifier(Settings(budget=10))
        with pytest.raises(BudgetError) as exc:
            verifier.run("primc-spec", n=2, order=8)
        assert exc.value.claim == "primc-spec"
        assert exc.value.estimate > 10

    def test_force(self):
        verifier = ClaimVerifier(Settings(budget=10))
        verifier.set_force(True)
        assert_passes(verifier.run("primc-spec", n=2, order=6))


# ═══════════════════════════════════════════════════════════════════
# Claims
# ═══════════════════════════════════════════════════════════════════


class TestClaims:
    """Small runs of each claim, with and without corruption."""

    def test_table_conditions(self, verifier):
        assert_passes(verifier.run("table-conditions"))
        assert_fails(verifier.run("table-conditions", corrupt=True))

    def test_primc_spec(self, verifier):
        report = verifier.run("primc-spec", n=2, order=8)
        assert_passes(report)
        assert report.parameters == {"n": 2, "order": 8}

    def test_corrupt_primc_spec(self, verifier):
        report = verifier.run("primc-spec", n=2, order=8, corrupt=True)
        assert_fails(report)
        assert report.mismatch["q"] == 8
        assert report.parameters["corrupt"] is True

    def test_main2(self, verifier):
        assert_passes(verifier.run("main2", n=2, order=6))

    def test_primc(self, verifier):
        assert_passes(verifier.run("primc", n=2, order=5))

    def test_capparelli(self, verifier):
        report = verifier.run("capparelli", n=2, order=5)
        assert_passes(report)
        assert report.parameters["tables"] == ["mp"]

    def test_capparelli_with_table(self, verifier):
        table = builtin_delta_gamma(Variant.ALT, 3)
        report = verifier.run("capparelli", n=3, order=3, table=table)
        assert_passes(report)
        assert report.parameters["tables"] == ["alt"]

    def test_table_size_mismatch(self, verifier):
        with pytest.raises(PartitionsError):
            verifier.run("capparelli", n=2, order=3, table=builtin_delta_gamma(Variant.ALT, 3))

    def test_lemmas(self, verifier):
        assert_passes(verifier.run("qbinom-lemmas", light=True))
        report = verifier.run("qbinom-lemmas", light=True, corrupt=True)
        assert_fails(report)
        assert report.mismatch["lemma"] == "lattice paths in an a x b box"

    def test_bijection_grid_estimate(self, verifier):
        assert verifier.estimate("bijection") == estimate_nodes(2, 14, 3) + estimate_nodes(3, 10, 3)
        assert verifier.estimate("bijection", n=2, order=5) == estimate_nodes(2, 5, 3)

    @pytest.mark.slow
    def test_bijection_default_grid(self, verifier):
        report = verifier.run("bijection")
        assert_passes(report)
        assert report.parameters["grid"] == [[2, 14], [3, 10]]
        assert {"n=2:mp", "n=3:mp", "n=3:alt"} <= set(report.details)

    def test_bijection(self, verifier):
        report = verifier.run("bijection", n=2, order=5)
        assert_passes(report)
        assert_fails(verifier.run("bijection", n=2, order=5, corrupt=True))

    def test_primc_kernel(self, verifier):
        report = verifier.run("primc-kernel", n=2, kernel_length=1, kernel_extra=3)
        assert_passes(report)
        assert report.parameters["kernel_length"] == 1
        assert report.details["failed"] == []
        assert report.details["sampled"] == []

    def test_primc_kernel_sample(self, verifier):
        report = verifier.run("primc-kernel", n=3, kernel_length=2, kernel_extra=2, kernel_sample=3)
        assert_passes(report)
        assert len(report.details["sampled"]) == 3
        assert all(len(k.split(",")) == 3 for k in report.details["sampled"])
        assert report.parameters["kernel_sample"] == 3
        again = verifier.run("primc-kernel", n=3, kernel_length=2, kernel_extra=2, kernel_sample=3)
        assert again.details["sampled"] == report.details["sampled"]

    def test_structural(self, verifier):
        report = verifier.run("structural", n=3)
        assert_passes(report)
        assert report.details["triangle inequality for delta"] == STATUS_PASS
        failed = verifier.run("structural", n=3, corrupt=True)
        assert_fails(failed)
        assert failed.mismatch["lemma"] == "shapes of a zero-difference pair"

    def test_pn_fn_bound(self, verifier):
        assert_passes(verifier.run("pn-fn-bound", n=2, order=5))

    def test_capparelli_classical(self, verifier):
        assert_passes(verifier.run("capparelli-classical", order=15))
        assert_fails(verifier.run("capparelli-classical", order=15, corrupt=True))

    def test_two_colour_products(self, verifier):
        assert_passes(verifier.run("primc-nondilated", order=6))
        assert_passes(verifier.run("capparelli-aag", order=6))

    def test_primc_dilated(self, verifier):
        assert_passes(verifier.run("primc-dilated", n=2, order=8))
        assert_passes(verifier.run("primc-dilated", n=3, order=4))

    def test_run_claim(self, settings):
        report = run_claim("main2", settings=settings, force=True, n=2, order=5)
        assert_passes(report)
