"""
Tests for the map from P_n to C_n(delta, gamma) x P^0 and its inverse.
"""

import pytest

from bijection import BijectionError, PartitionPair, conservation_summary, phi, phi_inverse, phi_inverse_steps, phi_steps
from cli import parse_classical
from partition import ColouredPartition, MembershipError, MembershipSpec, enumerate_partitions, is_member

LAMBDA_3 = ("8[a1b1]+6[a0b2]+6[a2b2]+5[a0b1]+5[a1b0]+4[a0b0]+4[a0b0]+3[a0b2]+3[a1b1]+3[a1b1]"
            "+3[a1b0]+2[a2b2]+2[a2b2]+2[a2b2]+2[a2b0]+1[a0b0]")
MU_3 = "8[a1b1]+6[a0b2]+5[a0b1]+5[a1b0]+3[a0b2]+3[a1b0]+2[a2b0]"
NU_3 = "6,4,4,3,3,2,2,2,1"

# classical n=2 names: a = a1b0, b = a0b0, c = a1b1, d = a0b1
MU_2 = "8[a0b1]+8[a1b0]+6[a1b1]+5[a1b1]+3[a0b1]+1[a1b0]"
NU_2 = "8,8,7,5,3,2,2,1,1"
LAMBDA_2 = ("8[a0b1]+8[a1b1]+8[a1b1]+8[a1b0]+7[a0b0]+6[a1b1]+5[a1b1]+5[a1b1]+3[a0b1]+3[a1b1]"
            "+2[a0b0]+2[a0b0]+1[a1b1]+1[a1b1]+1[a1b0]")


def pair_of(mu, nu):
    return PartitionPair(ColouredPartition.parse(mu), parse_classical(nu))


def assert_round_trip(lam, table):
    pair = phi(lam, table)
    assert is_member(pair.mu, MembershipSpec.cn(table)), str(pair)
    assert phi_inverse(pair, table) == lam
    assert conservation_summary(lam, pair)["preserved"]


# ═══════════════════════════════════════════════════════════════════
# Forward map
# ═══════════════════════════════════════════════════════════════════


class TestForward:
    """Step-by-step images of the worked n=3 example."""

    def test_steps(self, mp3):
        steps = phi_steps(ColouredPartition.parse(LAMBDA_3), mp3)
        assert [s.name for s in steps] == ["remove a0b0 parts", "collapse repeated free colours",
                                           "remove forbidden centres"]
        assert steps[0].nu.sizes == (4, 4, 1)
        assert str(steps[1].mu) == ("8[a1b1]+6[a0b2]+6[a2b2]+5[a0b1]+5[a1b0]+3[a0b2]+3[a1b1]+3[a1b0]"
                                    "+2[a2b2]+2[a2b0]")
        assert steps[1].nu.sizes == (4, 4, 3, 2, 2, 1)

    def test_image(self, mp3):
        pair = phi(ColouredPartition.parse(LAMBDA_3), mp3)
        assert str(pair.mu) == MU_3
        assert pair.nu.sizes == (6, 4, 4, 3, 3, 2, 2, 2, 1)
        assert pair.weight == ColouredPartition.parse(LAMBDA_3).weight

    def test_empty(self, mp2):
        pair = phi(ColouredPartition(), mp2)
        assert not pair.mu and not pair.nu
        assert str(pair) == "(0, 0)"

    def test_rejects_non_member(self, mp2):
        with pytest.raises(MembershipError):
            phi(ColouredPartition.parse("2[a1b0]+2[a0b0]"), mp2)


# ═══════════════════════════════════════════════════════════════════
# Inverse map
# ═══════════════════════════════════════════════════════════════════


class TestInverse:
    """Reconstruction of the preimage from (mu, nu)."""

    def test_worked_n3(self, mp3):
        assert str(phi_inverse(pair_of(MU_3, NU_3), mp3)) == LAMBDA_3

    def test_worked_n2(self, mp2):
        assert str(phi_inverse(pair_of(MU_2, NU_2), mp2)) == LAMBDA_2

    def test_forward_of_n2_example(self, mp2):
        pair = phi(ColouredPartition.parse(LAMBDA_2), mp2)
        assert pair == pair_of(MU_2, NU_2)

    def test_size_order_does_not_matter(self, mp3):
        pair = pair_of(MU_3, NU_3)
        increasing = phi_inverse(pair, mp3, size_order=[1, 2, 3, 4, 6])
        shuffled = phi_inverse(pair, mp3, size_order=[3, 1, 6, 2, 4])
        assert increasing == shuffled == ColouredPartition.parse(LAMBDA_3)

    def test_size_order_must_cover_nu(self, mp3):
        with pytest.raises(BijectionError):
            phi_inverse(pair_of(MU_3, NU_3), mp3, size_order=[6, 4])

    def test_last_step_empties_nu(self, mp2):
        steps = phi_inverse_steps(pair_of(MU_2, NU_2), mp2)
        assert len(steps) == 3
        assert not steps[-1].nu

    def test_mu_must_be_in_cn(self, mp2):
        with pytest.raises(MembershipError):
            phi_inverse(pair_of("1[a0b0]", "1"), mp2)

    def test_pair_dict_round_trip(self):
        pair = pair_of(MU_2, NU_2)
        assert PartitionPair.from_dict(pair.to_dict()) == pair


# ═══════════════════════════════════════════════════════════════════
# Round trips
# ═══════════════════════════════════════════════════════════════════


class TestRoundTrips:
    """Every small member of P_n survives phi followed by its inverse."""

    def test_n2_mp(self, mp2):
        for lam in enumerate_partitions(MembershipSpec.pn(2), 7):
            assert_round_trip(lam, mp2)

    def test_n3_both_tables(self, mp3, alt3):
        for table in (mp3, alt3):
            for lam in enumerate_partitions(MembershipSpec.pn(3), 5):
                assert_round_trip(lam, table)

    @pytest.mark.slow
    @pytest.mark.parametrize("n, weight", [(2, 14), (3, 10)])
    def test_round_trips_to_larger_weights(self, n, weight, mp2, mp3, alt3):
        tables = (mp2,) if n == 2 else (mp3, alt3)
        for table in tables:
            images = set()
            for lam in enumerate_partitions(MembershipSpec.pn(n), weight):
                assert_round_trip(lam, table)
                pair = phi(lam, table)
                images.add((pair.mu, pair.nu))
            cn = list(enumerate_partitions(MembershipSpec.cn(table), weight))
            classical = list(enumerate_partitions(MembershipSpec.p0(), weight))
            pairs = {(mu, nu) for mu in cn for nu in classical if mu.weight + nu.weight <= weight}
            assert images == pairs

    def test_conservation_fields(self, mp3):
        lam = ColouredPartition.parse(LAMBDA_3)
        summary = conservation_summary(lam, phi(lam, mp3))
        assert summary["weight"] == (lam.weight, lam.weight)
        assert summary["parts"] == (16, 16)
        assert summary["bound_colours"][0] == summary["bound_colours"][1]
