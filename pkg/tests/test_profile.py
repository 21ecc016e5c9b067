from math import isqrt

import pytest

from core import residue_profile
from core.exceptions import BadInput, DegenerateTriple
from core.mat3 import Mat3
from core.models import MarkoffTriple
from core.residue_profile import (DEGENERATE_PROFILES, all_profiles, check_inverse_formula, compute_profile,
                                  cor69_check, frobenius_identities, inverse_discriminant, inverse_formula,
                                  profile_orientations, ResidueProfile)


@pytest.fixture
def profile_152():
    return compute_profile(MarkoffTriple(1, 2, 5))


class TestComputeProfile:
    def test_orientations(self):
        assert profile_orientations(MarkoffTriple(1, 2, 5)) == [(1, 5, 2), (2, 5, 1)]
        assert profile_orientations(MarkoffTriple(1, 1, 1)) == [(1, 1, 1)]

    def test_profile_of_five(self, profile_152):
        assert repr(profile_152) == "(1,5,2)"
        assert profile_152.k == (0, 2, 1)
        assert profile_152.l == (1, 1, 1)
        assert profile_152.b == 1
        assert profile_152.mu == -1
        assert profile_152.frak_A == Mat3([[1, 5, 2], [0, 2, 1], [1, 1, 1]])
        assert profile_152.frak_A.det() == 2

    def test_mirror_orientation_has_negative_sign(self):
        p = compute_profile(MarkoffTriple(1, 2, 5), sign=-1)
        assert (p.c, p.m, p.a) == (2, 5, 1)
        assert p.k == (-1, -2, 0)
        assert p.sign == -1

    def test_profile_of_thirteen(self):
        p = compute_profile(MarkoffTriple(1, 5, 13), orientation=(1, 13, 5))
        assert p.k == (0, 5, 2)
        assert p.l == (1, 2, 1)
        assert p.mu == -1

    def test_degenerate_triples_come_from_the_table(self):
        assert compute_profile(MarkoffTriple(1, 1, 1)) is DEGENERATE_PROFILES[(1, 1, 1)]
        assert compute_profile(MarkoffTriple(1, 1, 2)) is DEGENERATE_PROFILES[(1, 2, 1)]
        assert compute_profile(MarkoffTriple(1, 2, 5)) is DEGENERATE_PROFILES[(1, 5, 2)]
        assert compute_profile(MarkoffTriple(1, 5, 13), sign=-1) is DEGENERATE_PROFILES[(5, 13, 1)]

    @pytest.mark.parametrize("orientation", [o for o in DEGENERATE_PROFILES if o[1] >= 5])
    def test_table_agrees_with_residue_formula(self, orientation):
        report = frobenius_identities(DEGENERATE_PROFILES[orientation])
        assert report.checks["table entry matches residue formula"]
        assert report.passed

    def test_wrong_table_entry_fails(self):
        wrong = ResidueProfile(1, 5, 2, 0, -3, 1, 1, 2, 1, from_table=True)
        report = frobenius_identities(wrong)
        assert "table entry matches residue formula" in report.failed_checks()

    def test_bad_orientation(self):
        with pytest.raises(BadInput):
            compute_profile(MarkoffTriple(1, 2, 5), orientation=(5, 1, 2))

    def test_bad_sign(self):
        with pytest.raises(BadInput):
            compute_profile(MarkoffTriple(1, 2, 5), sign=0)

    def test_orientation_m_is_three_times_the_dominant(self):
        for p in all_profiles(200):
            assert p.orientation.m == 3 * p.m

    def test_residue_relations(self):
        for p in all_profiles(500):
            for k, l, v in zip(p.k, p.l, (p.c, p.m, p.a)):
                assert k * k + 1 == v * l


class TestIdentities:
    def test_frobenius(self):
        for p in all_profiles(200):
            assert frobenius_identities(p).passed, p

    def test_inverse_formula(self, profile_152):
        f = inverse_formula(profile_152)
        assert f.matrix @ profile_152.frak_A == Mat3.identity()
        assert f.mu == -1

    def test_inverse_formula_needs_distinct_members(self):
        with pytest.raises(DegenerateTriple):
            inverse_formula(DEGENERATE_PROFILES[(1, 1, 1)])

    def test_inverse_formula_over_range(self):
        for p in all_profiles(200, m_min=5):
            assert check_inverse_formula(p).passed, p

    def test_minus_discriminant_is_not_square_for_five(self, profile_152):
        d = inverse_discriminant(profile_152, -1)
        assert d == 644
        assert isqrt(d) ** 2 != d

    def test_square_minus_discriminant_fails(self, profile_152, monkeypatch):
        monkeypatch.setattr(residue_profile, "inverse_discriminant", lambda p, sigma: 625)
        report = check_inverse_formula(profile_152)
        assert report.failed_checks() == ["sigma=-1 has no rational root"]

    def test_profile_transformer(self):
        for p in all_profiles(200):
            assert cor69_check(p).passed, p

    def test_corrupted_profile_transformer_fails(self, profile_152):
        assert not cor69_check(profile_152, corrupt=(1, 1)).passed
