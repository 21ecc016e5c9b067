import pytest

from core import solutions
from core.exceptions import BadInput, NotAResidue, NotDivisibleBy3
from core.families import G_q, M
from core.mat3 import Mat3
from core.solutions import (check_factorization, check_F_polynomial, check_mirror_conjugation, equivalent,
                            F_polynomial, pairing_modulus, residue_pairing, root_solution, search_equivalence,
                            solve_root_system, transport_solution, unitary_divisors, w_solution)


class TestRootSolution:
    def test_q15(self):
        x = root_solution(15, 2)
        assert x.matrix == Mat3([[3, 0, -33], [-3, 3, 3], [3, -1, 27]])
        assert x.j == 1
        assert M(x.orientation).congruence(x.matrix) == G_q(15)
        assert x.validate().passed

    def test_q3(self):
        x = root_solution(3, 0)
        assert x.matrix == Mat3([[3, 1, -9], [-3, 0, 3], [3, 0, 3]])
        assert M(x.orientation).congruence(x.matrix) == Mat3([[0, 3, 0], [3, 1, 9], [0, -9, -36]])

    def test_eps_must_be_a_residue(self):
        with pytest.raises(NotAResidue):
            root_solution(15, 1)

    @pytest.mark.parametrize("q", [0, 4, -3])
    def test_q_must_be_multiple_of_three(self, q):
        with pytest.raises(NotDivisibleBy3):
            root_solution(q, 0)

    def test_corrupted_solution_fails(self):
        assert not root_solution(15, 2).validate(corrupt=(0, 0)).passed


class TestClasses:
    def test_one_class_per_residue(self):
        assert [x.eps for x in solve_root_system(15)] == [2, 3]
        assert solve_root_system(9) == []
        assert len(solve_root_system(3 * 65)) == 4

    @pytest.mark.parametrize("q", [6, 15, 30, 39, 75])
    def test_every_class_validates(self, q):
        for x in solve_root_system(q):
            assert x.validate().passed

    def test_shift_by_q_over_3_is_equivalent(self):
        x = root_solution(15, 2)
        assert equivalent(x, root_solution(15, 7)) is not None
        assert equivalent(x, x) == 0

    def test_distinct_classes_are_not_equivalent(self):
        first, second = solve_root_system(15)
        assert equivalent(first, second) is None

    def test_different_q_never_equivalent(self):
        assert equivalent(root_solution(15, 2), root_solution(6, 1)) is None

    def test_search_agrees_with_residue_criterion(self):
        x = root_solution(15, 2)
        assert search_equivalence(x, root_solution(15, 7)) == equivalent(x, root_solution(15, 7)) == 1
        assert search_equivalence(x, root_solution(15, 12)) == equivalent(x, root_solution(15, 12)) == 2
        assert search_equivalence(x, x) == 0

    def test_search_finds_nothing_between_classes(self):
        first, second = solve_root_system(15)
        assert search_equivalence(first, second) is None
        classes = solve_root_system(3 * 65)
        assert [x.eps for x in classes] == [8, 18, 47, 57]
        for i, x in enumerate(classes):
            for y in classes[i + 1:]:
                assert search_equivalence(x, y) is None
                assert equivalent(x, y) is None
            assert search_equivalence(x, root_solution(195, x.eps + 65)) == 1

    def test_search_radius(self):
        x = root_solution(15, 2)
        assert search_equivalence(x, root_solution(15, 12), radius=1) is None
        with pytest.raises(BadInput):
            search_equivalence(x, x, radius=-1)


class TestTransport:
    def test_transported_solutions_validate(self, small_orientations):
        x = root_solution(15, 2)
        for o in small_orientations:
            moved = transport_solution(x, o)
            assert moved.orientation == o
            assert moved.validate().passed

    def test_W_is_a_solution(self, small_orientations):
        for o in small_orientations:
            x = w_solution(o)
            assert x.q == o.m
            assert x.validate().passed

    def test_factorization(self, small_orientations):
        for o in small_orientations:
            assert check_factorization(w_solution(o)).passed

    def test_mirror_conjugation_on_the_root(self):
        # на корне 𝒥ᵗM𝒥 = Mᵗ, so X* solves the same system
        report = check_mirror_conjugation(root_solution(15, 2))
        assert report.passed
        assert set(report.notes) == {"printed:without E", "printed:first order with E"}


class TestResiduePairing:
    def test_unitary_divisors(self):
        assert unitary_divisors(1) == [1]
        assert unitary_divisors(12) == [1, 3, 4, 12]

    def test_pairing_modulus(self, root, o3615):
        assert pairing_modulus(root) == 1
        assert pairing_modulus(o3615) == 13

    def test_pairing_splits_the_modulus(self, o3615):
        for n in range(13):
            if (n * n + 1) % 13 == 0:
                pairing = residue_pairing(n, o3615)
                assert pairing.p * pairing.q == 13
                assert (o3615.c * n + o3615.a) % pairing.p == 0
                assert (o3615.c * n - o3615.a) % pairing.q == 0

    def test_non_residue(self, o3615):
        with pytest.raises(NotAResidue):
            residue_pairing(1, o3615)

    def test_F_polynomial(self, root):
        # 𝔞 = 𝔠 = 1, 𝔪 = 2: F(n) = n² + 4n − 1
        assert F_polynomial(1, root) == 4
        assert F_polynomial(-1, root) == -4

    @pytest.mark.parametrize("n", [-5, -3, 0, 1, 3])
    def test_F_product(self, o3615, n):
        assert check_F_polynomial(n, o3615).passed

    def test_non_residue_divisibility_is_checked(self, o3615, monkeypatch):
        # n = 1 is not a residue mod 13, so 13² must not divide F(1)F(−1)
        original = solutions.F_polynomial
        monkeypatch.setattr(solutions, "F_polynomial", lambda n, o: 13 * original(n, o))
        report = check_F_polynomial(1, o3615)
        assert "frak_m^2 | F(n)F(-n) iff frak_m | n^2+1" in report.failed_checks()
