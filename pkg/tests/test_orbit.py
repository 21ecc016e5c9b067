from fractions import Fraction

import pytest

from core.exceptions import BadInput, NotATriple
from core.orbit import (NormSolution, QuadExt, a_sequence, check_classes, check_omega, check_uv,
                        classify, discriminant_of, dominated_pair, equivalent_solutions, fundamental_solutions,
                        fundamental_unit, gram_identity, norm_solution_of, omega, section10_suite, uv_sequences)


class TestQuadExt:
    def test_unit_has_norm_one(self):
        for m in (1, 2, 5, 13, 29):
            lam = fundamental_unit(m)
            assert lam.norm() == 1
            assert lam * lam.conjugate() == 1
            assert lam * lam.inverse() == 1

    def test_arithmetic(self):
        x = QuadExt(Fraction(1), Fraction(2), 5)
        assert x * x == QuadExt(Fraction(21), Fraction(4), 5)
        assert x + 1 == QuadExt(Fraction(2), Fraction(2), 5)
        assert 1 - x == QuadExt(Fraction(0), Fraction(-2), 5)
        assert x ** -1 == x.inverse()
        assert (x / x) == 1
        assert x.trace() == 2

    def test_rejects_square_discriminant(self):
        with pytest.raises(BadInput):
            QuadExt(Fraction(1), Fraction(1), 4)

    def test_rejects_mixed_fields(self):
        with pytest.raises(BadInput):
            QuadExt(Fraction(1), Fraction(1), 5) + QuadExt(Fraction(1), Fraction(1), 13)


class TestNormSolutions:
    @pytest.mark.parametrize("m, expected", [
        (1, [(-1, 1), (1, 1)]),
        (2, [(-4, 1), (4, 1)]),
        (5, [(-11, 1), (11, 1)]),
    ])
    def test_fundamental_solutions(self, m, expected):
        assert [(s.x, s.y) for s in fundamental_solutions(m)] == expected

    def test_every_solution_solves_the_norm_equation(self):
        for m in (1, 2, 5, 13, 29, 34, 89, 169, 194, 233, 433):
            d = discriminant_of(m)
            for s in fundamental_solutions(m):
                assert s.x * s.x - d * s.y * s.y == -4 * m * m

    @pytest.mark.parametrize("m, count", [(1, 1), (2, 1), (5, 2), (13, 2), (29, 2)])
    def test_class_count(self, m, count):
        assert len(classify(fundamental_solutions(m), m)) == count

    def test_equivalent_solutions(self):
        assert equivalent_solutions(NormSolution(4, 1), NormSolution(-4, 1), 2) == 1
        assert equivalent_solutions(NormSolution(1, 1), NormSolution(-1, 1), 1) == 1
        assert equivalent_solutions(NormSolution(11, 1), NormSolution(-11, 1), 5) is None

    def test_norm_solution_of(self):
        assert norm_solution_of(5, 1, 2) == NormSolution(11, 1)
        assert dominated_pair(5) == (1, 2)
        assert dominated_pair(1) == (1, 1)

    @pytest.mark.parametrize("m", [1, 2, 5, 13, 29])
    def test_check_classes(self, m):
        assert check_classes(m).passed


class TestOmega:
    def test_a_sequence(self):
        assert a_sequence(5, 1, 2, 0, 2) == {0: 1, 1: 2, 2: 29}
        assert a_sequence(5, 1, 2, -1, 0) == {-1: 13, 0: 1}

    def test_omega_reproduces_the_sequence(self):
        w = omega(5, 1, 2)
        lam = fundamental_unit(5)
        for n, a_n in a_sequence(5, 1, 2, -3, 3).items():
            assert w * lam ** n + w.conjugate() * lam ** (-n) == a_n

    def test_not_a_triple(self):
        with pytest.raises(NotATriple):
            omega(5, 1, 3)

    @pytest.mark.parametrize("m", [1, 2, 5, 13, 29])
    def test_check_omega(self, m):
        assert check_omega(m, *dominated_pair(m)).passed


class TestUV:
    def test_seed_of_five(self):
        seq = uv_sequences(5, 1, 2, 2)
        assert (seq.p, seq.q) == (3, 4)
        assert seq.pair(0) == (-2, 1)
        assert seq.pair(1) == (4, -4)
        assert seq.pair(2) == (62, -61)
        assert seq.window == (-2, 2)

    @pytest.mark.parametrize("m", [1, 2, 5, 13])
    def test_check_uv(self, m):
        assert check_uv(uv_sequences(m, *dominated_pair(m), 6)).passed

    def test_gram(self):
        seq = uv_sequences(5, 1, 2, 3)
        for n in (0, 1):
            report = gram_identity(seq, n)
            assert report.passed
        assert not gram_identity(seq, 0, corrupt=(0, 0)).passed

    def test_gram_outside_the_window(self):
        seq = uv_sequences(5, 1, 2, 2)
        with pytest.raises(BadInput):
            gram_identity(seq, 2)


@pytest.mark.parametrize("m", [1, 2, 5, 13])
def test_diagonalization_suite(m):
    assert section10_suite(m).passed


def test_corrupted_diagonalization_fails():
    assert not section10_suite(5, corrupt=(0, 0)).passed
