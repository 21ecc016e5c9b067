import pytest

from core.exceptions import BadDiscriminant, BadInput, BadParams, NoCommonTriple, NotMarkoff
from core.mat3 import Mat3
from core.qforms import (BQF, Sl2Mat, automorph_form, check_markoff_cycle, check_psi, check_square_sum_system,
                         decompose_G, fixes, fundamental_automorph, gram_determinant, has_unaffiliated_pair,
                         is_equivalent, markoff_form, markoff_parameters, psi, reduce_form, reduce_height,
                         reduction_cycle, symmetric_candidates, symmetric_classes, symmetric_forms_in_cycle,
                         solve_731)


class TestSl2:
    def test_psi_of_shear(self):
        assert psi(Sl2Mat(1, 1, 0, 1)) == Mat3([[1, 2, 1], [0, 1, 1], [0, 0, 1]])

    @pytest.mark.parametrize("x, y", [
        (Sl2Mat(1, 1, 0, 1), Sl2Mat(2, 1, 1, 1)),
        (Sl2Mat(3, 5, 7, 12), Sl2Mat(0, -1, 1, 0)),
        (Sl2Mat(2, 0, 0, 3), Sl2Mat(1, 4, 0, 1)),
    ])
    def test_psi_is_multiplicative(self, x, y):
        assert check_psi(x, y).passed

    def test_inverse_needs_det_one(self):
        assert Sl2Mat(3, 5, 7, 12).inverse() == Sl2Mat(12, -5, -7, 3)
        with pytest.raises(BadParams):
            Sl2Mat(2, 0, 0, 1).inverse()


class TestHeightReduction:
    @pytest.mark.parametrize("xyz, shear", [
        ((5, 2, 1), Sl2Mat(1, -2, 0, 1)),
        ((2, 1, 1), Sl2Mat(1, -1, 0, 1)),
        ((1, 0, 1), Sl2Mat.identity()),
    ])
    def test_examples(self, xyz, shear):
        a, reduced = reduce_height(*xyz)
        assert a == shear
        assert reduced == (1, 0, 1)
        assert psi(a) @ xyz == (1, 0, 1)

    def test_longer_chain(self):
        a, reduced = reduce_height(13, 5, 2)
        assert reduced == (1, 0, 1)
        assert psi(a) @ (13, 5, 2) == (1, 0, 1)
        assert a.det() == 1

    def test_rejects_wrong_height(self):
        with pytest.raises(BadInput):
            reduce_height(2, 1, 2)


class TestMarkoffForm:
    def test_form_of_five(self):
        assert markoff_parameters(5) == (2, 1)
        f = markoff_form(5)
        assert f == BQF(5, -11, -5)
        assert f.discriminant == 221

    def test_form_of_thirteen(self):
        assert markoff_form(13) == BQF(13, -29, -13)

    def test_not_markoff(self):
        with pytest.raises(NotMarkoff):
            markoff_form(6)

    def test_cycle_of_five(self):
        cycle = reduction_cycle(markoff_form(5))
        assert cycle.forms == (BQF(-7, 5, 7), BQF(7, 9, -5), BQF(-5, 11, 5), BQF(5, 9, -7))
        assert cycle.discriminant == 221

    def test_small_cycles(self):
        assert reduction_cycle(BQF(1, 1, -1)).forms == (BQF(-1, 1, 1), BQF(1, 1, -1))
        assert reduction_cycle(BQF(2, 4, -2)).forms == (BQF(-2, 4, 2), BQF(2, 4, -2))

    def test_symmetric_forms(self):
        assert symmetric_candidates(5) == [(5, 11), (7, 5)]
        assert symmetric_forms_in_cycle(5) == [BQF(-7, 5, 7), BQF(-5, 11, 5)]
        sym = symmetric_forms_in_cycle(13)
        assert set(sym) == {BQF(-13, 29, 13), BQF(17, 19, -17)}
        assert has_unaffiliated_pair(sym)
        assert not has_unaffiliated_pair([BQF(5, 11, -5), BQF(-5, 11, 5)])
        assert set(symmetric_classes(sym)) == {13, 17}

    def test_cycle_of_thirteen_has_six_forms(self):
        assert len(reduction_cycle(markoff_form(13))) == 6

    def test_equivalence(self):
        f = markoff_form(5)
        assert is_equivalent(f, BQF(7, 9, -5))
        assert not is_equivalent(f, BQF(-5, 9, 7))
        assert is_equivalent(f, -f)
        assert not is_equivalent(f, BQF(1, 1, -1))

    @pytest.mark.parametrize("d_form", [BQF(1, 2, 1), BQF(1, 0, 1)])
    def test_bad_discriminant(self, d_form):
        with pytest.raises(BadDiscriminant):
            reduce_form(d_form)


class TestAutomorphs:
    def test_F(self):
        x = fundamental_automorph('F', m=5, k=2, l=1)
        assert x == Sl2Mat(13, 5, 5, 2)
        assert fixes(x, markoff_form(5))
        assert automorph_form('F', m=5, k=2, l=1) == markoff_form(5)

    def test_G(self):
        x = fundamental_automorph('G', f=2, g=1)
        assert x == Sl2Mat(3, 5, 7, 12)
        assert automorph_form('G', f=2, g=1) == BQF(7, 9, -5)
        assert fixes(x, BQF(7, 9, -5))

    def test_H(self):
        x = fundamental_automorph('H', u=7, v=5, m=5)
        assert x == Sl2Mat(5, 7, 7, 10)
        assert fixes(x, BQF(7, 5, -7))
        assert x.trace() == 15

    def test_bad_parameters(self):
        with pytest.raises(BadParams):
            fundamental_automorph('F', m=5, k=1, l=1)
        with pytest.raises(BadParams):
            fundamental_automorph('H', u=1, v=1, m=5)
        with pytest.raises(BadParams):
            fundamental_automorph('X')

    @pytest.mark.parametrize("b, fg", [(5, (2, 1)), (13, (2, 3))])
    def test_decompose_G(self, b, fg):
        dec = decompose_G(b)
        assert (dec.f, dec.g) == fg
        assert dec.S @ dec.T == dec.G
        assert dec.S.is_symmetric() and dec.T.is_symmetric()
        assert dec.commutator_trace == -2

    def test_printed_fg_is_named_in_the_cycle_check(self):
        report = check_markoff_cycle(13)
        assert report.passed
        assert report.notes["printed:f, g"].startswith("(3, 2) ")
        assert report.notes["printed:f, g"].endswith("computed (2, 3)")
        assert "printed:f, g" not in check_markoff_cycle(5).notes


class TestSquareSumSystem:
    def test_solutions(self):
        assert solve_731(5, 2) == (3, 4, 4, -4)
        assert solve_731(1, 1) == (1, 0, -2, -1)

    def test_no_common_triple(self):
        with pytest.raises(NoCommonTriple):
            solve_731(2, 3)

    def test_gram_determinant(self):
        assert gram_determinant(2, 5) == 784 == 28 ** 2

    def test_check(self):
        assert check_square_sum_system(5, 2).passed
        assert not check_square_sum_system(5, 2, corrupt=(0, 0)).passed
