import pickle
from fractions import Fraction

import pytest

from core.exceptions import BadInput, NotNilpotent
from core.families import (_ORIENTATION_FAMILIES, FRAK_J, K_PRIME, N1, G_q, H, K_q, M, N_m, R, Y, Z, alpha_data,
                           build, exp_R, script_A, script_B)
from core.mat3 import Mat3
from core.tree import J_ANTI


class TestArithmetic:
    def test_identity_and_zero(self):
        e = Mat3.identity()
        a = Mat3([[1, 2, 3], [0, 1, 4], [5, 6, 0]])
        assert e @ a == a @ e == a
        assert (a - a).is_zero()
        assert a + Mat3.zero() == a

    def test_inverse(self):
        a = Mat3([[1, 2, 3], [0, 1, 4], [5, 6, 0]])
        assert a.det() == 1
        assert a @ a.inverse() == Mat3.identity()
        assert a ** -1 == a.inverse()
        assert a ** 0 == Mat3.identity()

    def test_singular(self):
        with pytest.raises(BadInput):
            Mat3([[1, 2, 3], [2, 4, 6], [0, 0, 1]]).inverse()

    def test_adjugate(self):
        a = Mat3([[2, 0, 1], [1, 3, 0], [0, 1, 1]])
        assert a @ a.adjugate() == Mat3.identity() * a.det()

    def test_rational_entries(self):
        half = Mat3.identity() / 2
        assert half[0, 0] == Fraction(1, 2)
        assert not half.is_integral()
        assert half.denominator() == 2

    @pytest.mark.parametrize("entry", [1.5, True])
    def test_rejects_inexact(self, entry):
        with pytest.raises(BadInput):
            Mat3([[entry, 0, 0], [0, 1, 0], [0, 0, 1]])

    def test_immutable(self):
        a = Mat3.identity()
        with pytest.raises(AttributeError):
            a._e = None

    def test_pickle(self):
        a = Mat3([[Fraction(1, 2), 0, 3], [0, 1, 0], [-1, 0, 7]])
        assert pickle.loads(pickle.dumps(a)) == a

    def test_vector_product(self):
        a = Mat3([[1, 2, 3], [0, 1, 4], [5, 6, 0]])
        assert a @ (1, 0, 0) == (1, 0, 5)

    def test_outer_and_columns(self):
        assert Mat3.outer((1, 2, 3), (1, 0, 0)) == Mat3.from_columns((1, 2, 3), (0, 0, 0), (0, 0, 0))

    def test_with_entry(self):
        assert Mat3.zero().with_entry(1, 2, 7)[1, 2] == 7


class TestRootFamilies:
    def test_R_of_root(self, root):
        assert R(root) == Mat3([[-9, -12, -3], [3, 0, -3], [3, 12, 9]])

    def test_R_square_is_rank_one(self, root):
        r = R(root)
        assert r @ r == Mat3.outer((3, -3, 3), (3, 6, 3)) * 4
        assert (r @ r @ r).is_zero()

    def test_smith_invariants(self, root):
        assert (R(root) / 3).smith_invariants() == (1, 4, 0)
        assert Mat3.diag(2, 3, 0).smith_invariants() == (1, 6, 0)

    def test_charpolys(self, root):
        assert R(root).charpoly() == (-1, 0, 0, 0)
        assert H(root).charpoly() == (-1, 3, -3, 1)

    def test_exp_nilpotent(self, root):
        r = R(root)
        assert r.exp_nilpotent(1) @ r.exp_nilpotent(-1) == Mat3.identity()
        with pytest.raises(NotNilpotent):
            M(root).exp_nilpotent()

    def test_exp_R(self, small_orientations):
        for o in small_orientations:
            assert exp_R(0, o) == Mat3.identity()
            assert exp_R(Fraction(-1, 2), o) == H(o)
            assert M(o).congruence(exp_R(1, o)) == M(o)

    def test_R_solves_the_lyapunov_equation(self, small_orientations):
        for o in small_orientations:
            assert (R(o).T @ M(o) + M(o) @ R(o)).is_zero()


class TestBuild:
    @pytest.mark.parametrize("kind", sorted(_ORIENTATION_FAMILIES))
    def test_orientation_families(self, o336, kind):
        assert build(kind, o336) == _ORIENTATION_FAMILIES[kind](o336)
        with pytest.raises(BadInput):
            build(kind)

    def test_constants(self):
        assert build('J') == J_ANTI
        assert build('frak_J') == FRAK_J
        assert build('K_prime') == K_PRIME
        assert build('N1') == N1

    def test_parametrised_families(self, root, o336):
        alpha, _, l = alpha_data(o336)
        assert build('Z_adj', root) == Z(root).adjugate()
        assert build('script_A', o336) == script_A(15, alpha, l)
        assert build('script_A', o336, alpha=alpha, l=l) == script_A(15, alpha, l)
        assert build('script_B', q=15, eps=2) == script_B(15, 2)
        assert build('G_q', o336) == G_q(15)
        assert build('G_q', q=6) == G_q(6)
        assert build('K_q', o336) == K_q(15)
        assert build('N_m', m=15) == N_m(15)
        assert build('Y', o336) == Y(15)

    @pytest.mark.parametrize("kind, params", [
        ('Z_adj', {}), ('script_A', {}), ('script_B', {'q': 15}), ('script_B', {'eps': 2}),
        ('G_q', {}), ('K_q', {}), ('N_m', {}), ('Y', {}), ('no-such-family', {}),
    ])
    def test_missing_inputs(self, kind, params):
        with pytest.raises(BadInput):
            build(kind, **params)

    def test_l_needs_alpha(self, o336):
        with pytest.raises(BadInput):
            build('script_A', o336, l=1)
