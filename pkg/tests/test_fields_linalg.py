from fractions import Fraction
import random

import pytest

from dgsep import linalg
from dgsep.errors import FormatError, NoSolution
from dgsep.fields import GF, QQ, characteristic_is_invertible, parse_field


def test_parse_field_spellings():
    assert parse_field("Q") is QQ or parse_field("Q") == QQ
    assert parse_field("F5") == GF(5) == parse_field("F_5")
    with pytest.raises((FormatError, ValueError)):
        parse_field("F6")


def test_prime_field_arithmetic():
    F = GF(7)
    assert F.mul(F(3), F.inv(F(3))) == F.one
    assert F.add(F(5), F(4)) == F(2)
    assert F.neg(F(1)) == F(6)
    assert sorted(F.elements()) == list(range(7))


def test_rationals_are_exact():
    assert QQ.div(QQ(1), QQ(3)) == Fraction(1, 3)
    assert QQ.add(Fraction(1, 3), Fraction(2, 3)) == 1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        GF(3).inv(0)


@pytest.mark.parametrize("n,p,expected", [(3, 2, True), (2, 2, False), (6, 3, False), (4, 5, True)])
def test_integer_invertibility(n, p, expected):
    assert characteristic_is_invertible(GF(p), n) is expected


def test_integers_invertible_in_q():
    assert characteristic_is_invertible(QQ, 12)


def test_rank_nullity_example():
    F = GF(3)
    A = [[1, 2, 0], [2, 1, 0]]
    assert linalg.rank(F, A, 3) == 1
    assert len(linalg.kernel_basis(F, A, 3)) == 2


def test_solve_and_witness():
    F = QQ
    A = [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]]
    x = linalg.solve(F, A, [Fraction(1), Fraction(2)], 2)
    assert linalg.mat_vec(F, A, x) == [1, 2]
    with pytest.raises(NoSolution) as info:
        linalg.solve(F, A, [Fraction(1), Fraction(3)], 2)
    assert linalg.check_witness(F, A, [Fraction(1), Fraction(3)], info.value.witness, 2)


def test_inverse_matrix_roundtrip():
    F = GF(5)
    rng = random.Random(3)
    while True:
        A = [[rng.randrange(5) for _ in range(3)] for _ in range(3)]
        if linalg.rank(F, A, 3) == 3:
            break
    assert linalg.matmul(F, A, linalg.inverse(F, A)) == linalg.identity(F, 3)


def test_linear_system_tags_rows():
    F = GF(2)
    sys = linalg.LinearSystem(F, ["a", "b"])
    sys.add(lambda u: {"r": F.one}, "sum", rhs={"r": F.one})
    sol = sys.solve()
    assert sum(sol.values()) % 2 == 1
    assert sys.row_keys() == [("sum", "r")]
