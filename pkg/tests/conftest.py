"""Shared builders for the worked data used across test modules."""

from fractions import Fraction

from superroots import QQ, ScalarField
from superroots.cartan import CartanDatum


def a10_datum():
    """sl(2|1)-type datum: one even anisotropic and one odd isotropic root."""
    return CartanDatum(QQ, [[2, -1], [-1, 0]], (0, 1))


def b11_datum():
    return CartanDatum(QQ, [[0, 1], [1, -1]], (1, 1))


def c2_datum():
    return CartanDatum(QQ, [[0, 2], [2, -4]], (1, 0))


def c3_datum():
    return CartanDatum(QQ, [[0, 1, 0], [1, -2, 2], [0, 2, -4]], (1, 0, 0))


def even_affine_datum():
    """The rank-2 affine Cartan matrix embedded as a purely even datum."""
    return CartanDatum(QQ, [[2, -2], [-2, 2]], (0, 0))


def nr4_datum():
    field = ScalarField(param="t")
    t = field.parameter()
    return CartanDatum(
        field,
        [[2, -1, -1, 0], [-1, 0, 1, -t], [-1, 1, 0, t], [0, -t, t, 2]],
        (0, 1, 1, 0),
    )


def q_datum(m, n, t, branch="+"):
    """The rank-3 family with all parities odd and cyclic zero diagonal.

    The off-diagonal parameters a, b, c satisfy 1 + a + 1/c = -m,
    1 + b + 1/a = -n, 1 + c + 1/b = -t; eliminating b and c leaves one
    quadratic for a whose two real roots select the two branches: one in
    (-1, 0), the other below -1.
    """
    aq = (1 + t) * (n + 1) - 1
    bq = (1 + t) * (1 + (m + 1) * (n + 1)) - (n + 1) - (m + 1)
    cq = (1 + t) * (m + 1) - 1
    if branch == "+":
        interval = (-1, 0)
    else:
        interval = (Fraction(-bq, aq), -1)
    field = ScalarField(
        minpoly=[str(Fraction(cq, aq)), str(Fraction(bq, aq)), "1"],
        interval=interval,
    )
    a = field.theta()
    one = field.one()
    b = -(one * (n + 1)) - a.inverse()
    c = -(a + (m + 1)).inverse()
    assert one + a + c.inverse() == -(one * m)
    assert one + b + a.inverse() == -(one * n)
    assert one + c + b.inverse() == -(one * t)
    zero = field.zero()
    matrix = [[zero, a, one], [one, zero, b], [c, one, zero]]
    return CartanDatum(field, matrix, (1, 1, 1))
