"""Symmetry-group layer: Sp^D/Sk^D, Dynkin automorphisms, frames, t_nu."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superroots import QQ
from superroots.cartan import CartanDatum
from superroots.errors import InvalidParameters, NotAffine, NotSymmetrizable
from superroots.groupoid import SKELETON, SPINE, explore
from superroots.linalg import imat_identity, imat_mul
from superroots.roots import principal_data, weyl_generate
from superroots.symmetry import (
    AffineFrame,
    bilinear_frame,
    d_symmetry_group,
    dynkin_hom,
    reflection_matrix,
    sk_d_structure,
    sp_d_group,
    translation,
    translation_identities,
)

from conftest import (
    a10_datum,
    b11_datum,
    c2_datum,
    even_affine_datum,
    nr4_datum,
    q_datum,
)


def a11_datum():
    # simple roots eps1-eps2, eps2-delta1, delta1-delta2 with the standard
    # Gram normalization (eps_i, eps_j) = delta_ij = -(delta_i, delta_j)
    return CartanDatum(QQ, [[2, -1, 0], [-1, 0, 1], [0, 1, -2]], (0, 1, 0))


def _spine(datum, bound=10000):
    return explore(datum, mode=SPINE, bound=bound)


def _skeleton(datum, bound=10000):
    return explore(datum, mode=SKELETON, bound=bound)


# ---------------------------------------------------------------------------
# Sp^D enumeration and the group law


@pytest.mark.parametrize("factory", [a10_datum, b11_datum, c2_datum])
def test_sp_d_trivial_for_small_finite_components(factory):
    group = sp_d_group(_spine(factory()))
    assert group.is_trivial
    assert group.order == 1
    assert group.to_json_dict()["order"] == "1"


def test_sp_d_trivial_for_q_family():
    group = sp_d_group(_spine(q_datum(1, 1, 2)))
    assert group.complete and group.order == 1


def test_sp_d_a11_is_z2():
    spine = _spine(a11_datum())
    assert spine.complete and len(spine) == 6
    group = sp_d_group(spine)
    assert group.order == 2
    g = next(el for el in group.elements if not el.is_identity)
    # the other Borel class carries the negated Cartan matrix
    assert all(d == -1 for d in g.diag_d)
    assert group.multiply(1, 1) == 0  # an involution
    assert group.abelian


def test_sp_d_a11_swaps_pi_components():
    spine = _spine(a11_datum())
    pd = principal_data(spine)
    coords = {alpha.coords for alpha in pd.sigma_pr}
    assert coords == {(1, 0, 0), (0, 0, 1)}
    group = sp_d_group(spine)
    g = next(el for el in group.elements if not el.is_identity)
    perm = dynkin_hom(g, pd)
    assert perm == (1, 0)
    ident = dynkin_hom(group.identity, pd)
    assert ident == (0, 1)


def test_sp_d_truncated_line_reports_honestly():
    spine = _spine(nr4_datum(), bound=12)
    group = sp_d_group(spine)
    assert not group.complete
    assert group.order is None
    assert len(group.elements) == 1  # every deeper vertex is a new D-class
    assert "truncated" in group.to_json_dict()["order"]


def test_sp_d_rejects_skeleton_input():
    with pytest.raises(InvalidParameters):
        sp_d_group(_skeleton(a10_datum()))


# ---------------------------------------------------------------------------
# Sk^D structure


def test_sk_d_structure_a11():
    datum = a11_datum()
    spine = _spine(datum)
    skeleton = _skeleton(datum)
    assert len(skeleton) == 24  # |W| * |Sp| = 4 * 6
    pd = principal_data(spine)
    weyl = weyl_generate(pd, 6)
    assert len(weyl) == 4
    group = sp_d_group(spine)
    report = sk_d_structure(skeleton, group, weyl)
    assert report["skd_enumerated"] == 8
    assert report["w_cap_spd_trivial"]
    assert report["factored"] == 8
    assert report["factorization_unique"]
    # the paper's semidirect product is NOT direct: xi conjugates W
    assert not report["spd_commutes_with_w"]
    assert not report["truncated"]


def test_sk_d_structure_affine_translation_split():
    datum = even_affine_datum()
    spine = _spine(datum)
    skeleton = _skeleton(datum, bound=40)
    pd = principal_data(spine)
    weyl = weyl_generate(pd, 6)
    group = sp_d_group(spine)
    report = sk_d_structure(skeleton, group, weyl, delta=(1, 1))
    assert report["w_cap_spd_trivial"]
    assert report["weyl_split_checked"] == len(weyl)
    # infinite dihedral group: every element is (rotation|reflection) and
    # rotations are exactly the delta-translations here
    assert report["weyl_split_found"] == len(weyl)
    assert report["spd_commutes_with_w"]  # Sp^D is trivial


# ---------------------------------------------------------------------------
# bilinear frames


def test_frame_nondegenerate_c2():
    frame = bilinear_frame(_spine(c2_datum()).vertices[0])
    assert frame.corank == 0 and frame.dim == 2
    assert frame.delta is None
    assert frame.form((0, 1), (0, 1)) == -4
    with pytest.raises(NotAffine):
        translation(frame, (1, 0))


def test_frame_reflection_c2():
    frame = bilinear_frame(_spine(c2_datum()).vertices[0])
    s = reflection_matrix(frame, (0, 1))
    # s_{2delta}: e1 -> e1 + e2, e2 -> -e2 (columns are images)
    assert s == ((QQ.scalar(1), QQ.scalar(0)), (QQ.scalar(1), QQ.scalar(-1)))


def test_frame_affine_extension():
    frame = bilinear_frame(_spine(even_affine_datum()).vertices[0])
    assert frame.corank == 1 and frame.dim == 3
    assert frame.delta.coords == (1, 1)
    delta_ext = frame.delta_extended
    # (V_b, delta) = 0 and (Lambda, delta) = 1
    assert frame.form(frame.embed((1, 0)), delta_ext).is_zero
    assert frame.form(frame.embed((0, 1)), delta_ext).is_zero
    assert frame.form(frame.lambda_direction(), delta_ext) == 1
    assert frame.form(frame.lambda_direction(), frame.lambda_direction()).is_zero


def test_frame_rejects_nonsymmetrizable():
    datum = CartanDatum(
        QQ,
        [[0, 1, 0, -1], [-1, 2, -1, 0], [0, -1, 2, -1], [-1, 0, -1, 2]],
        (1, 0, 0, 0),
    )
    with pytest.raises(NotSymmetrizable):
        bilinear_frame(explore(datum, mode=SPINE, bound=4).vertices[0])


# ---------------------------------------------------------------------------
# translations


def test_translation_identity_cases():
    frame = bilinear_frame(_spine(even_affine_datum()).vertices[0])
    ident = tuple(
        tuple(QQ.one() if i == j else QQ.zero() for j in range(3)) for i in range(3)
    )
    assert translation(frame, (0, 0)) == ident
    assert translation(frame, (2, 2)) == ident  # 2*delta
    assert translation(frame, (1, 1)) == ident


@settings(max_examples=25, deadline=None)
@given(
    nu=st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
    mu=st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
)
def test_translation_group_law(nu, mu):
    frame = bilinear_frame(_spine(even_affine_datum()).vertices[0])
    phi = reflection_matrix(frame, frame.embed((1, 0)))
    assert translation_identities(frame, nu, mu, phis=[phi])


def test_translation_moves_lambda():
    frame = bilinear_frame(_spine(even_affine_datum()).vertices[0])
    nu = (1, 0)
    t = translation(frame, nu)
    lam = frame.lambda_direction()
    image = tuple(
        sum((t[i][j] * lam[j] for j in range(1, 3)), t[i][0] * lam[0])
        for i in range(3)
    )
    # t_nu(Lambda) = Lambda + nu - ((Lambda,nu) + (nu,nu)/2) delta
    nu_ext = frame.embed(nu)
    k_term = frame.form(lam, nu_ext) + frame.form(nu_ext, nu_ext) * QQ.scalar(
        Fraction(1, 2)
    )
    expected = tuple(
        lam[j] + nu_ext[j] - k_term * frame.delta_extended[j] for j in range(3)
    )
    assert image == expected


def test_translation_rational_nu():
    frame = bilinear_frame(_spine(even_affine_datum()).vertices[0])
    assert translation_identities(frame, (Fraction(1, 2), 0), (0, Fraction(3, 2)))


# ---------------------------------------------------------------------------
# the matrix model really multiplies


def test_group_table_matches_matrix_products():
    spine = _spine(a11_datum())
    group = sp_d_group(spine)
    for i, g1 in enumerate(group.elements):
        for j, g2 in enumerate(group.elements):
            k = group.multiply(i, j)
            assert k is not None
            assert group.elements[k].sigma_b == imat_mul(g1.sigma_b, g2.sigma_b)


def test_identity_element_is_first():
    group = sp_d_group(_spine(a11_datum()))
    assert group.identity.is_identity
    assert group.identity.sigma_b == imat_identity(3)
