import random

import pytest

from conftest import (
    a10_datum,
    b11_datum,
    c2_datum,
    c3_datum,
    even_affine_datum,
    nr4_datum,
    q_datum,
)
from superroots.errors import InfiniteSystem, NotKacMoody
from superroots.groupoid import SKELETON, SPINE, explore
from superroots.roots import (
    NO,
    NOT_IN_POSITIVE_CONE,
    YES,
    RootVector,
    WeylElement,
    descend_to_dominant,
    enumerate_finite_system,
    indecomposables_oracle,
    is_imaginary,
    is_root_basis,
    pi_S_enumerate,
    positive_system,
    principal_data,
    real_roots,
    root_bases,
    classify_component,
    totally_positive,
    weyl_generate,
)


def _spine(datum, bound=10000):
    return explore(datum, mode=SPINE, bound=bound)


def _skeleton(datum, bound=10000):
    return explore(datum, mode=SKELETON, bound=bound)


def _coords(roots):
    return {r.coords for r in roots}


def _weyl_closure(pd, cap=40):
    """Generate W until the element count stops growing."""
    prev = -1
    length = 1
    while True:
        elems = weyl_generate(pd, length)
        if len(elems) == prev:
            return elems
        prev = len(elems)
        length += 1
        assert length <= cap, "Weyl group did not close below the cap"


# ---------------------------------------------------------------------------
# principal data


def test_a10_principal_data():
    spine = _spine(a10_datum())
    assert spine.complete and len(spine) == 3
    pd = principal_data(spine)
    assert _coords(pd.sigma_pr) == {(1, 0)}
    assert _coords(pd.pi) == {(1, 0)}
    assert pd.b_pi == ((2,),)
    assert pd.saturated and pd.fully_reflectable and not pd.purely_anisotropic
    # the isotropic simple roots over the spine close under the Weyl orbit
    # to exactly four isotropic real roots
    groups = real_roots(pd, spine, 3)
    assert _coords(groups["anisotropic"]) == {(1, 0), (-1, 0)}
    assert _coords(groups["isotropic"]) == {(0, 1), (0, -1), (1, 1), (-1, -1)}
    assert groups["nonreflectable"] == set()


def test_c2_principal_data_and_weyl():
    spine = _spine(c2_datum())
    assert spine.complete and len(spine) == 3
    pd = principal_data(spine)
    assert _coords(pd.pi) == {(0, 1)}
    assert pd.b_pi == ((2,),)
    w = weyl_generate(pd, 10)
    assert len(w) == 2
    assert w[0] == WeylElement.identity(2)


def test_b11_principal_data():
    spine = _spine(b11_datum())
    assert spine.complete and len(spine) == 2
    pd = principal_data(spine)
    assert _coords(pd.sigma_pr) == {(0, 1), (1, 1)}
    assert _coords(pd.pi) == {(0, 2), (1, 1)}
    # B_pi is diagonal: the two pi elements are orthogonal
    flat = sorted(tuple(row) for row in pd.b_pi)
    assert flat == [(0, 2), (2, 0)]
    assert len(_weyl_closure(pd)) == 4


def test_q112_principal_data():
    datum = q_datum(1, 1, 2)
    spine = _spine(datum)
    assert spine.complete and len(spine) == 4
    pd = principal_data(spine)
    alpha = {1: (1, 1, 0), 2: (1, 0, 1), 3: (0, 1, 1)}
    assert _coords(pd.sigma_pr) == set(alpha.values())
    assert _coords(pd.pi) == set(alpha.values())  # all three are even

    # expected B_pi in the alpha_1..alpha_3 order, for (m, n, t) = (1, 1, 2)
    expected = {
        (1, 1): 2, (1, 2): -1, (1, 3): -1,
        (2, 1): -1, (2, 2): 2, (2, 3): -1,
        (3, 1): -2, (3, 2): -2, (3, 3): 2,
    }
    pos = {k: next(i for i, a in enumerate(pd.pi) if a.coords == v) for k, v in alpha.items()}
    for (i, j), val in expected.items():
        assert pd.b_pi[pos[i]][pos[j]] == val

    # pairings of delta with the three coroots: 1-n, 1-m, 1-t
    delta = (1, 1, 1)
    assert pd.pairing(delta, pos[1]) == 0
    assert pd.pairing(delta, pos[2]) == 0
    assert pd.pairing(delta, pos[3]) == -1


def test_purely_anisotropic_principal_data():
    datum = even_affine_datum()
    spine = _spine(datum)
    assert len(spine) == 1
    pd = principal_data(spine)
    assert pd.purely_anisotropic
    assert _coords(pd.pi) == {(1, 0), (0, 1)}
    assert sorted(tuple(r) for r in pd.b_pi) == [(-2, 2), (2, -2)]


def test_nr4_principal_data_is_singleton():
    spine = _spine(nr4_datum(), bound=24)
    assert not spine.complete
    pd = principal_data(spine)
    assert _coords(pd.sigma_pr) == {(1, 0, 0, 0)}
    assert pd.b_pi == ((2,),)
    assert not pd.fully_reflectable
    # every vertex of the truncated line is a fresh D-class, so the
    # saturation heuristic must stay honest and refuse to certify
    assert not pd.saturated
    # the deeper layers only ever contribute non-reflectable simples, so the
    # principal data really is complete; assert that by hand and override
    pd = principal_data(spine, saturated_override=True)
    assert pd.saturated
    assert len(_weyl_closure(pd)) == 2


# ---------------------------------------------------------------------------
# oracle cross-checks


def test_indecomposables_oracle_trivial():
    par = (0, 0)
    a = RootVector.from_coords((1, 0), par)
    b = RootVector.from_coords((0, 1), par)
    ab = RootVector.from_coords((1, 1), par)
    assert indecomposables_oracle({a, b, ab}) == {a, b}


@pytest.mark.parametrize(
    "builder,bound",
    [(a10_datum, 6), (b11_datum, 6), (c2_datum, 6), (c3_datum, 6), (lambda: q_datum(1, 1, 2), 9)],
)
def test_sigma_pr_equals_indecomposable_anisotropic(builder, bound):
    spine = _spine(builder())
    pd = principal_data(spine)
    groups = real_roots(pd, spine, bound)
    positive = {r for r in groups["anisotropic"] if r.height > 0}
    assert indecomposables_oracle(positive) == set(pd.sigma_pr)


def test_weyl_words_are_reduced_and_involutive():
    spine = _spine(c3_datum())
    pd = principal_data(spine)
    elems = _weyl_closure(pd)
    assert len(elems) == 8  # hyperoctahedral group of rank 2
    for w in elems:
        assert w.length == len(w.word)
    # each generator is an involution permuting the anisotropic roots
    groups = real_roots(pd, spine, 8)
    an = _coords(groups["anisotropic"])
    for i in range(len(pd.pi)):
        s = pd.reflection(i)
        assert s.then(s) == WeylElement.identity(pd.n)
        assert {s.apply(c) for c in an} == an


# ---------------------------------------------------------------------------
# descent and cones


def test_descend_dominant_fixed_point():
    spine = _spine(even_affine_datum())
    pd = principal_data(spine)
    w, mu0 = descend_to_dominant(pd, (1, 1))
    assert w.word == () and mu0.coords == (1, 1)


def test_descend_leaves_positive_cone():
    spine = _spine(even_affine_datum())
    pd = principal_data(spine)
    # 2*alpha_1 + alpha_2 reflects to alpha_2 and then out of the cone:
    # it is a real root, not a totally positive element
    assert descend_to_dominant(pd, (2, 1)) is NOT_IN_POSITIVE_CONE
    assert descend_to_dominant(pd, (3, 1)) is NOT_IN_POSITIVE_CONE
    assert not NOT_IN_POSITIVE_CONE


def test_totally_positive_affine():
    datum = even_affine_datum()
    spine = _spine(datum)
    pd = principal_data(spine)
    assert totally_positive(pd, spine, (1, 1))
    assert totally_positive(pd, spine, (2, 2))
    assert not totally_positive(pd, spine, (2, 1))
    assert not totally_positive(pd, spine, (1, 0))
    # rational scaling invariance
    from fractions import Fraction

    assert totally_positive(pd, spine, (Fraction(1, 2), Fraction(1, 2)))


def test_totally_positive_pi_elements_fail():
    spine = _spine(b11_datum())
    pd = principal_data(spine)
    for alpha in pd.pi:
        assert not totally_positive(pd, spine, alpha)


def test_totally_positive_fallback_mode():
    # the non-Kac-Moody route intersects the simple-root cones over the
    # explored vertices and reports truncation honestly
    skel = _skeleton(nr4_datum(), bound=12)
    spine = _spine(nr4_datum(), bound=12)
    pd = principal_data(spine)
    verdict = totally_positive(pd, skel, (1, 1, 1, 0))
    assert verdict.truncated
    bad = totally_positive(pd, skel, (-1, 0, 0, 0))
    assert not bad.value


def test_is_imaginary_affine_is_delta_ladder():
    datum = even_affine_datum()
    spine = _spine(datum)
    pd = principal_data(spine)
    hits = set()
    for x in range(-4, 7):
        for y in range(-4, 7):
            if is_imaginary(pd, spine, (x, y)):
                hits.add((x, y))
    assert hits == {(k, k) for k in range(1, 7)}


def test_is_imaginary_fin_is_empty():
    spine = _spine(a10_datum())
    pd = principal_data(spine)
    for x in range(-3, 4):
        for y in range(-3, 4):
            assert not is_imaginary(pd, spine, (x, y))


def test_is_imaginary_q112_delta():
    spine = _spine(q_datum(1, 1, 2))
    pd = principal_data(spine)
    assert is_imaginary(pd, spine, (1, 1, 1))
    assert is_imaginary(pd, spine, (2, 2, 2))
    # W-invariance: reflecting delta keeps it imaginary
    idx = next(i for i in range(3) if pd.pairing((1, 1, 1), i) != 0)
    moved = pd.reflection(idx).apply((1, 1, 1))
    assert is_imaginary(pd, spine, moved)
    assert not is_imaginary(pd, spine, (1, 0, 0))


def test_is_imaginary_needs_kac_moody():
    spine = _spine(nr4_datum(), bound=16)
    pd = principal_data(spine)
    with pytest.raises(NotKacMoody):
        is_imaginary(pd, spine, (1, 1, 1, 0))


def test_descent_uniqueness_under_weyl():
    rng = random.Random(7)
    for builder in (even_affine_datum, lambda: q_datum(1, 1, 2)):
        spine = _spine(builder())
        pd = principal_data(spine)
        elems = weyl_generate(pd, 5)
        n = pd.n
        tried = 0
        for _ in range(200):
            mu = tuple(rng.randrange(0, 5) for _ in range(n))
            if not totally_positive(pd, spine, mu):
                continue
            tried += 1
            _, mu0 = descend_to_dominant(pd, mu)
            w = elems[rng.randrange(len(elems))]
            out = descend_to_dominant(pd, w.apply(mu))
            assert out is not NOT_IN_POSITIVE_CONE
            assert out[1].coords == mu0.coords
        assert tried > 10


# ---------------------------------------------------------------------------
# classification


def test_classify_a10():
    spine = _spine(a10_datum())
    pd = principal_data(spine)
    out = classify_component(pd, spine)
    assert out["type"] == "Fin" and out["parity_type"] == "I"


def test_classify_b11():
    spine = _spine(b11_datum())
    pd = principal_data(spine)
    out = classify_component(pd, spine)
    assert out["type"] == "Fin" and out["parity_type"] == "II"
    assert out["q0_quotient"] == "Z_2"


def test_classify_c2_is_type_one():
    spine = _spine(c2_datum())
    pd = principal_data(spine)
    out = classify_component(pd, spine)
    assert out["type"] == "Fin" and out["parity_type"] == "I"


def test_classify_q112():
    spine = _spine(q_datum(1, 1, 2))
    pd = principal_data(spine)
    out = classify_component(pd, spine)
    assert out["type"] == "Ind" and out["parity_type"] == "II"


def test_classify_purely_even_affine():
    spine = _spine(even_affine_datum())
    pd = principal_data(spine)
    out = classify_component(pd, spine)
    assert out["type"] == "Aff" and out["parity_type"] == "II"
    assert out["q0_quotient"] == "1"


def test_q112_isotropic_orbit_is_w_of_simples():
    datum = q_datum(1, 1, 2)
    spine = _spine(datum)
    pd = principal_data(spine)
    groups = real_roots(pd, spine, 6)
    from superroots.roots import _weyl_orbit

    seeds = []
    for i in range(3):
        coords = tuple(1 if j == i else 0 for j in range(3))
        seeds.append(RootVector.from_coords(coords, pd.base_parity))
    seeds += [-s for s in seeds]
    assert _coords(groups["isotropic"]) == _coords(_weyl_orbit(pd, seeds, 6))


# ---------------------------------------------------------------------------
# S-principal elements


def test_pi_s_equals_pi_on_kac_moody():
    for builder in (a10_datum, b11_datum, c2_datum, lambda: q_datum(1, 1, 2)):
        spine = _spine(builder())
        pd = principal_data(spine)
        elements, saturated = pi_S_enumerate(spine)
        assert saturated
        assert _coords(elements) == _coords(pd.pi)


def test_pi_s_type_one_check_runs():
    spine = _spine(a10_datum())
    elements, _ = pi_S_enumerate(spine, parity_type="I")
    assert _coords(elements) == {(1, 0)}


def test_pi_s_includes_nonreflectable_even_roots():
    spine = _spine(nr4_datum(), bound=12)
    elements, saturated = pi_S_enumerate(spine)
    assert not saturated
    assert (0, 0, 0, 1) in _coords(elements)  # the non-reflectable even simple
    assert (1, 0, 0, 0) in _coords(elements)


# ---------------------------------------------------------------------------
# root bases and positive systems


def test_root_bases_a10():
    spine = _spine(a10_datum())
    pd = principal_data(spine)
    delta = enumerate_finite_system(pd, spine)
    assert len(delta) == 6
    bases = root_bases(delta)
    assert len(bases) == 6
    skel = _skeleton(a10_datum())
    sigma_sets = {frozenset(tuple(row) for row in u.c_b) for u in skel.vertices}
    base_sets = {frozenset(r.coords for r in b) for b in bases}
    assert base_sets == sigma_sets
    assert len(skel) == 6


def test_root_bases_c2():
    spine = _spine(c2_datum())
    pd = principal_data(spine)
    delta = enumerate_finite_system(pd, spine)
    bases = root_bases(delta)
    skel = _skeleton(c2_datum())
    assert len(bases) == 6 == len(skel)
    sigma_sets = {frozenset(tuple(row) for row in u.c_b) for u in skel.vertices}
    assert {frozenset(r.coords for r in b) for b in bases} == sigma_sets


def test_root_bases_b11_includes_doubles():
    spine = _spine(b11_datum())
    pd = principal_data(spine)
    delta = enumerate_finite_system(pd, spine)
    assert (0, 2) in _coords(delta)  # double of the odd anisotropic root
    # +-{(1,0), (1,2)} isotropic, +-(0,1) odd anisotropic with its double
    # +-(0,2), and +-(1,1) which is even (parity 1+1): ten roots in all
    assert len(delta) == 10
    bases = root_bases(delta)
    skel = _skeleton(b11_datum())
    sigma_sets = {frozenset(tuple(row) for row in u.c_b) for u in skel.vertices}
    assert {frozenset(r.coords for r in b) for b in bases} == sigma_sets
    assert len(bases) == len(sigma_sets) == 8


def test_enumerate_finite_system_rejects_affine():
    spine = _spine(even_affine_datum())
    pd = principal_data(spine)
    with pytest.raises(InfiniteSystem):
        enumerate_finite_system(pd, spine)


def test_positive_system_splits():
    spine = _spine(a10_datum())
    pd = principal_data(spine)
    delta = enumerate_finite_system(pd, spine)
    positive, tilde = positive_system(delta, (1, 1))
    assert _coords(positive) == {(1, 0), (0, 1), (1, 1)}
    assert _coords(tilde) == {(1, 0), (0, 1)}
    # a functional negative on the isotropic simple root picks out the
    # simple roots of a different skeleton vertex
    positive, tilde = positive_system(delta, (2, -1))
    assert _coords(tilde) == {(1, 1), (0, -1)}


def test_positive_system_rejects_nongeneric():
    from superroots.errors import InvalidParameters

    spine = _spine(a10_datum())
    pd = principal_data(spine)
    delta = enumerate_finite_system(pd, spine)
    with pytest.raises(InvalidParameters):
        positive_system(delta, (1, 0))


def test_is_root_basis_finite():
    spine = _spine(a10_datum())
    pd = principal_data(spine)
    par = pd.base_parity
    good = [RootVector.from_coords((1, 0), par), RootVector.from_coords((0, 1), par)]
    assert is_root_basis(good, pd, spine, 10) == YES
    bad = [RootVector.from_coords((1, 0), par), RootVector.from_coords((1, 2), par)]
    assert is_root_basis(bad, pd, spine, 10) == NO


def test_is_root_basis_affine_certificate():
    spine = _spine(even_affine_datum())
    pd = principal_data(spine)
    par = pd.base_parity
    sigma = [RootVector.from_coords((1, 0), par), RootVector.from_coords((0, 1), par)]
    assert is_root_basis(sigma, pd, spine, 20) == YES
    minus = [-r for r in sigma]
    assert is_root_basis(minus, pd, spine, 20) == YES
    mixed = [RootVector.from_coords((1, 1), par), RootVector.from_coords((1, 0), par)]
    assert is_root_basis(mixed, pd, spine, 20) == NO


# ---------------------------------------------------------------------------
# structural cross-checks deferred from the graph layer


def _positive_half(delta, vertex):
    """Roots whose coefficients on the vertex's simple roots are >= 0."""
    from superroots.roots import _solve_on_basis
    from superroots import QQ

    basis = [RootVector.from_coords(row, tuple(0 for _ in row)) for row in vertex.c_b]
    out = set()
    for r in delta:
        sol = _solve_on_basis(QQ, basis, r.coords)
        if sol is not None and all(c >= 0 for c in sol):
            out.add(r.coords)
    return out


@pytest.mark.parametrize("builder", [a10_datum, b11_datum, c2_datum])
def test_reflexion_swaps_one_simple_root_in_delta_plus(builder):
    datum = builder()
    skel = _skeleton(datum)
    spine = _spine(datum)
    pd = principal_data(spine)
    delta = enumerate_finite_system(pd, spine)
    halves = [_positive_half(delta, u) for u in skel.vertices]
    from superroots.groupoid import is_isotropic

    for i, j, mark in skel.edges:
        u = skel.vertices[i]
        alpha = tuple(u.c_b[mark])
        swapped = {alpha}
        if not is_isotropic(u.cartan, mark) and u.cartan.p(mark) == 1:
            doubled = tuple(2 * c for c in alpha)
            if doubled in halves[i]:
                swapped.add(doubled)
        expected = (halves[i] - swapped) | {tuple(-c for c in s) for s in swapped}
        assert halves[j] == expected


@pytest.mark.parametrize("builder", [a10_datum, b11_datum])
def test_skeleton_factors_as_weyl_times_spine(builder):
    datum = builder()
    skel = _skeleton(datum)
    spine = _spine(datum)
    pd = principal_data(spine)
    elems = _weyl_closure(pd)
    assert len(skel) == len(elems) * len(spine)
    for u in skel.vertices:
        matches = 0
        for w in elems:
            for s in spine.vertices:
                image = tuple(tuple(w.apply(row)) for row in s.c_b)
                if image == u.c_b:
                    matches += 1
        assert matches == 1


def test_component_report_shape():
    spine = _spine(q_datum(1, 1, 2))
    pd = principal_data(spine)
    out = classify_component(pd, spine)
    report = pd.report(out)
    assert set(report) == {"sigma_pr", "pi", "b_pi", "saturated", "type", "parity_type"}
    assert report["type"] == "Ind"
