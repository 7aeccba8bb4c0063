import pytest
from hypothesis import given, settings, strategies as st

from stokesdata import linalg
from stokesdata.cech import (CechDatum, CohomologyPresentation, Incidence, MonodromyRep, apply,
                             change_of_basis, d0_matrix, d1_matrix, flat_two_cell, h1, is_complex,
                             random_rep, reduce_mod_image, refinement_map)
from stokesdata.errors import (BasisNotTransverse, InconsistentSystem, MalformedDatum, NotABasis,
                               NotInvertible, PivotNotUnit)
from stokesdata.example_stokes import bundle
from stokesdata.ring import GroupWord, RingElement

R = RingElement.parse
SYM = MonodromyRep.symbolic()


def fine():
    return bundle().fine


def basis_images():
    return bundle().at_pi.images()


def test_no_zero_cells_means_h1_is_c1():
    d = CechDatum([], [("a", 1), ("b", 1)], [], basis_cells=[("a", 0), ("b", 0)])
    assert d0_matrix(d) == [[], []]
    pres = h1(d, random_rep(2, 0))
    assert pres.dim == 4


def test_empty_datum():
    d = CechDatum([], [], [])
    assert h1(d, random_rep(1, 0)).dim == 0


def test_single_column():
    d = CechDatum(["z"], [("e", 2)], [Incidence(("e", 0), "z", 1), Incidence(("e", 1), "z", -1, GroupWord.parse("S"))])
    assert d0_matrix(d) == [[R("1")], [R("-S")]]


def test_fine_datum_shape():
    d = fine()
    D0 = d0_matrix(d)
    assert len(D0) == 22 and all(len(row) == 5 for row in D0)
    assert is_complex(d)
    for r in (1, 2, 3):
        rep = random_rep(r, 11 + r)
        assert linalg.rank(d0_matrix(d, rep)) == 5 * r
        assert h1(d, rep).dim == 2 * r


def test_malformed_data():
    with pytest.raises(MalformedDatum):
        CechDatum(["z"], [("e", 1)], [Incidence(("e", 3), "z", 1)]).validate()
    with pytest.raises(MalformedDatum):
        CechDatum([], [("e", 0)], []).validate()


def test_flat_two_cell_detects_holonomy():
    # two faces meeting both zero cells, with transports that disagree by S
    inc = [Incidence(("a", 0), 1, -1), Incidence(("a", 0), 2, 1),
           Incidence(("b", 0), 1, -1), Incidence(("b", 0), 2, 1, GroupWord.parse("S"))]
    d = CechDatum([1, 2], [("a", 1), ("b", 1)], inc)
    with pytest.raises(MalformedDatum):
        flat_two_cell(d, "t", [("a", 0), ("b", 0)])
    inc[3] = Incidence(("b", 0), 2, 1)
    d = CechDatum([1, 2], [("a", 1), ("b", 1)], inc)
    tc = flat_two_cell(d, "t", [("a", 0), ("b", 0)])
    d.two_cells = [tc]
    assert is_complex(d)


def test_reduce_trivial_cases():
    a, at = basis_images()
    pres = h1(fine(), SYM, basis=a)
    assert reduce_mod_image(pres, a[0]) == [R("1"), R("0")]
    col = [row[2] for row in d0_matrix(fine())]
    assert reduce_mod_image(pres, col) == [R("0"), R("0")]


def test_target_reduction():
    a, at = basis_images()
    pres = h1(fine(), SYM, basis=a)
    assert reduce_mod_image(pres, at[0]) == [R("-1"), R("1 - S·T^-1")]
    assert reduce_mod_image(pres, at[1]) == [R("0"), R("-S·T^-1")]


def test_pivot_not_unit():
    d = CechDatum(["z"], [("e", 1)], [Incidence(("e", 0), "z", 1), Incidence(("e", 0), "z", 1, GroupWord.parse("S"))])
    pres = h1(d, SYM, basis=[])
    with pytest.raises(PivotNotUnit):
        reduce_mod_image(pres, [R("1 + S")])


def test_inconsistent_system_matrix_backend():
    d = CechDatum(["z"], [("e", 2)], [Incidence(("e", 0), "z", 1), Incidence(("e", 1), "z", 1)])
    rep = random_rep(1, 0)
    pres = CohomologyPresentation(d, rep, d0_matrix(d), d1_matrix(d), [])
    with pytest.raises(InconsistentSystem):
        reduce_mod_image(pres, [R("1"), R("0")])


def test_basis_not_transverse():
    col = [row[0] for row in d0_matrix(fine())]
    a, _ = basis_images()
    with pytest.raises(BasisNotTransverse):
        h1(fine(), random_rep(2, 1), basis=[a[0], col])


def test_singular_generator_rejected():
    with pytest.raises(NotInvertible):
        MonodromyRep.from_matrices(S=[[1, 2], [2, 4]])


def test_refinement_examples():
    coarse = CechDatum([], [("x", 1), ("y", 1)], [])
    ident = refinement_map(coarse, coarse, {("x", 0): (("x", 0), GroupWord()), ("y", 0): (("y", 0), GroupWord())})
    assert ident([R("S"), R("2")]) == [R("S"), R("2")]
    twist = refinement_map(coarse, coarse, {("x", 0): (("x", 0), GroupWord.parse("S")),
                                            ("y", 0): (("y", 0), GroupWord())})
    assert twist([R("T"), R("1")]) == [R("S·T"), R("1")]
    with pytest.raises(MalformedDatum):
        refinement_map(coarse, coarse, {("x", 0): (("x", 0), GroupWord())})


def test_change_of_basis_identity_and_errors():
    a, _ = basis_images()
    assert change_of_basis(fine(), SYM, a, a) == [[R("1"), R("0")], [R("0"), R("1")]]
    N = change_of_basis(fine(), random_rep(2, 3), a, a)
    assert linalg.equal(N, linalg.eye(4))
    with pytest.raises(NotABasis):
        change_of_basis(fine(), random_rep(2, 3), a, [a[0], a[0]])


def test_sign_flip_leaves_n_unchanged():
    a, at = basis_images()
    flipped = fine().with_flipped_signs()
    assert is_complex(flipped)
    assert change_of_basis(flipped, SYM, a, at) == change_of_basis(fine(), SYM, a, at)
    rep = random_rep(2, 5)
    assert h1(flipped, rep).dim == h1(fine(), rep).dim


short_words = st.builds(GroupWord, st.lists(st.tuples(st.sampled_from("ST"), st.sampled_from([1, -1])), max_size=2))
coeffs = st.builds(lambda ts: RingElement({w: c for w, c in ts}),
                   st.lists(st.tuples(short_words, st.integers(-2, 2)), max_size=2))


def _combo(a, c, x):
    D0 = d0_matrix(fine())
    im = apply(D0, x)
    return [a[0][i] * c[0] + a[1][i] * c[1] + im[i] for i in range(len(im))]


@settings(max_examples=30)
@given(st.lists(coeffs, min_size=2, max_size=2), st.lists(coeffs, min_size=5, max_size=5),
       st.integers(1, 3), st.integers(0, 10 ** 6))
def test_reduce_recovers_coefficients_in_both_backends(c, x, r, seed):
    a, _ = basis_images()
    cocycle = _combo(a, c, x)
    sym = reduce_mod_image(h1(fine(), SYM, basis=a), cocycle)
    assert sym == c
    rep = random_rep(r, seed)
    num = reduce_mod_image(h1(fine(), rep, basis=a), cocycle)
    for s, n in zip(sym, num):
        assert linalg.equal(rep.evaluate(s), n)


@settings(max_examples=30)
@given(st.lists(coeffs, min_size=2, max_size=2), st.lists(coeffs, min_size=2, max_size=2),
       st.lists(coeffs, min_size=5, max_size=5))
def test_reduce_linear_and_idempotent(c1, c2, x):
    a, _ = basis_images()
    pres = h1(fine(), SYM, basis=a)
    u = _combo(a, c1, x)
    w = _combo(a, c2, [RingElement.zero()] * 5)
    ru, rw = reduce_mod_image(pres, u), reduce_mod_image(pres, w)
    assert reduce_mod_image(pres, [p + q for p, q in zip(u, w)]) == [p + q for p, q in zip(ru, rw)]
    # reducing the reduced representative gives it back
    rep_u = [a[0][i] * ru[0] + a[1][i] * ru[1] for i in range(len(u))]
    assert reduce_mod_image(pres, rep_u) == ru


@st.composite
def random_data(draw):
    nz = draw(st.integers(0, 3))
    zeros = list(range(nz))
    ones = [(f"e{i}", draw(st.integers(1, 2))) for i in range(draw(st.integers(1, 4)))]
    inc = []
    for cid, k in ones:
        for c in range(k):
            for z in draw(st.lists(st.sampled_from(zeros), max_size=2, unique=True)) if zeros else []:
                inc.append(Incidence((cid, c), z, draw(st.sampled_from([1, -1])), draw(short_words)))
    return CechDatum(zeros, ones, inc)


@settings(max_examples=40)
@given(random_data(), st.integers(1, 3), st.integers(0, 10 ** 6))
def test_d0_backends_agree_and_dimension_formula(d, r, seed):
    rep = random_rep(r, seed)
    D0 = d0_matrix(d, rep)
    sym = d0_matrix(d)
    if d.zero_cells:
        assert linalg.equal(rep.evaluate_matrix(sym), D0)
    assert h1(d, rep).dim == len(d.copies) * r - linalg.rank(D0)
