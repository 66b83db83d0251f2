import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from laxorth.errors import ShapeMismatch, WitnessNotFound
from laxorth.fincat import (
    cat,
    constant_functor,
    default_corpus,
    discrete,
    enumerate_functors,
    identity_functor,
    make_functor,
    point,
    terminal,
    to_terminal,
)
from laxorth.lifting import (
    FamilyMorphism,
    LaxOrthAssignment,
    Square,
    all_fillers,
    check_kz_filler,
    is_lax_orthogonal,
    is_orthogonal,
    is_weakly_orthogonal,
    kz_fillers,
    kz_uniqueness_iso,
    orthogonality_witness,
    phi_from_assignments,
    pitchfork_membership,
    squares_between,
)


def _square(f, g, h, k=None):
    if k is None:
        [k] = [k for hh, k in ((s.top, s.bottom) for s in squares_between(f, g)) if hh == h]
    return Square(f, g, h, k)


def test_identity_square_has_one_filler(two):
    one = identity_functor(two)
    [F] = all_fillers(Square(one, one, one, one))
    assert F.diagonal.is_identity()


def test_non_commuting_square_rejected(two, pick0, bang2):
    with pytest.raises(ShapeMismatch):
        Square(pick0, pick0, pick0, constant_functor(two, two, 1))


def test_two_fillers_under_zero(two, pick0, bang2):
    sq = _square(pick0, bang2, pick0)
    got = sorted(F.diagonal.obj for F in all_fillers(sq))
    assert got == [(0, 0), (0, 1)]


def test_one_filler_under_one(two, pick1, bang2):
    sq = _square(pick1, bang2, point(two, 0))
    [F] = all_fillers(sq)
    assert F.diagonal.obj == (0, 0)


def test_filler_counts_match_brute_force(corpus):
    fs = [f for f in corpus if f.source.n_objects <= 2 and f.target.n_objects <= 2][:25]
    for f in fs:
        for g in fs:
            for sq in squares_between(f, g):
                n = len(oracle.filler_tables(f, g, sq.top, sq.bottom))
                assert len(all_fillers(sq)) == n


def test_squares_match_brute_force(corpus):
    fs = [f for f in corpus if f.source.n_objects <= 2 and f.target.n_objects <= 2][:25]
    for f in fs:
        for g in fs[:8]:
            got = sorted((s.top.obj, s.top.arr, s.bottom.obj, s.bottom.arr) for s in squares_between(f, g))
            want = sorted(h + k for h, k in oracle.square_tables(f, g))
            assert got == want


# ---------- orthogonality ----------


def test_isomorphism_is_orthogonal_to_itself():
    iso = cat("iso")
    swap = make_functor(iso, iso, {"0": "1", "1": "0"}, {"u": "v", "v": "u"})
    assert is_orthogonal(swap, swap)


def test_zero_not_orthogonal_to_bang(pick0, bang2):
    assert not is_orthogonal(pick0, bang2)
    w = orthogonality_witness(pick0, bang2)
    assert w["fillers"] == 2


def test_from_empty_against_brute_force(corpus):
    empty = cat("empty")
    from_empty = {f.target: f for f in corpus if f.source == empty}
    checked = 0
    for g in corpus[:60]:
        e = from_empty.get(g.target)
        if e is None:
            continue
        counts = [len(oracle.filler_tables(e, g, s.top, s.bottom)) for s in squares_between(e, g)]
        if is_orthogonal(e, g):
            assert counts == [1] * len(counts)
        assert is_weakly_orthogonal(e, g) == all(counts)
        checked += 1
    assert checked > 10


# ---------- KZ fillers ----------


def test_const_zero_is_the_kz_filler(two, pick0, bang2):
    sq = _square(pick0, bang2, pick0)
    by_obj = {F.diagonal.obj: F for F in all_fillers(sq)}
    assert check_kz_filler(sq, by_obj[(0, 0)])
    assert not check_kz_filler(sq, by_obj[(0, 1)])


def test_unique_filler_passes(two, pick1, bang2):
    sq = _square(pick1, bang2, point(two, 0))
    [F] = all_fillers(sq)
    assert check_kz_filler(sq, F)


def test_incomparable_fillers_both_fail():
    D = discrete("1+1", ["l", "r"])
    e = next(iter(enumerate_functors(cat("empty"), D)))
    g = to_terminal(D)
    [sq] = squares_between(e, g)
    fills = all_fillers(sq)
    assert len(fills) == 4
    assert kz_fillers(sq) == []


def test_kz_verdicts_agree_with_brute_force(corpus):
    fs = [f for f in corpus if f.source.n_objects <= 2 and f.target.n_objects <= 2][:15]
    for f in fs:
        for g in fs:
            for sq in squares_between(f, g):
                for F in all_fillers(sq):
                    d = (F.diagonal.obj, F.diagonal.arr)
                    assert check_kz_filler(sq, F) == oracle.is_kz_filler(f, g, sq.top, sq.bottom, d)


def test_lax_orthogonal_picks_const_zero(pick0, bang2):
    a = is_lax_orthogonal(pick0, bang2)
    assert a is not None
    assert a.diagonal(pick0, _square(pick0, bang2, pick0).bottom).obj == (0, 0)


def test_lax_orthogonal_one_against_oracle(pick1, bang2):
    assert (is_lax_orthogonal(pick1, bang2) is not None) == oracle.lax_orthogonal_exists(pick1, bang2)


def test_lax_orthogonal_isomorphism_forced_fillers():
    iso = cat("iso")
    swap = make_functor(iso, iso, {"0": "1", "1": "0"}, {"u": "v", "v": "u"})
    for g in enumerate_functors(iso, cat("2"))[:2] + [to_terminal(iso)]:
        a = is_lax_orthogonal(swap, g)
        assert a is not None
        for sq, F in a.fillers.items():
            assert F.diagonal == sq.top @ swap.inverse()


# ---------- uniqueness up to invertible cell ----------


def test_same_assignment_gives_identity_cells(pick0, bang2):
    a = is_lax_orthogonal(pick0, bang2)
    for cell in kz_uniqueness_iso(a, a).values():
        assert cell.cell.is_identity()


def test_isomorphic_kz_fillers_give_the_isomorphism():
    iso = cat("iso")
    e = next(iter(enumerate_functors(cat("empty"), terminal())))
    g = to_terminal(iso)
    [sq] = squares_between(e, g)
    fills = {F.diagonal.obj: F for F in all_fillers(sq)}
    assert set(fills) == {(0,), (1,)}
    assert all(check_kz_filler(sq, F) for F in fills.values())
    A = LaxOrthAssignment(e, g, {sq: fills[(0,)]})
    B = LaxOrthAssignment(e, g, {sq: fills[(1,)]})
    [c] = kz_uniqueness_iso(A, B).values()
    assert c.cell.comp == (iso.aid("u"),)


def test_non_kz_assignment_has_no_comparison(pick0, bang2):
    a = is_lax_orthogonal(pick0, bang2)
    sq = _square(pick0, bang2, pick0)
    other = next(F for F in all_fillers(sq) if F.diagonal.obj == (0, 1))
    b = LaxOrthAssignment(pick0, bang2, {**a.fillers, sq: other})
    with pytest.raises(WitnessNotFound):
        kz_uniqueness_iso(a, b)


# ---------- compatibility against a family ----------


def _family():
    D = cat("1+1")
    C = cat("2+1")
    f = make_functor(D, C, {"l": "0", "r": "c"})
    swap = make_functor(D, D, {"l": "r", "r": "l"})
    g = to_terminal(cat("2"))
    return f, f @ swap, swap, g


def test_singleton_family(pick0, bang2):
    a = is_lax_orthogonal(pick0, bang2)
    ok, bad = pitchfork_membership(bang2, {"f": pick0}, phi_from_assignments({"f": a}))
    assert ok and bad is None


def test_family_with_connecting_square():
    f, fe, e, g = _family()
    assign = {"f": is_lax_orthogonal(f, g), "fe": is_lax_orthogonal(fe, g)}
    m = FamilyMorphism("fe", "f", e, identity_functor(f.target))
    ok, bad = pitchfork_membership(g, {"f": f, "fe": fe}, phi_from_assignments(assign), [m])
    assert ok, bad


def test_perturbed_choice_is_reported():
    f, fe, e, g = _family()
    assign = {"f": is_lax_orthogonal(f, g), "fe": is_lax_orthogonal(fe, g)}
    base = phi_from_assignments(assign)
    target = next(sq for sq in squares_between(fe, g) if len(all_fillers(sq)) > 1)

    def phi(a, h, k):
        d = base(a, h, k)
        if a == "fe" and (h, k) == (target.top, target.bottom):
            return next(F.diagonal for F in all_fillers(target) if F.diagonal != d)
        return d

    m = FamilyMorphism("fe", "f", e, identity_functor(f.target))
    ok, bad = pitchfork_membership(g, {"f": f, "fe": fe}, phi, [m])
    assert not ok
    assert bad["a"] == "f" and bad["from"] == "fe"
    assert set(bad) >= {"h", "k"}


# ---------- properties ----------

_small = [f for f in default_corpus() if f.source.n_objects <= 2 and f.target.n_objects <= 2]


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(_small), st.sampled_from(_small))
def test_fillers_fill_and_kz_fillers_are_comparable(f, g):
    for sq in squares_between(f, g):
        fills = all_fillers(sq)
        for F in fills:
            assert F.diagonal @ f == sq.top and g @ F.diagonal == sq.bottom
        kz = kz_fillers(sq)
        if len(kz) > 1:
            a = LaxOrthAssignment(f, g, {sq: kz[0]})
            b = LaxOrthAssignment(f, g, {sq: kz[1]})
            [c] = kz_uniqueness_iso(a, b).values()
            assert c.cell.is_invertible()


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(_small), st.sampled_from(_small))
def test_orthogonal_implies_lax_orthogonal(f, g):
    if is_orthogonal(f, g):
        assert is_lax_orthogonal(f, g) is not None
