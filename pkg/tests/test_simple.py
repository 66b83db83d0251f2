import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from laxorth.awfs import AlgebraStruct, iter_algebras, iter_coalgebras, free_algebra
from laxorth.errors import AlgebraInvalid, BundleInvalid, NotSimple
from laxorth.fincat import (
    build_category,
    cat,
    constant_functor,
    default_corpus,
    enumerate_functors,
    make_functor,
    to_terminal,
)
from laxorth.simple import (
    INIT,
    CorruptedMultMonad,
    OpfibColimBundle,
    TruncatedDeltaEmptyMonad,
    algebra_corpus,
    bundled_instance,
    check_fibre_algebra_morphisms,
    check_fibre_law,
    check_simplicity_witness,
    check_terminal_factor,
    chain,
    delta_empty_counterexample,
    f_embedding_agreement,
    f_embedding_check,
    init_completion,
    is_simple_reflection,
    iter_poset_reflections,
    named_reflections,
    opfib_colim_to_ralg,
    simple_coreflective_report,
    ralg_to_opfib_colim,
    reflect_onto,
    round_trip_report,
    simple_reflection_factor,
    slice_initial_uniqueness,
    split_retract_category,
    t_iso_coreflective,
    transferred_factor,
    transferred_system,
    validate_bundle,
)
from laxorth.simple.reflection import find_non_simple

CORPUS = default_corpus()
S = transferred_system(INIT)


# ---------- the completion ----------


def test_completion_adds_a_bottom():
    assert init_completion(cat("empty")).objects == ("⊥",)
    T1 = init_completion(cat("1"))
    assert T1.n_objects == 2 and T1.is_initial(0)
    T2 = init_completion(cat("2"))
    assert T2.objects == ("⊥", "0", "1") and T2.n_arrows == 3 + 1 + 2


def test_completion_of_a_monoid():
    TZ = init_completion(cat("Z2"))
    assert TZ.n_objects == 2 and TZ.n_arrows == 4
    assert TZ.hom(0, 1) == (INIT.bottom_arrow(cat("Z2"), 0),)


def test_multiplication_collapses_the_outer_bottom():
    A = cat("2")
    m = INIT.mult(A)
    assert m.obj == (0, 0, 1, 2)
    assert m @ INIT.unit(INIT.apply(A)) == m @ INIT.on_functor(INIT.unit(A))


def test_truncated_completion_levels():
    M = TruncatedDeltaEmptyMonad(2)
    A = cat("1")
    TA = M.apply(A)
    assert TA.objects == ("(*,0)", "(*,1)", "(*,2)")
    assert [M.level(A, x) for x in range(3)] == [(0, 0), (0, 1), (0, 2)]
    # depths add and cap at N
    TTA = M.apply(TA)
    m = M.mult(A)
    top = M.index(TA, M.index(A, 0, 2), 2)
    assert m.obj[top] == M.index(A, 0, 2)
    assert TTA.n_objects == 9
    with pytest.raises(ValueError):
        TruncatedDeltaEmptyMonad(0)


# ---------- the transferred factorisation ----------


def test_factor_of_zero(pick0):
    fm = transferred_factor(INIT, pick0)
    Tf = INIT.on_functor(pick0)
    assert fm.K.n_objects == len(oracle.comma_triples(Tf, INIT.unit(pick0.target))) == 4
    assert fm.R @ fm.L == pick0


def test_factor_of_empty_into_point():
    [e] = enumerate_functors(cat("empty"), cat("1"))
    fm = transferred_factor(INIT, e)
    # the only object is (⊥, !, ∗)
    assert fm.K.n_objects == 1 and fm.R.is_isomorphism()


@pytest.mark.parametrize("name", ["empty", "1", "2", "Z2", "idem", "span", "1+1"])
def test_terminal_factor_is_the_completion(name):
    rep = check_terminal_factor(INIT, cat(name))
    assert rep.ok, rep.failed_names()


def test_fibres_are_completed_slices():
    fs = [f for f in CORPUS if f.source.n_objects > 0][:12]
    for f in fs:
        rep = check_fibre_law(f)
        assert rep.ok, (f.label(), rep.failed_names())
        assert check_fibre_algebra_morphisms(f).ok


# ---------- simplicity ----------


def test_simplicity_witness_at_zero(pick0):
    w = check_simplicity_witness(INIT, pick0)
    assert w is not None
    assert w.unit.is_identity()
    assert w.right @ w.left == w.unit.source


def test_simplicity_witness_from_empty():
    [e] = enumerate_functors(cat("empty"), cat("2"))
    assert check_simplicity_witness(INIT, e) is not None


def test_corrupted_multiplication_has_no_witness(pick0):
    bad = CorruptedMultMonad()
    assert check_simplicity_witness(bad, pick0) is None
    assert check_simplicity_witness(bad, to_terminal(cat("2"))) is None


def test_f_embeddings_are_coalgebras():
    rep = f_embedding_agreement(INIT, CORPUS[:40])
    assert rep.ok, rep.failed_names()


@pytest.mark.parametrize("which", ["pick0", "pick1"])
def test_points_of_the_interval_are_embeddings(which, request):
    f = request.getfixturevalue(which)
    r, alpha = f_embedding_check(INIT, f)
    assert (r @ INIT.on_functor(f)).is_identity()
    assert next(iter_coalgebras(S, f), None) is not None


def test_pick1_retracts_through_the_bottom(pick1):
    # 0 has nowhere to go in 1, so r sends it to ⊥
    r, alpha = f_embedding_check(INIT, pick1)
    assert r.obj == (0, 0, 1)


def test_non_embedding(bang2):
    assert f_embedding_check(INIT, bang2) is None
    assert next(iter_coalgebras(S, bang2), None) is None


# ---------- reflections ----------


def test_named_reflections_are_simple_and_coreflective():
    for name, M in named_reflections().items():
        assert M.law_report().ok
        assert is_simple_reflection(M).ok, name
        assert t_iso_coreflective(M).ok, name


def test_reflection_onto_the_top():
    M = reflect_onto(chain(3), [2])
    assert M.T.obj == (2, 2, 2)
    assert len(M.inverted) == 6
    assert reflect_onto(chain(3), []) is None


def test_simple_reflection_factor():
    M = named_reflections()["chain-upper"]
    C = M.base
    f = C.aid("0<=1")
    fm = simple_reflection_factor(M, f)
    assert fm.L.index in M.inverted


def test_split_retract_is_not_simple():
    found = find_non_simple([split_retract_category()])
    assert found is not None
    M, arrow = found
    assert arrow == "f"
    assert not is_simple_reflection(M).ok
    with pytest.raises(NotSimple):
        simple_reflection_factor(M, M.base.aid("f"))


def test_simple_agrees_with_coreflective_on_small_posets():
    rep = simple_coreflective_report(iter_poset_reflections(3))
    assert rep.ok and len(rep.checks) == 17
    assert rep.facts["unsupported"] == []


# ---------- split opfibrations with fibre initials ----------


def test_round_trip_on_point_algebras():
    algs = algebra_corpus(CORPUS[:30])
    assert algs
    rep = round_trip_report(algs)
    assert rep.ok, rep.failed_names()


def test_free_algebra_bundle(pick0):
    bd = ralg_to_opfib_colim(free_algebra(S, pick0))
    assert bd.report.ok
    assert validate_bundle(bd).ok
    assert slice_initial_uniqueness(pick0).ok


def _y_iso_z():
    return build_category(
        "x+y≅z",
        ["x", "y", "z"],
        [("i", "y", "z"), ("j", "z", "y"), ("a", "x", "y"), ("b", "x", "z")],
        {("i", "a"): "b", ("j", "b"): "a", ("j", "i"): "id_y", ("i", "j"): "id_z"},
    )


def test_pushforward_must_hit_the_chosen_initial():
    A = _y_iso_z()
    two = cat("2")
    g = make_functor(A, two, {"x": "0", "y": "1", "z": "1"}, {"i": "id_1", "j": "id_1", "a": "u", "b": "u"})
    u = two.aid("u")
    cl = {
        (A.oid("x"), two.ident[0]): A.ident[A.oid("x")],
        (A.oid("x"), u): A.aid("b"),
        (A.oid("y"), two.ident[1]): A.ident[A.oid("y")],
        (A.oid("z"), two.ident[1]): A.ident[A.oid("z")],
    }
    bad = OpfibColimBundle(g, cl, (A.oid("x"), A.oid("y")))
    assert validate_bundle(bad).failed_names() == ["pushforward preserves the chosen initial"]
    with pytest.raises(BundleInvalid):
        opfib_colim_to_ralg(bad)
    good = OpfibColimBundle(g, cl, (A.oid("x"), A.oid("z")))
    assert validate_bundle(good).ok
    alg = opfib_colim_to_ralg(good)
    assert ralg_to_opfib_colim(alg) == good


def test_non_algebra_is_rejected(bang2, two):
    fm = S.factor(bang2)
    wrong = constant_functor(fm.K, two, 1)
    with pytest.raises(AlgebraInvalid):
        ralg_to_opfib_colim(AlgebraStruct(bang2, wrong))


# ---------- the truncated counterexample ----------


def test_counterexample_at_depth_one():
    rep = delta_empty_counterexample(1, *bundled_instance())
    assert rep.ok
    assert rep.facts["result"] == "NONSURJECTIVE"
    [w] = rep.facts["witnesses"]
    assert w["form"] == "((a_dot,1),ξ)" and w["n"] == 1


def test_counterexample_at_depth_two():
    rep = delta_empty_counterexample(2, *bundled_instance())
    assert rep.facts["result"] == "NONSURJECTIVE"
    assert sorted(w["n"] for w in rep.facts["witnesses"]) == [1, 2]
    assert all(w["a"] == "a_dot" for w in rep.facts["witnesses"])


def test_empty_second_summand_is_surjective():
    A_star, _ = bundled_instance()
    rep = delta_empty_counterexample(1, A_star, cat("empty"))
    assert rep.ok and rep.facts["result"] == "SURJECTIVE"
    assert rep.facts["witnesses"] == []


# ---------- properties ----------


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS))
def test_simplicity_witness_everywhere(f):
    w = check_simplicity_witness(INIT, f)
    assert w is not None
    assert (w.right @ w.left).is_identity()


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([f for f in CORPUS if f.target.n_objects <= 2][:80]))
def test_algebras_round_trip(f):
    for alg in iter_algebras(S, f):
        bd = ralg_to_opfib_colim(alg)
        assert bd.report.ok
        assert opfib_colim_to_ralg(bd) == alg


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 3))
def test_counterexample_witness_count_is_the_depth(n):
    rep = delta_empty_counterexample(n, *bundled_instance())
    assert len(rep.facts["witnesses"]) == n
