import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from laxorth.awfs import (
    AlgebraStruct,
    CoalgebraStruct,
    IdentitySystem,
    PerturbedSystem,
    canonical_filler,
    check_comonad_laws,
    check_distributive_law,
    check_functorial_factorization,
    check_monad_laws,
    compose_algebras,
    free_algebra,
    get_handle,
    is_idempotent_pair,
    iter_algebras,
    iter_coalgebras,
    pullback_algebra,
    registered,
    validate_algebra,
)
from laxorth.coropf import COROPF, split_opfib_structure
from laxorth.errors import NotAPullback
from laxorth.fincat import (
    cat,
    constant_functor,
    default_corpus,
    enumerate_functors,
    fibre,
    identity_functor,
    make_functor,
    point,
    to_terminal,
)
from laxorth.lifting import Square, all_fillers, squares_between
from laxorth.simple import INIT, reflection_handle, transferred_system

CORPUS = default_corpus()
FIVE = [CORPUS[i] for i in (14, 25, 30, 38, 52)]


def _endo_squares(fs):
    return [sq for f in fs for sq in squares_between(f, f)]


# ---------- functorial factorisation ----------


def test_coropf_factorization_on_five_functors():
    rep = check_functorial_factorization(COROPF, _endo_squares(FIVE))
    assert rep.ok, rep.failed_names()
    assert len(rep.checks) > 100


def test_constant_k_mutant_fails_composites():
    # constant away from identity squares, so only composites can notice
    def const(f, g, h, k, m):
        if h.is_identity() and k.is_identity():
            return m
        return constant_functor(m.source, COROPF.factor(g).K, 0)

    bad = PerturbedSystem(COROPF, on_square=const)
    rep = check_functorial_factorization(bad, _endo_squares(FIVE), cells=False)
    assert "K preserves composites" in rep.failed_names()
    assert "K preserves identities" not in rep.failed_names()


def test_identity_factorization_passes():
    S = IdentitySystem()
    assert check_functorial_factorization(S, _endo_squares(FIVE)).ok
    for f in FIVE:
        assert check_comonad_laws(S, f).ok and check_monad_laws(S, f).ok
        assert check_distributive_law(S, f).ok


# ---------- comonad and monad laws ----------


def test_comonad_laws_at_zero(pick0):
    rep = check_comonad_laws(COROPF, pick0)
    assert rep.ok and len(rep.checks) == 4


def test_wrong_comultiplication_names_the_counit(pick0):
    bad = PerturbedSystem(COROPF, sigma=lambda fm, s: COROPF.factor(fm.L).L @ fm.q)
    rep = check_comonad_laws(bad, pick0)
    assert "counit: K(1,Rf)∘σ_f = 1" in rep.failed_names()


def test_comonad_laws_on_identity(two):
    rep = check_comonad_laws(COROPF, identity_functor(two))
    assert rep.ok


def test_monad_laws(bang2):
    assert check_monad_laws(COROPF, bang2).ok
    S = transferred_system(INIT)
    [e] = enumerate_functors(cat("empty"), cat("1"))
    assert check_monad_laws(S, e).ok


def test_wrong_projection_fails_unit(pick0):
    bad = PerturbedSystem(COROPF, pi=lambda fm, p: fm.L @ fm.q @ COROPF.factor(fm.R).q)
    rep = check_monad_laws(bad, pick0)
    assert "unit: π_f∘L(Rf) = 1" in rep.failed_names()


def test_distributive_law_on_both_systems():
    for S in (COROPF, transferred_system(INIT)):
        for f in CORPUS[:40]:
            assert check_distributive_law(S, f).ok, (S.name, f.label())


def test_twisted_comultiplication_breaks_the_left_square():
    f = next(f for f in CORPUS if f.label() == "1→Z2#0")
    K = COROPF.factor(COROPF.factor(f).L).K
    tau = next(a for a in enumerate_functors(K, K) if a.is_isomorphism() and not a.is_identity())
    bad = PerturbedSystem(COROPF, sigma=lambda fm, s: tau @ s if fm.f == f else s)
    failed = check_distributive_law(bad, f).failed_names()
    assert "left square (domain): K(1,σ_f)∘σ_f = σ_{Lf}∘σ_f" in failed


# ---------- canonical fillers ----------


def _coalg(f):
    return next(iter_coalgebras(COROPF, f))


def test_canonical_filler_is_const_zero(two, pick0, bang2):
    co = _coalg(pick0)
    alg = split_opfib_structure(bang2)
    for sq in squares_between(pick0, bang2):
        d = canonical_filler(COROPF, co, alg, sq).diagonal
        assert d in [F.diagonal for F in all_fillers(sq)]
        if sq.top == pick0:
            assert d.obj == (0, 0)


def test_canonical_filler_identity_square(pick0):
    co = _coalg(pick0)
    alg = free_algebra(COROPF, pick0)
    fm = COROPF.factor(pick0)
    sq = Square(pick0, fm.R, fm.L, identity_functor(pick0.target))
    F = canonical_filler(COROPF, co, alg, sq)
    assert F.diagonal @ pick0 == fm.L


def test_canonical_filler_into_isomorphism():
    iso = cat("iso")
    g = make_functor(iso, iso, {"0": "1", "1": "0"}, {"u": "v", "v": "u"})
    f = point(iso, 0)
    co = _coalg(f)
    alg = split_opfib_structure(g)
    for sq in squares_between(f, g):
        assert canonical_filler(COROPF, co, alg, sq).diagonal == g.inverse() @ sq.bottom


# ---------- composing and pulling back algebras ----------


def test_compose_with_identity_algebra(bang2, two):
    one = identity_functor(bang2.target)
    a = split_opfib_structure(bang2)
    b = split_opfib_structure(one)
    c = compose_algebras(COROPF, a, b)
    assert c.carrier == bang2 and c.structure == a.structure
    ident = split_opfib_structure(identity_functor(two))
    assert compose_algebras(COROPF, ident, ident) == ident


def test_compose_two_split_opfibrations():
    f = make_functor(cat("2+1"), cat("2"), {"0": "0", "1": "1", "c": "1"})
    a = split_opfib_structure(f)
    b = split_opfib_structure(to_terminal(cat("2")))
    assert a is not None and b is not None
    c = compose_algebras(COROPF, a, b)
    assert validate_algebra(COROPF, c).ok


def test_pullback_along_identity(bang2, two):
    a = split_opfib_structure(bang2)
    sq = Square(bang2, bang2, identity_functor(two), identity_functor(bang2.target))
    assert pullback_algebra(COROPF, a, sq) == a


def test_pullback_to_a_fibre():
    g = make_functor(cat("2+1"), cat("2"), {"0": "0", "1": "1", "c": "1"})
    alg = split_opfib_structure(g)
    F, inc = fibre(g, 1)
    b = point(cat("2"), 1)
    f = to_terminal(F)
    out = pullback_algebra(COROPF, alg, Square(f, g, inc, b))
    assert validate_algebra(COROPF, out).ok
    assert F.n_objects == 2


def test_non_pullback_square(bang2, two):
    a = split_opfib_structure(bang2)
    c0 = constant_functor(two, two, 0)
    with pytest.raises(NotAPullback):
        pullback_algebra(COROPF, a, Square(bang2, bang2, c0, identity_functor(bang2.target)))


# ---------- idempotence ----------


def test_identity_system_is_idempotent():
    res = is_idempotent_pair(IdentitySystem(), FIVE)
    assert res.flags == (True, True) and res.orthogonal


def test_coropf_is_not_idempotent():
    fs = [f for f in CORPUS if "2" in (f.source.name, f.target.name)][:12]
    res = is_idempotent_pair(COROPF, fs)
    assert res.flags == (False, False)
    assert not res.orthogonal and res.consistent
    witness = next(f for f in fs if f.label() == res.sigma_witness)
    assert not COROPF.factor(witness).sigma.is_isomorphism()


def test_reflection_system_is_idempotent():
    S = reflection_handle("chain")
    res = is_idempotent_pair(S, S.corpus())
    assert res.flags == (True, True) and res.orthogonal


def test_registry():
    assert {"coropf", "init-completion"} <= set(registered())
    assert get_handle("coropf") is COROPF
    with pytest.raises(KeyError):
        get_handle("nope")


# ---------- properties ----------


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS))
def test_factorization_recovers_f(f):
    fm = COROPF.factor(f)
    assert fm.R @ fm.L == f
    # objects of Kf are exactly the comma triples
    assert fm.K.n_objects == len(oracle.comma_triples(f, identity_functor(f.target)))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CORPUS[:120]))
def test_free_algebra_and_cofree_coalgebra_are_valid(f):
    fm = COROPF.factor(f)
    assert validate_algebra(COROPF, AlgebraStruct(fm.R, fm.pi)).ok
    from laxorth.awfs import validate_coalgebra

    assert validate_coalgebra(COROPF, CoalgebraStruct(fm.L, fm.sigma)).ok


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CORPUS[:120]))
def test_every_algebra_makes_its_structure_a_filler(f):
    for alg in iter_algebras(COROPF, f):
        fm = COROPF.factor(f)
        sq = Square(fm.L, f, identity_functor(f.source), fm.R)
        assert alg.structure in [F.diagonal for F in all_fillers(sq)]
