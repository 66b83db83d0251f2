"""Lax idempotence checks: adjunction witnesses searched exhaustively.

Every search continues past the first hit so that uniqueness of the witness
is asserted as well.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .awfs import (
    AlgebraStruct,
    CoalgebraStruct,
    FactorizationSystem,
    canonical_filler,
    iter_algebras,
    iter_coalgebras,
)
from .base import CatBase
from .errors import AlgebraInvalid, ShapeMismatch
from .fincat.core import AdjunctionData, Functor, NatTrans, identity_functor, identity_nat, post, pre, vcomp
from .fincat.enumerate import iter_nat_trans
from .lifting import (
    Filler,
    LaxOrthAssignment,
    Square,
    all_fillers,
    boundary_cells,
    check_kz_filler,
    is_lax_orthogonal,
    kz_uniqueness_iso,
    square_cells,
    squares_between,
)
from .report import Report
from .twomonad import TwoMonad


@dataclass
class KzWitness:
    subject: str
    adjunction: AdjunctionData
    modification_cells: dict[str, NatTrans] | None = None
    unique: bool = True

    def __post_init__(self):
        adj = self.adjunction
        if not (adj.is_retract or adj.is_coretract):
            raise ShapeMismatch("KZ witness must be a retract or coretract adjunction")


def _search_cell(F: Functor, G: Functor, conditions) -> tuple[NatTrans | None, int]:
    """First transformation F ⇒ G satisfying every predicate, and the count."""
    hits = [t for t in iter_nat_trans(F, G) if all(c(t) for c in conditions)]
    return (hits[0] if hits else None), len(hits)


# ---------------------------------------------------------------------------
# monads


def check_algebra_kz(T: TwoMonad, A, a: Functor) -> KzWitness | None:
    """η: 1 ⇒ i_A∘a with η·i_A = 1 and a·η = 1, making a ⊣ i_A a retract
    adjunction."""
    iA = T.unit(A)
    one_A = identity_functor(A)
    if a @ iA != one_A or a @ T.mult(A) != a @ T.on_functor(a):
        raise AlgebraInvalid(f"{a.label()} is not a {T.name}-algebra structure")
    eta, n = _search_cell(
        identity_functor(T.apply(A)),
        iA @ a,
        [lambda t: pre(t, iA).is_identity(), lambda t: post(a, t).is_identity()],
    )
    if eta is None:
        return None
    adj = AdjunctionData(a, iA, eta, identity_nat(a @ iA))
    return KzWitness(f"{T.name}-algebra on {A.name}", adj, unique=n == 1)


def iter_monad_algebras(T: TwoMonad, A) -> Iterable[Functor]:
    """Every algebra structure TA → A (brute force)."""
    from .fincat.enumerate import iter_functors

    iA, mA = T.unit(A), T.mult(A)
    TA = T.apply(A)
    pinned = {x: a for a, x in enumerate(iA.obj)}
    cands = [[pinned[x]] if x in pinned else list(range(A.n_objects)) for x in range(TA.n_objects)]
    pinned_arr = {x: u for u, x in enumerate(iA.arr)}
    for a in iter_functors(TA, A, candidates=cands, arrow_filter=lambda x, u: pinned_arr.get(x, u) == u):
        if a @ mA == a @ T.on_functor(a):
            yield a


def monad_kz_conditions(T: TwoMonad, A) -> Report:
    """The three adjunction forms of lax idempotence at A, for a monad whose T
    is computable: T(i) ⊣ m with identity unit, m ⊣ iT with identity
    counit, and the modification δ with δ·i = 1 and m·δ = 1."""
    rep = Report(f"lax idempotence of {T.name} at {A.name}")
    iA, mA, TiA, iTA = T.unit(A), T.mult(A), T.on_functor(T.unit(A)), T.unit(T.apply(A))
    TA, TTA = T.apply(A), mA.source
    one_TA, one_TTA = identity_functor(TA), identity_functor(TTA)
    subj = A.name
    if rep.add("m∘T(i) = 1", subj, mA @ TiA == one_TA):
        eps, n = _search_cell(
            TiA @ mA, one_TTA, [lambda t: pre(t, TiA).is_identity(), lambda t: post(mA, t).is_identity()]
        )
        rep.add("T(i) ⊣ m with identity unit", subj, eps is not None and n == 1, {"counits": n})
    if rep.add("m∘iT = 1", subj, mA @ iTA == one_TA):
        eta, n = _search_cell(
            one_TTA, iTA @ mA, [lambda t: pre(t, iTA).is_identity(), lambda t: post(mA, t).is_identity()]
        )
        rep.add("m ⊣ iT with identity counit", subj, eta is not None and n == 1, {"units": n})
    delta = T.delta(A)
    ok_shape = delta.source == TiA and delta.target == iTA
    if rep.add("δ: T(i) ⇒ iT", subj, ok_shape):
        rep.add("δ·i = 1", subj, pre(delta, iA).is_identity())
        rep.add("m·δ = 1", subj, post(mA, delta).is_identity())
        found, n = _search_cell(
            TiA, iTA, [lambda t: pre(t, iA).is_identity(), lambda t: post(mA, t).is_identity()]
        )
        rep.add("δ is the unique such cell", subj, found == delta and n == 1, {"candidates": n})
    return rep


# ---------------------------------------------------------------------------
# factorisation systems


def check_comonad_kz_at(S: FactorizationSystem, f) -> KzWitness | None:
    """ε: σ_f∘K(1,Rf) ⇒ 1 with ε·σ_f = 1, K(1,Rf)·ε = 1 and ε·L(Lf) = 1."""
    base = S.base
    fm = S.factor(f)
    s = fm.sigma
    fl = S.factor(fm.L)
    K1R = S.on_square(fm.L, f, base.identity(base.dom(f)), fm.R)
    if K1R @ s != base.identity(fm.K):
        return None
    top = s @ K1R
    one = base.identity(fl.K)
    if not isinstance(base, CatBase):
        return None if top != one else _discrete_witness(f, s, K1R)
    eps, n = _search_cell(
        top,
        one,
        [
            lambda t: pre(t, s).is_identity(),
            lambda t: post(K1R, t).is_identity(),
            lambda t: pre(t, fl.L).is_identity(),
        ],
    )
    if eps is None:
        return None
    adj = AdjunctionData(s, K1R, identity_nat(K1R @ s), eps)
    return KzWitness(f"comonad at {_name(f)}", adj, unique=n == 1)


def check_monad_kz_at(S: FactorizationSystem, f, p=None) -> KzWitness | None:
    """η: 1 ⇒ Lf∘p with η·Lf = 1, p·η = 1 and Rf·η = 1 for the algebra p on
    f; with ``p`` omitted the free algebra (Rf, π_f) is used."""
    base = S.base
    if p is None:
        fm0 = S.factor(f)
        f, p = fm0.R, fm0.pi
    fm = S.factor(f)
    if p @ fm.L != base.identity(base.dom(f)):
        return None
    top = base.identity(fm.K)
    bot = fm.L @ p
    if not isinstance(base, CatBase):
        return None if top != bot else _discrete_witness(f, p, fm.L)
    eta, n = _search_cell(
        top,
        bot,
        [
            lambda t: pre(t, fm.L).is_identity(),
            lambda t: post(p, t).is_identity(),
            lambda t: post(fm.R, t).is_identity(),
        ],
    )
    if eta is None:
        return None
    adj = AdjunctionData(p, fm.L, eta, identity_nat(p @ fm.L))
    return KzWitness(f"monad at {_name(f)}", adj, unique=n == 1)


@dataclass
class _DiscreteAdj:
    left: object
    right: object
    is_retract: bool = True
    is_coretract: bool = True


def _discrete_witness(f, left, right) -> KzWitness:
    # identity 2-cells only: the adjunction is an equality of composites
    return KzWitness(_name(f), _DiscreteAdj(left, right))


def _name(m) -> str:
    return m.label() if hasattr(m, "label") else repr(m)


def monad_kz_instance(S: FactorizationSystem, f) -> tuple[bool, list[str]]:
    """KZ witnesses for the free algebra on f and for every algebra on f."""
    bad = []
    if check_monad_kz_at(S, f) is None:
        bad.append("free")
    if isinstance(S.base, CatBase):
        for alg in iter_algebras(S, f):
            w = check_monad_kz_at(S, f, alg.structure)
            if w is None or not w.unique:
                bad.append(repr(alg.structure.object_map()))
    return not bad, bad


def filler_agreement(S: FactorizationSystem, co: CoalgebraStruct, alg: AlgebraStruct) -> Report:
    """Canonical fillers from co to alg are KZ fillers and agree with the
    lax-orthogonality assignment up to the canonical invertible cell."""
    f, g = co.carrier, alg.carrier
    rep = Report(f"canonical fillers [{S.name}]")
    subj = f"{_name(f)} vs {_name(g)}"
    sqs = squares_between(f, g)
    canon = {}
    for sq in sqs:
        F = canonical_filler(S, co, alg, sq)
        canon[sq] = F
        rep.add("canonical filler is KZ", f"{subj} at {sq.label()}", check_kz_filler(sq, F))
    assign = is_lax_orthogonal(f, g)
    if not rep.add("lax orthogonal assignment exists", subj, assign is not None):
        return rep
    try:
        kz_uniqueness_iso(LaxOrthAssignment(f, g, canon), assign)
        rep.add("agrees up to canonical iso", subj, True)
    except Exception as e:  # WitnessNotFound
        rep.add("agrees up to canonical iso", subj, False, str(e))
    return rep


def check_awfs_lax_orthogonal(
    S: FactorizationSystem,
    corpus: Sequence,
    filler_pairs: Sequence[tuple[CoalgebraStruct, AlgebraStruct]] = (),
) -> Report:
    rep = Report(f"lax orthogonality [{S.name}]")
    for f in corpus:
        subj = _name(f)
        w = check_comonad_kz_at(S, f)
        rep.add("comonad KZ witness", subj, w is not None and w.unique)
        ok, bad = monad_kz_instance(S, f)
        rep.add("monad KZ witness", subj, ok, bad or None)
    for co, alg in filler_pairs:
        rep.extend(filler_agreement(S, co, alg))
    return rep


def default_filler_pairs(S: FactorizationSystem, corpus: Sequence, max_pairs: int | None = None):
    """Every (coalgebra, algebra) pair of native structures on corpus
    functors, optionally cut at ``max_pairs``."""
    coalgs = [c for f in corpus for c in iter_coalgebras(S, f)]
    algs = [a for f in corpus for a in iter_algebras(S, f)]
    pairs = [(c, a) for c in coalgs for a in algs]
    return pairs if max_pairs is None else pairs[:max_pairs]


# ---------------------------------------------------------------------------
# lax orthogonality structures


@dataclass
class LaxOrthStructure:
    """A section D of the comparison into squares, with θ(e): D(h,k) ⇒ e for
    every filler e."""

    f: Functor
    g: Functor
    section: dict[Square, Filler]
    cells: dict[tuple, NatTrans]
    theta: dict[tuple[Square, Functor], NatTrans] = field(default_factory=dict)

    def D(self, sq: Square) -> Functor:
        return self.section[sq].diagonal


def extract_lax_orth_structure(S: FactorizationSystem, co: CoalgebraStruct, alg: AlgebraStruct) -> LaxOrthStructure:
    """D(h,k) = p∘K(h,k)∘s, D(α,β) = p·K(α,β)·s, θ(e) the unique boundary-
    trivial cell D(h,k) ⇒ e."""
    f, g = co.carrier, alg.carrier
    sqs = squares_between(f, g)
    section = {sq: canonical_filler(S, co, alg, sq) for sq in sqs}
    cells = {}
    for s1 in sqs:
        for s2 in sqs:
            for a, b in square_cells(s1, s2):
                K = S.on_cell(s1, s2, a, b)
                cells[(s1, s2, a, b)] = post(alg.structure, pre(K, co.structure))
    theta = {}
    for sq in sqs:
        d = section[sq].diagonal
        for e in all_fillers(sq):
            lifts = boundary_cells(f, g, d, e.diagonal, identity_nat(sq.top), identity_nat(sq.bottom))
            if len(lifts) != 1:
                raise ShapeMismatch(f"{len(lifts)} comparison cells on square {sq.label()}")
            theta[(sq, e.diagonal)] = lifts[0]
    return LaxOrthStructure(f, g, section, cells, theta)


def validate_lax_orth_structure(
    st: LaxOrthStructure,
    morphisms: Iterable[tuple[tuple[Functor, Functor], tuple[Functor, Functor]]] = (),
) -> Report:
    """Boundary conditions on D and θ, naturality of θ in the filler, and the
    modification condition along supplied endomorphism pairs
    ((u₀, u₁): f → f, (w₀, w₁): g → g)."""
    f, g = st.f, st.g
    rep = Report("lax orthogonality structure")
    for (s1, s2, a, b), c in st.cells.items():
        subj = f"{s1.label()} ⇒ {s2.label()}"
        rep.add("D(α,β)·f = α", subj, pre(c, f) == a)
        rep.add("g·D(α,β) = β", subj, post(g, c) == b)
    for (sq, e), t in st.theta.items():
        subj = f"{sq.label()} → {e.object_map()}"
        if t.source != st.D(sq) or t.target != e:
            rep.add("θ(e): D(h,k) ⇒ e", subj, False)
            continue
        rep.add("g·θ(e) = 1", subj, post(g, t).is_identity())
        rep.add("θ(e)·f = 1", subj, pre(t, f).is_identity())
    # naturality in e: θ(ē)∘D(ε·f, g·ε) = ε∘θ(e)
    by_sq: dict = {}
    for (sq, e) in st.theta:
        by_sq.setdefault(sq, []).append(e)
    sqs = list(st.section)
    for s1 in sqs:
        for s2 in sqs:
            for e in by_sq.get(s1, ()):
                for e2 in by_sq.get(s2, ()):
                    for eps in iter_nat_trans(e, e2):
                        a, b = pre(eps, f), post(g, eps)
                        D = st.cells.get((s1, s2, a, b))
                        subj = f"{s1.label()} → {s2.label()}"
                        if D is None:
                            rep.add("D defined on the induced 2-cell", subj, False)
                            continue
                        rep.add(
                            "θ natural in the filler",
                            subj,
                            vcomp(st.theta[(s2, e2)], D) == vcomp(eps, st.theta[(s1, e)]),
                        )
    for (u0, u1), (w0, w1) in morphisms:
        for sq in sqs:
            moved = Square(f, g, w0 @ sq.top @ u0, w1 @ sq.bottom @ u1)
            subj = f"{sq.label()} moved"
            if moved not in st.section:
                rep.add("moved square is covered", subj, False)
                continue
            if not rep.add("D natural in the pair", subj, st.D(moved) == w0 @ st.D(sq) @ u1):
                continue
            for e in by_sq.get(sq, ()):
                e2 = w0 @ e @ u1
                lhs = post(w0, pre(st.theta[(sq, e)], u1))
                rep.add("θ is a modification", subj, st.theta.get((moved, e2)) == lhs)
    return rep


def pitchfork_kz_object_check(S: FactorizationSystem, g: Functor, d: Functor, lax: bool = True) -> bool:
    """d∘Lg = 1 and g∘d = Rg; for lax orthogonal S also the retract
    adjunction d ⊣ Lg over the codomain."""
    fm = S.factor(g)
    try:
        if d @ fm.L != identity_functor(g.source) or g @ d != fm.R:
            return False
    except ShapeMismatch:
        return False
    if lax:
        return check_monad_kz_at(S, g, d) is not None
    return True
