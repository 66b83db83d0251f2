"""Algebraic weak factorisation systems on finite instances.

A factorisation system handle sends f: A → B to f = Rf∘Lf through a middle
object Kf, acts on squares (h, k) by K(h, k) and, in Cat, on 2-cells.  The
comonad and monad structure are the comultiplication σ_f: Kf → K(Lf) and the
multiplication π_f: K(Rf) → Kf.  All laws are checked as equalities of finite
data at the supplied instances.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator

from .base import CAT, CatBase
from .errors import NotAPullback, ShapeMismatch, WitnessNotFound
from .fincat.constructions import CommaCone, comma_category, pullback_category
from .fincat.core import Functor, NatTrans, identity_functor, nat_violation, post, pre, vcomp
from .fincat.enumerate import iter_functors
from .lifting import Filler, Square, orthogonality_witness, square_cells
from .report import Report
from .twomonad import TwoMonad


@dataclass(eq=False)
class FactoredMorphism:
    f: object
    L: object
    K: object
    R: object
    system: "FactorizationSystem" = field(repr=False)
    cone: CommaCone | None = field(default=None, repr=False)

    @cached_property
    def sigma(self):
        return self.system.sigma(self)

    @cached_property
    def pi(self):
        return self.system.pi(self)

    @property
    def q(self) -> Functor:
        return self.cone.proj_left

    @property
    def mu(self) -> NatTrans:
        return self.cone.cell


class FactorizationSystem:
    """Handle interface: subclasses implement ``_factor``, ``_on_square``,
    ``sigma`` and ``pi`` (and ``_on_cell`` in Cat)."""

    name = "factorization"
    base = CAT

    def __init__(self):
        self._factored: dict = {}
        self._squares: dict = {}

    def factor(self, f) -> FactoredMorphism:
        fm = self._factored.get(f)
        if fm is None:
            fm = self._factored[f] = self._factor(f)
        return fm

    def on_square(self, f, g, h, k):
        key = (f, g, h, k)
        m = self._squares.get(key)
        if m is None:
            m = self._squares[key] = self._on_square(f, g, h, k)
        return m

    def K(self, sq: Square):
        return self.on_square(sq.left, sq.right, sq.top, sq.bottom)

    def on_cell(self, s1: Square, s2: Square, alpha: NatTrans, alpha2: NatTrans) -> NatTrans:
        return self._on_cell(s1, s2, alpha, alpha2)

    # derived data
    def L(self, f):
        return self.factor(f).L

    def R(self, f):
        return self.factor(f).R

    def _factor(self, f) -> FactoredMorphism:
        raise NotImplementedError

    def _on_square(self, f, g, h, k):
        raise NotImplementedError

    def _on_cell(self, s1, s2, alpha, alpha2):
        raise NotImplementedError

    def sigma(self, fm: FactoredMorphism):
        raise NotImplementedError

    def pi(self, fm: FactoredMorphism):
        raise NotImplementedError


class CommaSystem(FactorizationSystem):
    """Factor f: A → B through the comma object Kf = Tf ↓ i_B for a 2-monad T.

    With T the identity this is the comma-object factorisation f = Rf∘Lf with
    Kf = f ↓ B, Lf(a) = (a, 1, fa) and Rf the projection.
    """

    def __init__(self, monad: TwoMonad, name: str):
        super().__init__()
        self.monad = monad
        self.name = name

    def _factor(self, f: Functor) -> FactoredMorphism:
        T = self.monad
        Tf = T.on_functor(f)
        iA, iB = T.unit(f.source), T.unit(f.target)
        cone = comma_category(Tf, iB, name=f"K({f.label()})")
        if Tf @ iA != iB @ f:
            raise ShapeMismatch(f"{T.name}: unit is not strictly natural at {f.label()}")
        TB = Tf.target
        L = cone.mediate(iA, f, [TB.ident[y] for y in (Tf @ iA).obj]).named(f"L({f.label()})")
        R = cone.proj_right.named(f"R({f.label()})")
        return FactoredMorphism(f, L, cone.apex, R, self, cone)

    def _on_square(self, f, g, h, k):
        T = self.monad
        ff, fg = self.factor(f), self.factor(g)
        p = T.on_functor(h) @ ff.q
        q = k @ ff.R
        cell = post(T.on_functor(k), ff.mu).comp
        return fg.cone.mediate(p, q, cell)

    def _on_cell(self, s1, s2, alpha, alpha2):
        T = self.monad
        ff, fg = self.factor(s1.left), self.factor(s1.right)
        K1, K2 = self.K(s1), self.K(s2)
        Ta = T.on_nat(alpha)
        idx = fg.cone.arrow_index
        comps = []
        for X in range(ff.K.n_objects):
            key = (K1.obj[X], K2.obj[X], Ta.comp[ff.q.obj[X]], alpha2.comp[ff.R.obj[X]])
            if key not in idx:
                raise ShapeMismatch("2-cell pair is not compatible with the squares")
            comps.append(idx[key])
        return NatTrans(K1, K2, tuple(comps))

    def sigma(self, fm: FactoredMorphism) -> Functor:
        """σ_f: Kf → K(Lf), the functor into the comma T(Lf) ↓ i_{Kf} with
        first projection q_f, second projection the identity, and cell the
        unique arrow ε_X with T(q_f)ε_X = δ and T(Rf)ε_X = μ_f."""
        T = self.monad
        A, Kf = fm.f.source, fm.K
        fl = self.factor(fm.L)
        TL, Tq, TR = T.on_functor(fm.L), T.on_functor(fm.q), T.on_functor(fm.R)
        TK = TL.target
        iK = T.unit(Kf)
        delta = T.delta(A)
        comps = []
        for X in range(Kf.n_objects):
            x = fm.q.obj[X]
            cands = [
                c
                for c in TK.hom(TL.obj[x], iK.obj[X])
                if Tq.arr[c] == delta.comp[x] and TR.arr[c] == fm.mu.comp[X]
            ]
            if len(cands) != 1:
                raise WitnessNotFound(
                    f"{self.name}: {len(cands)} candidate counit components at {Kf.objects[X]}"
                )
            comps.append(cands[0])
        return fl.cone.mediate(fm.q, identity_functor(Kf), comps).named(f"σ({fm.f.label()})")

    def pi(self, fm: FactoredMorphism) -> Functor:
        """π_f: K(Rf) → Kf with q_f π_f = m_A T(q_f) q_{Rf}, Rf π_f = R(Rf)."""
        T = self.monad
        A, B = fm.f.source, fm.f.target
        fr = self.factor(fm.R)
        p = T.mult(A) @ T.on_functor(fm.q) @ fr.q
        mB = T.mult(B)
        Tmu = T.on_nat(fm.mu)
        TB = mB.target
        cell = [
            TB.comp[(fr.mu.comp[Y], mB.arr[Tmu.comp[fr.q.obj[Y]]])] for Y in range(fr.K.n_objects)
        ]
        return fm.cone.mediate(p, fr.R, cell).named(f"π({fm.f.label()})")


class IdentitySystem(FactorizationSystem):
    """The trivial factorisation Lf = f, Kf = cod f, Rf = 1."""

    def __init__(self, base=CAT):
        super().__init__()
        self.base = base
        self.name = "identity"

    def _factor(self, f):
        B = self.base.cod(f)
        return FactoredMorphism(f, f, B, self.base.identity(B), self)

    def _on_square(self, f, g, h, k):
        return k

    def _on_cell(self, s1, s2, alpha, alpha2):
        return alpha2

    def sigma(self, fm):
        return self.base.identity(fm.K)

    def pi(self, fm):
        return self.base.identity(fm.K)


class PerturbedSystem(FactorizationSystem):
    """Wrap a handle and override pieces of it; used to build mutants."""

    def __init__(self, inner: FactorizationSystem, *, sigma=None, pi=None, on_square=None, name=None):
        super().__init__()
        self.inner = inner
        self.base = inner.base
        self.name = name or f"{inner.name}*"
        self._sigma, self._pi, self._sq = sigma, pi, on_square

    def _factor(self, f):
        fm = self.inner.factor(f)
        return FactoredMorphism(fm.f, fm.L, fm.K, fm.R, self, fm.cone)

    def _on_square(self, f, g, h, k):
        m = self.inner.on_square(f, g, h, k)
        return self._sq(f, g, h, k, m) if self._sq else m

    def _on_cell(self, s1, s2, alpha, alpha2):
        return self.inner.on_cell(s1, s2, alpha, alpha2)

    def sigma(self, fm):
        s = self.inner.factor(fm.f).sigma
        return self._sigma(fm, s) if self._sigma else s

    def pi(self, fm):
        p = self.inner.factor(fm.f).pi
        return self._pi(fm, p) if self._pi else p


# ---------------------------------------------------------------------------
# the functorial factorisation


def _eq_check(rep: Report, name: str, subject: str, lhs, rhs, detail=None) -> bool:
    ok = lhs == rhs
    return rep.add(name, subject, ok, None if ok else (detail or _diff(lhs, rhs)))


def _diff(lhs, rhs):
    if isinstance(lhs, Functor) and isinstance(rhs, Functor) and lhs.source == rhs.source:
        for x in range(lhs.source.n_objects):
            if lhs.obj[x] != rhs.obj[x]:
                return {
                    "object": lhs.source.objects[x],
                    "lhs": lhs.target.objects[lhs.obj[x]],
                    "rhs": rhs.target.objects[rhs.obj[x]],
                }
        for u in range(lhs.source.n_arrows):
            if lhs.arr[u] != rhs.arr[u]:
                return {
                    "arrow": lhs.source.arrows[u],
                    "lhs": lhs.target.arrows[lhs.arr[u]],
                    "rhs": rhs.target.arrows[rhs.arr[u]],
                }
        return "functors differ in their categories"
    return {"lhs": repr(lhs), "rhs": repr(rhs)}


def _name(m) -> str:
    if hasattr(m, "label"):
        return m.label()
    return repr(m)


def check_functorial_factorization(S: FactorizationSystem, squares: Iterable[Square], cells: bool = True) -> Report:
    """Rf∘Lf = f, K(1) = 1, K preserves composites of the listed squares, the
    middle row commutes, and (in Cat) the action on 2-cells is functorial and
    compatible with L and R."""
    squares = list(squares)
    rep = Report(f"functorial factorization [{S.name}]")
    base = S.base
    objs = []
    for sq in squares:
        for f in (sq.left, sq.right):
            if f not in objs:
                objs.append(f)
    for f in objs:
        fm = S.factor(f)
        _eq_check(rep, "R∘L = f", _name(f), fm.R @ fm.L, f)
    for f in objs:
        one = base.identity(base.dom(f)), base.identity(base.cod(f))
        _eq_check(rep, "K preserves identities", _name(f), S.on_square(f, f, *one), base.identity(S.factor(f).K))
    for s1 in squares:
        for s2 in squares:
            if s1.right != s2.left:
                continue
            comp = S.on_square(s1.left, s2.right, s2.top @ s1.top, s2.bottom @ s1.bottom)
            _eq_check(
                rep,
                "K preserves composites",
                f"{s1.label()} then {s2.label()}",
                comp,
                S.K(s2) @ S.K(s1),
            )
    for sq in squares:
        Kh = S.K(sq)
        ff, fg = S.factor(sq.left), S.factor(sq.right)
        _eq_check(rep, "middle row: K(h,k)∘Lf = Lg∘h", sq.label(), Kh @ ff.L, fg.L @ sq.top)
        _eq_check(rep, "middle row: Rg∘K(h,k) = k∘Rf", sq.label(), fg.R @ Kh, sq.bottom @ ff.R)
    if cells and isinstance(base, CatBase):
        _check_cells(S, squares, rep)
    return rep


def _check_cells(S: FactorizationSystem, squares: list[Square], rep: Report) -> None:
    by_pair: dict = {}
    for sq in squares:
        by_pair.setdefault((sq.left, sq.right), []).append(sq)
    for group in by_pair.values():
        acts = {}
        for s1 in group:
            for s2 in group:
                for a, a2 in square_cells(s1, s2):
                    subj = f"{s1.label()} ⇒ {s2.label()}"
                    try:
                        c = S.on_cell(s1, s2, a, a2)
                    except ShapeMismatch as e:
                        rep.add("K on 2-cells is defined", subj, False, str(e))
                        continue
                    v = nat_violation(c)
                    if not rep.add("K(α,α′) is natural", subj, v is None, v):
                        continue
                    ff, fg = S.factor(s1.left), S.factor(s1.right)
                    _eq_check(rep, "K(α,α′)·Lf = Lg·α", subj, pre(c, ff.L), post(fg.L, a))
                    _eq_check(rep, "Rg·K(α,α′) = α′·Rf", subj, post(fg.R, c), pre(a2, ff.R))
                    if a.is_identity() and a2.is_identity() and s1 == s2:
                        rep.add("K(1,1) = 1", subj, c.is_identity())
                    acts[(s1, s2, a, a2)] = c
        by_src: dict = {}
        for key, c in acts.items():
            by_src.setdefault(key[0], []).append((key, c))
        for (s1, s2, a, a2), c in acts.items():
            for (_, s3, b, b2), d in by_src.get(s2, ()):
                whole = acts.get((s1, s3, vcomp(b, a), vcomp(b2, a2)))
                if whole is not None:
                    rep.add("K preserves vertical composites", f"{s1.label()} ⇒ {s3.label()}", whole == vcomp(d, c))


# ---------------------------------------------------------------------------
# comonad, monad, distributive law


def _lazy_check(rep: Report, name: str, subject: str, lhs, rhs) -> bool:
    """Like _eq_check, with both sides built on demand: a square that is not
    a morphism of arrows makes the equation fail instead of raising."""
    try:
        l, r = lhs(), rhs()
    except ShapeMismatch as e:
        return rep.add(name, subject, False, f"undefined: {e}")
    return _eq_check(rep, name, subject, l, r)


def check_comonad_laws(S: FactorizationSystem, f) -> Report:
    rep = Report(f"comonad laws [{S.name}]")
    base = S.base
    fm = S.factor(f)
    A = base.dom(f)
    s = fm.sigma
    fl = S.factor(fm.L)
    subj = _name(f)
    one_K = base.identity(fm.K)
    _lazy_check(rep, "comultiplication is a square: σ_f∘Lf = L(Lf)", subj, lambda: s @ fm.L, lambda: fl.L)
    _lazy_check(rep, "counit: R(Lf)∘σ_f = 1", subj, lambda: fl.R @ s, lambda: one_K)
    K1R = lambda: S.on_square(fm.L, f, base.identity(A), fm.R)  # noqa: E731
    _lazy_check(rep, "counit: K(1,Rf)∘σ_f = 1", subj, lambda: K1R() @ s, lambda: one_K)
    K1s = lambda: S.on_square(fm.L, fl.L, base.identity(A), s)  # noqa: E731
    _lazy_check(
        rep, "coassociativity: σ_{Lf}∘σ_f = K(1,σ_f)∘σ_f", subj, lambda: fl.sigma @ s, lambda: K1s() @ s
    )
    return rep


def check_monad_laws(S: FactorizationSystem, f) -> Report:
    rep = Report(f"monad laws [{S.name}]")
    base = S.base
    fm = S.factor(f)
    B = base.cod(f)
    p = fm.pi
    fr = S.factor(fm.R)
    subj = _name(f)
    one_K = base.identity(fm.K)
    _lazy_check(rep, "multiplication is a square: Rf∘π_f = R(Rf)", subj, lambda: fm.R @ p, lambda: fr.R)
    _lazy_check(rep, "unit: π_f∘L(Rf) = 1", subj, lambda: p @ fr.L, lambda: one_K)
    KL1 = lambda: S.on_square(f, fm.R, fm.L, base.identity(B))  # noqa: E731
    _lazy_check(rep, "unit: π_f∘K(Lf,1) = 1", subj, lambda: p @ KL1(), lambda: one_K)
    Kp1 = lambda: S.on_square(fr.R, fm.R, p, base.identity(B))  # noqa: E731
    _lazy_check(
        rep, "associativity: π_f∘π_{Rf} = π_f∘K(π_f,1)", subj, lambda: p @ fr.pi, lambda: p @ Kp1()
    )
    return rep


def check_distributive_law(S: FactorizationSystem, f) -> Report:
    """Δ_f = (σ_f, π_f): L(Rf) → R(Lf) and its two squares and two triangles."""
    rep = Report(f"distributive law [{S.name}]")
    base = S.base
    fm = S.factor(f)
    A, B = base.dom(f), base.cod(f)
    s, p = fm.sigma, fm.pi
    fl, fr = S.factor(fm.L), S.factor(fm.R)
    subj = _name(f)
    one_K = base.identity(fm.K)
    _lazy_check(rep, "Δ_f is a square: R(Lf)∘σ_f = π_f∘L(Rf)", subj, lambda: fl.R @ s, lambda: p @ fr.L)
    # triangles
    K1R = lambda: S.on_square(fm.L, f, base.identity(A), fm.R)  # noqa: E731
    _lazy_check(rep, "left triangle (domain): K(1,Rf)∘σ_f = 1", subj, lambda: K1R() @ s, lambda: one_K)
    _lazy_check(rep, "left triangle (codomain): Rf∘π_f = R(Rf)", subj, lambda: fm.R @ p, lambda: fr.R)
    KL1 = lambda: S.on_square(f, fm.R, fm.L, base.identity(B))  # noqa: E731
    _lazy_check(rep, "right triangle (domain): σ_f∘Lf = L(Lf)", subj, lambda: s @ fm.L, lambda: fl.L)
    _lazy_check(rep, "right triangle (codomain): π_f∘K(Lf,1) = 1", subj, lambda: p @ KL1(), lambda: one_K)
    # squares
    K1s = lambda: S.on_square(fm.L, fl.L, base.identity(A), s)  # noqa: E731
    _lazy_check(
        rep, "left square (domain): K(1,σ_f)∘σ_f = σ_{Lf}∘σ_f", subj, lambda: K1s() @ s, lambda: fl.sigma @ s
    )
    mixed = lambda: fl.pi @ S.on_square(fr.L, fl.R, s, p) @ fr.sigma  # noqa: E731
    _lazy_check(
        rep, "left square (codomain): σ_f∘π_f = π_{Lf}∘K(σ_f,π_f)∘σ_{Rf}", subj, lambda: s @ p, mixed
    )
    _lazy_check(
        rep, "right square (domain): π_{Lf}∘K(σ_f,π_f)∘σ_{Rf} = σ_f∘π_f", subj, mixed, lambda: s @ p
    )
    Kp1 = lambda: S.on_square(fr.R, fm.R, p, base.identity(B))  # noqa: E731
    _lazy_check(
        rep, "right square (codomain): π_f∘π_{Rf} = π_f∘K(π_f,1)", subj, lambda: p @ fr.pi, lambda: p @ Kp1()
    )
    return rep


def check_all_laws(S: FactorizationSystem, corpus: Iterable) -> Report:
    rep = Report(f"laws [{S.name}]")
    for f in corpus:
        rep.extend(check_comonad_laws(S, f))
        rep.extend(check_monad_laws(S, f))
        rep.extend(check_distributive_law(S, f))
    return rep


# ---------------------------------------------------------------------------
# algebras and coalgebras


@dataclass(frozen=True)
class AlgebraStruct:
    """An R-algebra: p: Kf → dom f with p∘Lf = 1 and f∘p = Rf."""

    carrier: object
    structure: object


@dataclass(frozen=True)
class CoalgebraStruct:
    """An L-coalgebra: s: cod f → Kf with Rf∘s = 1 and s∘f = Lf."""

    carrier: object
    structure: object


def validate_algebra(S: FactorizationSystem, alg: AlgebraStruct, full: bool = True) -> Report:
    rep = Report(f"algebra [{S.name}]")
    f, p = alg.carrier, alg.structure
    base = S.base
    fm = S.factor(f)
    subj = _name(f)
    if base.dom(p) != fm.K or base.cod(p) != base.dom(f):
        rep.add("shape", subj, False, "structure map has the wrong domain or codomain")
        return rep
    _eq_check(rep, "p∘Lf = 1", subj, p @ fm.L, base.identity(base.dom(f)))
    _eq_check(rep, "f∘p = Rf", subj, f @ p, fm.R)
    if full and rep.ok:
        Kp1 = S.on_square(fm.R, f, p, base.identity(base.cod(f)))
        _eq_check(rep, "associativity: p∘π_f = p∘K(p,1)", subj, p @ fm.pi, p @ Kp1)
    return rep


def validate_coalgebra(S: FactorizationSystem, co: CoalgebraStruct, full: bool = True) -> Report:
    rep = Report(f"coalgebra [{S.name}]")
    f, s = co.carrier, co.structure
    base = S.base
    fm = S.factor(f)
    subj = _name(f)
    if base.dom(s) != base.cod(f) or base.cod(s) != fm.K:
        rep.add("shape", subj, False, "structure map has the wrong domain or codomain")
        return rep
    _eq_check(rep, "Rf∘s = 1", subj, fm.R @ s, base.identity(base.cod(f)))
    _eq_check(rep, "s∘f = Lf", subj, s @ f, fm.L)
    if full and rep.ok:
        K1s = S.on_square(f, fm.L, base.identity(base.dom(f)), s)
        _eq_check(rep, "coassociativity: σ_f∘s = K(1,s)∘s", subj, fm.sigma @ s, K1s @ s)
    return rep


def iter_algebras(S: FactorizationSystem, f: Functor, full: bool = True) -> Iterator[AlgebraStruct]:
    """Every algebra structure on f (Cat only), in canonical order."""
    fm = S.factor(f)
    A, Kf = f.source, fm.K
    pinned: dict[int, int] = {}
    for a, X in enumerate(fm.L.obj):
        pinned[X] = a
    pinned_arr = {X: u for u, X in enumerate(fm.L.arr)}
    fibre: dict[int, list[int]] = {}
    for a in range(A.n_objects):
        fibre.setdefault(f.obj[a], []).append(a)
    cands = [
        [pinned[X]] if X in pinned else fibre.get(fm.R.obj[X], []) for X in range(Kf.n_objects)
    ]
    cands = [[a for a in c if f.obj[a] == fm.R.obj[X]] for X, c in enumerate(cands)]

    def ok(u: int, a: int) -> bool:
        if u in pinned_arr and pinned_arr[u] != a:
            return False
        return f.arr[a] == fm.R.arr[u]

    for p in iter_functors(Kf, A, candidates=cands, arrow_filter=ok):
        alg = AlgebraStruct(f, p)
        if not full or validate_algebra(S, alg, True).ok:
            yield alg


def iter_coalgebras(S: FactorizationSystem, f: Functor, full: bool = True) -> Iterator[CoalgebraStruct]:
    fm = S.factor(f)
    B, Kf = f.target, fm.K
    pinned: dict[int, int] = {}
    for a, b in enumerate(f.obj):
        if pinned.setdefault(b, fm.L.obj[a]) != fm.L.obj[a]:
            return
    pinned_arr: dict[int, int] = {}
    for u, w in enumerate(f.arr):
        if pinned_arr.setdefault(w, fm.L.arr[u]) != fm.L.arr[u]:
            return
    fibre: dict[int, list[int]] = {}
    for X in range(Kf.n_objects):
        fibre.setdefault(fm.R.obj[X], []).append(X)
    cands = [
        [pinned[b]] if b in pinned else fibre.get(b, []) for b in range(B.n_objects)
    ]
    cands = [[X for X in c if fm.R.obj[X] == b] for b, c in enumerate(cands)]

    def ok(w: int, u: int) -> bool:
        if w in pinned_arr and pinned_arr[w] != u:
            return False
        return fm.R.arr[u] == w

    for s in iter_functors(B, Kf, candidates=cands, arrow_filter=ok):
        co = CoalgebraStruct(f, s)
        if not full or validate_coalgebra(S, co, True).ok:
            yield co


def free_algebra(S: FactorizationSystem, f) -> AlgebraStruct:
    fm = S.factor(f)
    return AlgebraStruct(fm.R, fm.pi)


def cofree_coalgebra(S: FactorizationSystem, f) -> CoalgebraStruct:
    fm = S.factor(f)
    return CoalgebraStruct(fm.L, fm.sigma)


def canonical_filler(S: FactorizationSystem, co: CoalgebraStruct, alg: AlgebraStruct, sq: Square) -> Filler:
    """d = p∘K(h,k)∘s for a square from a coalgebra to an algebra."""
    if sq.left != co.carrier or sq.right != alg.carrier:
        raise ShapeMismatch("square does not run from the coalgebra to the algebra")
    d = alg.structure @ S.K(sq) @ co.structure
    return Filler(sq, d)


def compose_algebras(S: FactorizationSystem, af: AlgebraStruct, ag: AlgebraStruct) -> AlgebraStruct:
    """Algebra on g∘f: a fills (f, R(gf)): L(gf) → g, then p fills (1, a): L(gf) → f."""
    f, g = af.carrier, ag.carrier
    base = S.base
    if base.cod(f) != base.dom(g):
        raise ShapeMismatch("algebras are not composable")
    gf = g @ f
    fm = S.factor(gf)
    cof = cofree_coalgebra(S, gf)
    a = canonical_filler(S, cof, ag, Square(fm.L, g, f, fm.R)).diagonal
    p = canonical_filler(S, cof, af, Square(fm.L, f, base.identity(base.dom(f)), a)).diagonal
    return AlgebraStruct(gf, p)


def compose_coalgebras(S: FactorizationSystem, cf: CoalgebraStruct, cg: CoalgebraStruct) -> CoalgebraStruct:
    """Coalgebra on g∘f: b fills (L(gf), g): f → R(gf), then s fills (b, 1): g → R(gf)."""
    f, g = cf.carrier, cg.carrier
    base = S.base
    if base.cod(f) != base.dom(g):
        raise ShapeMismatch("coalgebras are not composable")
    gf = g @ f
    fm = S.factor(gf)
    fr = free_algebra(S, gf)
    b = canonical_filler(S, cf, fr, Square(f, fm.R, fm.L, g)).diagonal
    s = canonical_filler(S, cg, fr, Square(g, fm.R, b, base.identity(base.cod(g)))).diagonal
    return CoalgebraStruct(gf, s)


def pullback_algebra(S: FactorizationSystem, alg: AlgebraStruct, pb: Square) -> AlgebraStruct:
    """Algebra on f induced along a pullback square (h, k): f → g (Cat only).

    p_f is the map into the pullback A ≅ C ×_D B given by (p_g∘K(h,k), Rf).
    Uniqueness among algebras making (h, k) an algebra morphism is asserted.
    """
    f, g, h, k = pb.left, pb.right, pb.top, pb.bottom
    if alg.carrier != g:
        raise ShapeMismatch("algebra is not on the right-hand side of the square")
    cone = pullback_category(g, k)
    comparison = cone.mediate(h, f)
    if not comparison.is_isomorphism():
        raise NotAPullback("square is not a pullback in Cat")
    fm = S.factor(f)
    p = comparison.inverse() @ cone.mediate(alg.structure @ S.K(pb), fm.R)
    out = AlgebraStruct(f, p)
    if not validate_algebra(S, out).ok:
        raise WitnessNotFound("pullback-induced structure is not an algebra")
    morphs = [a for a in iter_algebras(S, f) if h @ a.structure == alg.structure @ S.K(pb)]
    if morphs != [out]:
        raise WitnessNotFound(f"{len(morphs)} algebra structures make the square an algebra morphism")
    return out


def is_algebra_morphism(S: FactorizationSystem, a1: AlgebraStruct, a2: AlgebraStruct, h, k) -> bool:
    sq = Square(a1.carrier, a2.carrier, h, k)
    return h @ a1.structure == a2.structure @ S.K(sq)


# ---------------------------------------------------------------------------
# idempotence


@dataclass
class IdempotenceResult:
    comonad_idempotent: bool
    monad_idempotent: bool
    orthogonal: bool
    sigma_witness: object = None
    pi_witness: object = None
    orthogonality_witness: object = None

    @property
    def flags(self) -> tuple[bool, bool]:
        return self.comonad_idempotent, self.monad_idempotent

    @property
    def consistent(self) -> bool:
        return (self.comonad_idempotent and self.monad_idempotent) == self.orthogonal


def is_idempotent_pair(S: FactorizationSystem, corpus: list) -> IdempotenceResult:
    """Σ_f and Π_f invertible across the corpus, cross-checked against
    orthogonality of every Lf against every Rg."""
    sw = pw = None
    for f in corpus:
        fm = S.factor(f)
        if sw is None and not S.base.is_iso(fm.sigma):
            sw = _name(f)
        if pw is None and not S.base.is_iso(fm.pi):
            pw = _name(f)
    ow = None
    for f in corpus:
        for g in corpus:
            w = orthogonality_witness(S.L(f), S.R(g), S.base)
            if w is not None:
                ow = {"f": _name(f), "g": _name(g), **w}
                break
        if ow is not None:
            break
    return IdempotenceResult(sw is None, pw is None, ow is None, sw, pw, ow)


# ---------------------------------------------------------------------------
# registry of handles


_REGISTRY: dict[str, Callable[[], FactorizationSystem]] = {}


def register(name: str, factory: Callable[[], FactorizationSystem]) -> None:
    _REGISTRY[name] = factory


def registered() -> list[str]:
    from . import coropf, simple  # noqa: F401  (populate the registry)

    return sorted(_REGISTRY)


def get_handle(name: str) -> FactorizationSystem:
    from . import coropf, simple  # noqa: F401  (populate the registry)

    if name in _REGISTRY:
        return _REGISTRY[name]()
    if name.startswith("reflection:"):
        from .simple.reflection import reflection_handle

        return reflection_handle(name.split(":", 1)[1])
    raise KeyError(f"unknown handle {name!r}; known: {', '.join(sorted(_REGISTRY))}, reflection:<name>")
