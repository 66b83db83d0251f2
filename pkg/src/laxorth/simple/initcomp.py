"""Free completion under initial objects, and its depth-truncated variant.

T(A) adds one object ⊥ to A with a single arrow ⊥ → x for every x.  The
arrows of A keep their names and ⊥ is the chosen initial object.
"""
from __future__ import annotations

from ..awfs import CommaSystem, FactoredMorphism, iter_coalgebras, register
from ..errors import ShapeMismatch, WitnessNotFound
from ..fincat.constructions import comma_category, point, pullback_category
from ..fincat.core import (
    AdjunctionData,
    FinCategory,
    Functor,
    NatTrans,
    check_functor,
    identity_functor,
    identity_nat,
    identity_name,
)
from ..fincat.adjunction import iter_laris
from ..fincat.enumerate import iter_nat_trans
from ..report import Report
from ..twomonad import TwoMonad

BOTTOM = "⊥"


def _fresh(names, base: str) -> str:
    taken = set(names)
    name = base
    while name in taken:
        name += "'"
    return name


class InitCompletionMonad(TwoMonad):
    """T(A) = A + ⊥.  Layout: ⊥ is object 0 and id_⊥ arrow 0; the objects and
    arrows of A follow shifted by one; ⊥ → x sits at 1 + |arrows A| + x.

    The multiplication collapses the outer ⊥ onto the inner one; the unit
    laws force this choice.
    """

    name = "init-completion"

    def __init__(self):
        self._cache: dict[FinCategory, FinCategory] = {}

    @staticmethod
    def bottom_arrow(A: FinCategory, x: int) -> int:
        """Index of ⊥ → (x+1) in T(A), for x an object of A."""
        return 1 + A.n_arrows + x

    def apply(self, A: FinCategory) -> FinCategory:
        TA = self._cache.get(A)
        if TA is not None:
            return TA
        bot = _fresh(A.objects, BOTTOM)
        nA, nX = A.n_arrows, A.n_objects
        objects = [bot, *A.objects]
        arrows = [identity_name(bot), *A.arrows, *(f"{bot}→{x}" for x in A.objects)]
        dom = [0, *(d + 1 for d in A.dom), *([0] * nX)]
        cod = [0, *(c + 1 for c in A.cod), *(x + 1 for x in range(nX))]
        ident = [0, *(i + 1 for i in A.ident)]
        comp = {(0, 0): 0}
        for (g, f), h in A.comp.items():
            comp[(g + 1, f + 1)] = h + 1
        for x in range(nX):
            b = 1 + nA + x
            comp[(b, 0)] = b
            for g in A.out_arrows[x]:
                comp[(g + 1, b)] = 1 + nA + A.cod[g]
        TA = FinCategory(f"T{A.name}", objects, arrows, dom, cod, ident, comp)
        self._cache[A] = TA
        return TA

    def unit(self, A):
        TA = self.apply(A)
        return Functor(A, TA, tuple(x + 1 for x in range(A.n_objects)), tuple(a + 1 for a in range(A.n_arrows)))

    def on_functor(self, F: Functor) -> Functor:
        A, B = F.source, F.target
        TA, TB = self.apply(A), self.apply(B)
        obj = (0, *(y + 1 for y in F.obj))
        arr = (0, *(b + 1 for b in F.arr), *(1 + B.n_arrows + y for y in F.obj))
        return Functor(TA, TB, obj, arr)

    def on_nat(self, alpha: NatTrans) -> NatTrans:
        return NatTrans(
            self.on_functor(alpha.source),
            self.on_functor(alpha.target),
            (0, *(c + 1 for c in alpha.comp)),
        )

    def mult(self, A):
        TA = self.apply(A)
        TTA = self.apply(TA)
        nA = A.n_arrows
        # outer bottom arrows: ⊥'→⊥ collapses to id_⊥, ⊥'→(x+1) to ⊥→x
        outer = (0, *(1 + nA + x for x in range(A.n_objects)))
        obj = (0, *range(TA.n_objects))
        arr = (0, *range(TA.n_arrows), *outer)
        return Functor(TTA, TA, obj, arr)

    def delta(self, A):
        TA = self.apply(A)
        TTA = self.apply(TA)
        src, tgt = self.on_functor(self.unit(A)), self.unit(TA)
        comps = (1 + TA.n_arrows, *(TTA.ident[x + 2] for x in range(A.n_objects)))
        return NatTrans(src, tgt, comps)


class TruncatedDeltaEmptyMonad(TwoMonad):
    """Completion under the empty tensor, cut off at depth N.

    Objects (a, n) with 0 ≤ n ≤ N sit at index n·|A| + a.  Level 0 is a copy
    of A; every (a, n) with n > 0 is initial, with exactly one arrow to each
    object, and nothing from level 0 reaches a higher level.  The
    multiplication adds depths and caps them at N.
    """

    def __init__(self, depth: int):
        if depth < 1:
            raise ValueError("depth must be at least 1")
        self.depth = depth
        self.name = f"delta-empty[N={depth}]"
        self._cache: dict[FinCategory, FinCategory] = {}

    def index(self, A: FinCategory, a: int, n: int) -> int:
        return n * A.n_objects + a

    def level(self, A: FinCategory, x: int) -> tuple[int, int]:
        return x % A.n_objects, x // A.n_objects

    def unique_arrow(self, A: FinCategory, x: int, y: int) -> int:
        """The arrow x → y out of an object x of positive depth."""
        nA, nT = A.n_objects, (self.depth + 1) * A.n_objects
        return A.n_arrows + (x - nA) * nT + y

    def apply(self, A: FinCategory) -> FinCategory:
        TA = self._cache.get(A)
        if TA is not None:
            return TA
        N, nA = self.depth, A.n_objects
        nT = (N + 1) * nA
        names = [f"({A.objects[a]},{n})" for n in range(N + 1) for a in range(nA)]
        arrows = list(A.arrows)
        dom, cod = list(A.dom), list(A.cod)
        ident = list(A.ident)
        comp = dict(A.comp)
        for x in range(nA, nT):
            ident.append(None)
        for x in range(nA, nT):
            for y in range(nT):
                u = len(arrows)
                arrows.append(identity_name(names[x]) if x == y else f"!{names[x]}->{names[y]}")
                dom.append(x)
                cod.append(y)
                if x == y:
                    ident[x] = u
        base = A.n_arrows
        for x in range(nA, nT):
            for y in range(nT):
                u = base + (x - nA) * nT + y
                for g in range(len(arrows)):
                    if dom[g] == y:
                        comp[(g, u)] = base + (x - nA) * nT + cod[g]
        TA = FinCategory(f"Δ{N}{A.name}", names, arrows, dom, cod, ident, comp)
        self._cache[A] = TA
        return TA

    def unit(self, A):
        TA = self.apply(A)
        return Functor(A, TA, tuple(range(A.n_objects)), tuple(range(A.n_arrows)))

    def _functor_from_objects(self, A: FinCategory, TA: FinCategory, T2: FinCategory, obj, level0_arr) -> Functor:
        arr = list(level0_arr)
        for u in range(A.n_arrows, TA.n_arrows):
            x, y = TA.dom[u], TA.cod[u]
            hom = T2.hom(obj[x], obj[y])
            if len(hom) != 1:
                raise ShapeMismatch("image of an initial object is not initial")
            arr.append(hom[0])
        return Functor(TA, T2, tuple(obj), tuple(arr))

    def on_functor(self, F: Functor) -> Functor:
        A, B = F.source, F.target
        TA, TB = self.apply(A), self.apply(B)
        obj = [self.index(B, F.obj[a], n) for n in range(self.depth + 1) for a in range(A.n_objects)]
        return self._functor_from_objects(A, TA, TB, obj, F.arr)

    def on_nat(self, alpha: NatTrans) -> NatTrans:
        F, G = alpha.source, alpha.target
        A = F.source
        TF, TG = self.on_functor(F), self.on_functor(G)
        TB = TF.target
        comps = list(alpha.comp)
        for x in range(A.n_objects, TF.source.n_objects):
            comps.append(TB.hom(TF.obj[x], TG.obj[x])[0])
        return NatTrans(TF, TG, tuple(comps))

    def mult(self, A):
        TA = self.apply(A)
        TTA = self.apply(TA)
        N, nT = self.depth, TA.n_objects
        obj = []
        for k in range(N + 1):
            for x in range(nT):
                a, n = self.level(A, x)
                obj.append(self.index(A, a, min(n + k, N)))
        return self._functor_from_objects(TA, TTA, TA, obj, range(TA.n_arrows))

    def delta(self, A):
        TA = self.apply(A)
        TTA = self.apply(TA)
        src, tgt = self.on_functor(self.unit(A)), self.unit(TA)
        comps = tuple(TTA.hom(src.obj[x], tgt.obj[x])[0] for x in range(TA.n_objects))
        return NatTrans(src, tgt, comps)


INIT = InitCompletionMonad()


def init_completion(A: FinCategory) -> FinCategory:
    """A with a strict initial object ⊥ (object 0) adjoined."""
    return INIT.apply(A)


# ---------------------------------------------------------------------------
# the transferred factorisation

_SYSTEMS: dict[int, CommaSystem] = {}


def transferred_system(M: TwoMonad) -> CommaSystem:
    S = _SYSTEMS.get(id(M))
    if S is None or S.monad is not M:
        S = _SYSTEMS[id(M)] = CommaSystem(M, M.name)
    return S


def transferred_factor(M: TwoMonad, f: Functor) -> FactoredMorphism:
    """Kf = Tf ↓ i_B with Lf = (i_A, f, 1) and Rf the second projection."""
    return transferred_system(M).factor(f)


register("init-completion", lambda: transferred_system(INIT))


def check_simplicity_witness(M: TwoMonad, f: Functor) -> AdjunctionData | None:
    """The coretract adjunction T(Lf) ⊣ m_A∘T(q_f) with identity unit, or None.

    The counit is searched exhaustively and must be unique.
    """
    fm = transferred_factor(M, f)
    TL = M.on_functor(fm.L)
    r = M.mult(f.source) @ M.on_functor(fm.q)
    one_TA = identity_functor(TL.source)
    if r @ TL != one_TA:
        return None
    TK = TL.target
    fixed = set(TL.obj)
    TA = r.target

    def ok(X: int, c: int) -> bool:
        if X in fixed and c != TK.ident[X]:
            return False
        return r.arr[c] == TA.ident[r.obj[X]]

    found = [
        e for e in iter_nat_trans(TL @ r, identity_functor(TK), component_filter=ok) if _counit_ok(TL, r, e)
    ]
    if not found:
        return None
    if len(found) > 1:
        raise WitnessNotFound(f"{len(found)} counits for the simplicity adjunction at {f.label()}")
    return AdjunctionData(TL, r, identity_nat(one_TA), found[0])


def _counit_ok(TL: Functor, r: Functor, eps: NatTrans) -> bool:
    TK = TL.target
    return all(eps.comp[TL.obj[x]] == TK.ident[TL.obj[x]] for x in range(TL.source.n_objects))


class CorruptedMultMonad(InitCompletionMonad):
    """Init completion whose multiplication sends everything to ⊥."""

    name = "init-completion[corrupted m]"

    def mult(self, A):
        TA = self.apply(A)
        TTA = self.apply(TA)
        return Functor(TTA, TA, (0,) * TTA.n_objects, (0,) * TTA.n_arrows)


def f_embedding_check(M: TwoMonad, f: Functor) -> tuple[Functor, NatTrans] | None:
    """(r, α): r a T-algebra map TB → TA with r∘Tf = 1, α: Tf∘r ⇒ 1 with
    α·Tf = 1 and r·α = 1.  None when no such pair exists."""
    Tf = M.on_functor(f)
    mA, mB = M.mult(f.source), M.mult(f.target)
    for r, alpha in iter_laris(Tf, full=True):
        if r @ mB == mA @ M.on_functor(r):
            return r, alpha
    return None


def f_embedding_agreement(M: TwoMonad, corpus) -> Report:
    """f is an F-embedding exactly when it carries an L-coalgebra."""
    S = transferred_system(M)
    rep = Report(f"F-embeddings vs L-coalgebras [{M.name}]")
    for f in corpus:
        emb = f_embedding_check(M, f) is not None
        co = next(iter_coalgebras(S, f), None) is not None
        rep.add("F-embedding ⇔ L-coalgebra", f.label(), emb == co, {"embedding": emb, "coalgebra": co})
    return rep


# ---------------------------------------------------------------------------
# instance laws of the transferred system


def check_terminal_factor(M: TwoMonad, A: FinCategory) -> Report:
    """K(A → 1) ≅ TA through q, with q∘Lf = i_A and q∘π = m_A∘T(q)∘q_R."""
    from ..fincat.constructions import to_terminal

    f = to_terminal(A)
    fm = transferred_factor(M, f)
    rep = Report(f"K(A→1) ≅ TA [{M.name}]")
    subj = A.name
    rep.add("q is an isomorphism", subj, fm.q.is_isomorphism())
    rep.add("q∘Lf = i_A", subj, fm.q @ fm.L == M.unit(A))
    fr = transferred_factor(M, fm.R)
    rep.add("q∘π = m∘T(q)∘q_R", subj, fm.q @ fm.pi == M.mult(A) @ M.on_functor(fm.q) @ fr.q)
    return rep


def fibre_comparison(f: Functor, b: int) -> Functor:
    """T(f↓b) → (Kf)_b, the explicit comparison sending ⊥ to (⊥, !, b)."""
    B = f.target
    fm = transferred_factor(INIT, f)
    pb = pullback_category(fm.R, point(B, b))
    cone = fm.cone
    iB = INIT.unit(B)
    sl = comma_category(f, point(B, b))
    Tsl = INIT.apply(sl.apex)

    def kobj(x: int, beta: int) -> int:
        return pb.object_index[(cone.object_index[(x, beta, b)], 0)]

    bot_to_b = INIT.bottom_arrow(B, b)
    obj = [kobj(0, bot_to_b)]
    for Y in range(sl.apex.n_objects):
        a, beta, _ = sl.triple(Y)
        obj.append(kobj(a + 1, iB.arr[beta]))
    arr = []
    idb = B.ident[b]
    for u in range(Tsl.n_arrows):
        x, y = Tsl.dom[u], Tsl.cod[u]
        if u == 0:
            h = 0
        elif u <= sl.apex.n_arrows:
            h = sl.proj_left.arr[u - 1] + 1
        else:
            h = INIT.bottom_arrow(f.source, sl.proj_left.obj[y - 1])
        X, Y = pb.proj_left.obj[obj[x]], pb.proj_left.obj[obj[y]]
        K_arrow = cone.arrow_index[(X, Y, h, idb)]
        arr.append(pb.arrow_index[(K_arrow, 0)])
    return check_functor(Functor(Tsl, pb.apex, tuple(obj), tuple(arr)))


def check_fibre_law(f: Functor) -> Report:
    """Each fibre of the transferred Rf is the init completion of f↓b."""
    rep = Report("fibres of Rf are T(f↓b)")
    for b in range(f.target.n_objects):
        subj = f"{f.label()} over {f.target.objects[b]}"
        try:
            c = fibre_comparison(f, b)
        except Exception as e:  # noqa: BLE001 - reported as a failure
            rep.add("comparison functor", subj, False, str(e))
            continue
        rep.add("comparison is an isomorphism", subj, c.is_isomorphism())
    return rep


def fibre_algebra(g: Functor, b: int) -> tuple[Functor, Functor]:
    """For the transferred Rg: the fibre inclusion z_b and the T-algebra
    structure on (Kg)_b choosing (⊥, !, b) as initial object."""
    B = g.target
    fm = transferred_factor(INIT, g)
    pb = pullback_category(fm.R, point(B, b))
    F = pb.apex
    bot = pb.object_index[(fm.cone.object_index[(0, INIT.bottom_arrow(B, b), b)], 0)]
    TF = INIT.apply(F)
    obj = (bot, *range(F.n_objects))
    outs = []
    for x in range(F.n_objects):
        hom = F.hom(bot, x)
        if len(hom) != 1:
            raise WitnessNotFound(f"(⊥, !, {B.objects[b]}) is not initial in its fibre")
        outs.append(hom[0])
    arr = (F.ident[bot], *range(F.n_arrows), *outs)
    return pb.proj_left, Functor(TF, F, obj, arr)


def check_fibre_algebra_morphisms(g: Functor) -> Report:
    """q_g∘z_b: (Kg)_b → TA is a morphism of T-algebras for every b."""
    rep = Report("fibre projections are algebra morphisms")
    fm = transferred_factor(INIT, g)
    A = g.source
    for b in range(g.target.n_objects):
        subj = f"{g.label()} over {g.target.objects[b]}"
        z, a = fibre_algebra(g, b)
        F = z.source
        ok_alg = a @ INIT.unit(F) == identity_functor(F) and a @ INIT.mult(F) == a @ INIT.on_functor(a)
        rep.add("fibre algebra", subj, ok_alg)
        qz = fm.q @ z
        rep.add("q∘z is an algebra morphism", subj, qz @ a == INIT.mult(A) @ INIT.on_functor(qz))
    return rep
