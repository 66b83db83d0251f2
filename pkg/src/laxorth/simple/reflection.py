"""Idempotent monads on a single finite category and their simplicity.

For a reflection T with unit η and an arrow f: A → B, Kf is the pullback of
Tf: TA → TB along η_B and ℓ_f: A → Kf is induced by (η_A, f).  T is simple
when every Tℓ_f is invertible; then f = Rf∘ℓ_f is an orthogonal
factorisation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations, product
from typing import Iterator

from ..awfs import FactoredMorphism, FactorizationSystem
from ..base import Arrow, LocallyDiscrete
from ..errors import MissingPullback, NotSimple, ShapeMismatch
from ..fincat.constructions import poset
from ..fincat.core import FinCategory, Functor, NatTrans, identity_functor
from ..fincat.enumerate import iter_functors, iter_nat_trans
from ..lifting import orthogonality_witness
from ..report import Report


@dataclass(frozen=True)
class PullbackData:
    apex: int
    left: int  # apex → dom u
    right: int  # apex → dom v


def find_pullback(C: FinCategory, u: int, v: int) -> PullbackData | None:
    """A pullback of the cospan u: x → z ← y: v, found by brute force.

    Among universal cones those with identity legs are preferred, right leg
    first, so that trivial pullbacks come out as identities.
    """
    x, y = C.dom[u], C.dom[v]
    if C.cod[u] != C.cod[v]:
        raise ShapeMismatch("not a cospan")
    cones = [
        (P, p, q)
        for P in range(C.n_objects)
        for p in C.hom(P, x)
        for q in C.hom(P, y)
        if C.comp[(u, p)] == C.comp[(v, q)]
    ]
    cones.sort(key=lambda c: (not C.is_identity(c[2]), not C.is_identity(c[1]), c))
    for P, p, q in cones:
        if all(
            sum(1 for m in C.hom(W, P) if C.comp[(p, m)] == w1 and C.comp[(q, m)] == w2) == 1
            for W, w1, w2 in cones
        ):
            return PullbackData(P, p, q)
    return None


def mediate(C: FinCategory, pb: PullbackData, w1: int, w2: int) -> int:
    W = C.dom[w1]
    hits = [m for m in C.hom(W, pb.apex) if C.comp[(pb.left, m)] == w1 and C.comp[(pb.right, m)] == w2]
    if len(hits) != 1:
        raise ShapeMismatch("cone does not factor uniquely through the pullback")
    return hits[0]


@dataclass(eq=False)
class ReflectionMonad:
    """An idempotent monad (T, η, m) on a finite category."""

    name: str
    T: Functor
    unit: NatTrans
    mult: NatTrans

    def __post_init__(self):
        C = self.T.source
        if self.T.target != C or not self.unit.source.is_identity() or self.unit.target != self.T:
            raise ShapeMismatch("unit must be a transformation 1 ⇒ T on a single category")
        if self.mult.source != self.T @ self.T or self.mult.target != self.T:
            raise ShapeMismatch("multiplication must be a transformation TT ⇒ T")

    @property
    def base(self) -> FinCategory:
        return self.T.source

    def law_report(self) -> Report:
        C, T = self.base, self.T
        rep = Report(f"monad laws [{self.name}]")
        eta, mu = self.unit.comp, self.mult.comp
        for x in range(C.n_objects):
            Tx = T.obj[x]
            subj = C.objects[x]
            rep.add("m∘ηT = 1", subj, C.comp[(mu[x], eta[Tx])] == C.ident[Tx])
            rep.add("m∘Tη = 1", subj, C.comp[(mu[x], T.arr[eta[x]])] == C.ident[Tx])
            rep.add("m∘mT = m∘Tm", subj, C.comp[(mu[x], mu[Tx])] == C.comp[(mu[x], T.arr[mu[x]])])
            rep.add("m invertible", subj, C.is_iso(mu[x]))
        return rep

    @cached_property
    def inverted(self) -> frozenset[int]:
        """Arrows sent to isomorphisms by T."""
        C = self.base
        return frozenset(a for a in range(C.n_arrows) if C.is_iso(self.T.arr[a]))


def reflection_from_unit(name: str, T: Functor, eta: NatTrans) -> ReflectionMonad | None:
    """The idempotent monad with unit η, when Tη = ηT is invertible."""
    C = T.source
    comps = []
    for x in range(C.n_objects):
        e = eta.comp[T.obj[x]]
        if T.arr[eta.comp[x]] != e:
            return None
        inv = C.inverse(e)
        if inv is None:
            return None
        comps.append(inv)
    return ReflectionMonad(name, T, eta, NatTrans(T @ T, T, tuple(comps)))


def iter_idempotent_monads(C: FinCategory, prefix: str = "") -> Iterator[ReflectionMonad]:
    """Every idempotent monad on C (brute force over endofunctors and units)."""
    one = identity_functor(C)
    for i, T in enumerate(iter_functors(C, C)):
        for j, eta in enumerate(iter_nat_trans(one, T)):
            M = reflection_from_unit(f"{prefix or C.name}#{i}.{j}", T, eta)
            if M is not None:
                yield M


def reflect_onto(C: FinCategory, keep, name: str | None = None) -> ReflectionMonad | None:
    """The reflection onto the full subcategory on ``keep``, if it exists.

    Objects of ``keep`` get identity units, so the subcategory is replete
    only up to that choice.
    """
    keep = sorted(set(keep))
    obj, eta = [], []
    for x in range(C.n_objects):
        if x in keep:
            obj.append(x)
            eta.append(C.ident[x])
            continue
        hit = None
        for d in keep:
            for e in C.hom(x, d):
                if all(
                    sum(1 for t in C.hom(d, d2) if C.comp[(t, e)] == w) == 1
                    for d2 in keep
                    for w in C.hom(x, d2)
                ):
                    hit = (d, e)
                    break
            if hit:
                break
        if hit is None:
            return None
        obj.append(hit[0])
        eta.append(hit[1])
    arr = []
    for a in range(C.n_arrows):
        x, y = C.dom[a], C.cod[a]
        want = C.comp[(eta[y], a)]
        t = [t for t in C.hom(obj[x], obj[y]) if C.comp[(t, eta[x])] == want]
        if len(t) != 1:
            return None
        arr.append(t[0])
    T = Functor(C, C, tuple(obj), tuple(arr))
    label = name or f"{C.name}→{{{','.join(C.objects[d] for d in keep)}}}"
    return reflection_from_unit(label, T, NatTrans(identity_functor(C), T, tuple(eta)))


# ---------------------------------------------------------------------------
# simplicity


@dataclass(frozen=True)
class Comparison:
    """Kf as a pullback of Tf along η_B, with ℓ: A → Kf."""

    f: int
    pullback: PullbackData
    ell: int


def comparison(M: ReflectionMonad, f: int) -> Comparison:
    C, T, eta = M.base, M.T, M.unit.comp
    A, B = C.dom[f], C.cod[f]
    pb = find_pullback(C, T.arr[f], eta[B])
    if pb is None:
        raise MissingPullback(f"{M.name}: no pullback of T({C.arrows[f]}) along η_{C.objects[B]}")
    return Comparison(f, pb, mediate(C, pb, eta[A], f))


def is_simple_reflection(M: ReflectionMonad) -> Report:
    """Tℓ_f invertible for every arrow f; arrows without the pullback are
    listed under ``facts['unsupported']`` and do not count."""
    C = M.base
    rep = Report(f"simple reflection [{M.name}]")
    unsupported = []
    for f in range(C.n_arrows):
        try:
            cmp = comparison(M, f)
        except MissingPullback:
            unsupported.append(C.arrows[f])
            continue
        Tl = M.T.arr[cmp.ell]
        rep.add("Tℓ invertible", C.arrows[f], C.is_iso(Tl), {"Tℓ": C.arrows[Tl]})
    rep.facts["unsupported"] = unsupported
    return rep


def t_iso_coreflective(M: ReflectionMonad) -> Report:
    """Every arrow f has a coreflection into the T-inverted arrows, found by
    enumerating counit squares e → f and checking the universal property."""
    C = M.base
    inv = sorted(M.inverted)
    rep = Report(f"T-Iso coreflective [{M.name}]")

    def squares(e: int, f: int):
        for u in C.hom(C.dom[e], C.dom[f]):
            for v in C.hom(C.cod[e], C.cod[f]):
                if C.comp[(f, u)] == C.comp[(v, e)]:
                    yield u, v

    for f in range(C.n_arrows):
        found = None
        for e in inv:
            for u, v in squares(e, f):
                if all(
                    sum(
                        1
                        for x, y in squares(e2, e)
                        if C.comp[(u, x)] == u2 and C.comp[(v, y)] == v2
                    )
                    == 1
                    for e2 in inv
                    for u2, v2 in squares(e2, f)
                ):
                    found = (e, u, v)
                    break
            if found:
                break
        detail = None if found is None else {"coreflection": C.arrows[found[0]]}
        rep.add("coreflection exists", C.arrows[f], found is not None, detail)
    return rep


# ---------------------------------------------------------------------------
# the orthogonal factorisation of a simple reflection


class ReflectionSystem(FactorizationSystem):
    """f = Rf∘ℓ_f on the locally discrete 2-category of C."""

    def __init__(self, M: ReflectionMonad):
        super().__init__()
        self.monad = M
        self.base = LocallyDiscrete(M.base)
        self.name = f"reflection:{M.name}"
        self._cmp: dict[int, Comparison] = {}

    def corpus(self) -> list[Arrow]:
        return [self.base.arrow(a) for a in range(self.monad.base.n_arrows)]

    def comparison(self, f: Arrow) -> Comparison:
        c = self._cmp.get(f.index)
        if c is None:
            c = self._cmp[f.index] = comparison(self.monad, f.index)
        return c

    def _factor(self, f: Arrow) -> FactoredMorphism:
        C = self.monad.base
        c = self.comparison(f)
        return FactoredMorphism(f, Arrow(C, c.ell), c.pullback.apex, Arrow(C, c.pullback.right), self)

    def _on_square(self, f, g, h, k):
        C, T = self.monad.base, self.monad.T
        cf, cg = self.comparison(f), self.comparison(g)
        left = C.comp[(T.arr[h.index], cf.pullback.left)]
        right = C.comp[(k.index, cf.pullback.right)]
        return Arrow(C, mediate(C, cg.pullback, left, right))

    def sigma(self, fm: FactoredMorphism) -> Arrow:
        C, M = self.monad.base, self.monad
        Tl = M.T.arr[fm.L.index]
        inv = C.inverse(Tl)
        if inv is None:
            raise NotSimple(f"{M.name}: T(ℓ) is not invertible at {fm.f.label()}")
        cl = self.comparison(fm.L)
        K = fm.K
        return Arrow(C, mediate(C, cl.pullback, C.comp[(inv, M.unit.comp[K])], C.ident[K]))

    def pi(self, fm: FactoredMorphism) -> Arrow:
        C, M = self.monad.base, self.monad
        A = C.dom[fm.f.index]
        cf, cr = self.comparison(fm.f), self.comparison(fm.R)
        left = C.comp[(M.mult.comp[A], C.comp[(M.T.arr[cf.pullback.left], cr.pullback.left)])]
        return Arrow(C, mediate(C, cf.pullback, left, cr.pullback.right))


_ORTHOGONAL: dict[int, object] = {}


def simple_reflection_factor(M: ReflectionMonad, f) -> FactoredMorphism:
    """ℓ_f then Rf, after checking that M is simple and that every ℓ_f′ is
    orthogonal to every Rg′ in C."""
    if not is_simple_reflection(M).ok:
        raise NotSimple(f"{M.name} is not a simple reflection")
    S = _system(M)
    if isinstance(f, int):
        f = S.base.arrow(f)
    w = _ORTHOGONAL.get(id(M))
    if w is None:
        arrows = S.corpus()
        w = next(
            (
                {"f": a.label(), "g": b.label(), **v}
                for a in arrows
                for b in arrows
                if (v := orthogonality_witness(S.L(a), S.R(b), S.base)) is not None
            ),
            False,
        )
        _ORTHOGONAL[id(M)] = w
    if w:
        raise NotSimple(f"{M.name}: left and right classes are not orthogonal: {w}")
    fm = S.factor(f)
    if fm.L.index not in M.inverted:
        raise NotSimple(f"{M.name}: ℓ is not inverted by T at {f.label()}")
    return fm


_SYSTEMS: dict[int, ReflectionSystem] = {}


def _system(M: ReflectionMonad) -> ReflectionSystem:
    S = _SYSTEMS.get(id(M))
    if S is None or S.monad is not M:
        S = _SYSTEMS[id(M)] = ReflectionSystem(M)
    return S


# ---------------------------------------------------------------------------
# named instances and enumeration


def chain(n: int = 3) -> FinCategory:
    names = [str(i) for i in range(n)]
    return poset(f"chain{n}", names, [(names[i], names[i + 1]) for i in range(n - 1)])


def _named() -> dict[str, ReflectionMonad]:
    C = chain(3)
    return {
        "chain": reflect_onto(C, [2], "chain"),
        "chain-upper": reflect_onto(C, [1, 2], "chain-upper"),
        "identity": reflect_onto(C, range(3), "identity"),
    }


_NAMED: dict[str, ReflectionMonad] | None = None


def named_reflections() -> dict[str, ReflectionMonad]:
    global _NAMED
    if _NAMED is None:
        _NAMED = _named()
    return dict(_NAMED)


def reflection_handle(name: str) -> ReflectionSystem:
    refl = named_reflections()
    if name not in refl:
        raise KeyError(f"unknown reflection {name!r}; known: {', '.join(sorted(refl))}")
    return _system(refl[name])


def iter_posets(max_size: int = 4) -> Iterator[FinCategory]:
    """Every finite poset with at most ``max_size`` elements, one per
    isomorphism class."""
    for n in range(max_size + 1):
        pairs = list(combinations(range(n), 2))
        seen = set()
        for bits in product((0, 1, 2), repeat=len(pairs)):
            le = {(i, i) for i in range(n)}
            for (i, j), b in zip(pairs, bits):
                if b == 1:
                    le.add((i, j))
                elif b == 2:
                    le.add((j, i))
            if any((i, k) not in le for (i, j) in le for (j2, k) in le if j == j2):
                continue
            canon = min(
                tuple(sorted((p[i], p[j]) for i, j in le)) for p in permutations(range(n))
            )
            if canon in seen:
                continue
            seen.add(canon)
            names = [str(i) for i in range(n)]
            yield poset(f"P{n}.{len(seen)}", names, [(names[i], names[j]) for i, j in le if i != j])


def iter_poset_reflections(max_size: int = 4) -> Iterator[ReflectionMonad]:
    """All reflections onto full subcategories of posets of bounded size."""
    for P in iter_posets(max_size):
        n = P.n_objects
        for r in range(n + 1):
            for keep in combinations(range(n), r):
                M = reflect_onto(P, keep)
                if M is not None:
                    yield M


@dataclass
class AgreementRow:
    monad: str
    simple: bool
    coreflective: bool
    unsupported: list[str] = field(default_factory=list)

    @property
    def supported(self) -> bool:
        return not self.unsupported

    @property
    def agree(self) -> bool:
        return self.simple == self.coreflective


def compare_simple_coreflective(M: ReflectionMonad) -> AgreementRow:
    s = is_simple_reflection(M)
    c = t_iso_coreflective(M)
    return AgreementRow(M.name, s.ok, c.ok, list(s.facts["unsupported"]))


def simple_coreflective_report(monads) -> Report:
    """Simplicity and T-Iso coreflectivity must agree wherever the pullbacks
    exist; instances lacking them are recorded, not compared."""
    rep = Report("simple ⇔ T-Iso coreflective")
    skipped = []
    for M in monads:
        row = compare_simple_coreflective(M)
        if not row.supported:
            skipped.append(row.monad)
            continue
        rep.add("verdicts agree", row.monad, row.agree, {"simple": row.simple, "coreflective": row.coreflective})
    rep.facts["unsupported"] = skipped
    return rep


def split_retract_category() -> FinCategory:
    """A six-object category carrying a non-simple reflection.

    D = {X, W, Y} is reflective, X is a proper retract of W (r∘s = 1,
    s∘r = e) and P = X ×_Y B.  For ℓ: A → P the reflection sends ℓ to s.
    """
    from ..fincat.core import build_category

    arrows = [
        ("s", "X", "W"), ("yX", "X", "Y"),
        ("e", "W", "W"), ("r", "W", "X"), ("yW", "W", "Y"),
        ("eB", "B", "Y"),
        ("p", "P", "X"), ("p2", "P", "B"), ("eP", "P", "W"), ("sp", "P", "W"), ("yP", "P", "Y"),
        ("eA", "A", "X"), ("f", "A", "B"), ("l", "A", "P"), ("seA", "A", "W"), ("yA", "A", "Y"),
    ]
    comps = {
        ("e", "s"): "s", ("r", "s"): "id_X", ("yW", "s"): "yX",
        ("e", "e"): "e", ("r", "e"): "r", ("yW", "e"): "yW",
        ("s", "r"): "e", ("yX", "r"): "yW",
        ("s", "p"): "sp", ("yX", "p"): "yP", ("eB", "p2"): "yP",
        ("e", "eP"): "sp", ("r", "eP"): "p", ("yW", "eP"): "yP",
        ("e", "sp"): "sp", ("r", "sp"): "p", ("yW", "sp"): "yP",
        ("s", "eA"): "seA", ("yX", "eA"): "yA", ("eB", "f"): "yA",
        ("p", "l"): "eA", ("p2", "l"): "f", ("eP", "l"): "seA", ("sp", "l"): "seA", ("yP", "l"): "yA",
        ("e", "seA"): "seA", ("r", "seA"): "eA", ("yW", "seA"): "yA",
    }
    return build_category("retract", ["A", "P", "B", "X", "W", "Y"], arrows, comps)


def fuzz_pool() -> list[FinCategory]:
    """Catalogue categories, their opposites, small coproducts and the
    retract category."""
    from ..fincat.catalog import catalogue
    from ..fincat.constructions import coproduct, opposite

    cats = list(catalogue().values())
    pool = cats + [opposite(C) for C in cats]
    for i, A in enumerate(cats):
        for B in cats[i:]:
            if A.n_objects + B.n_objects <= 4:
                pool.append(coproduct([A, B], ["x", "y"])[0])
    pool.append(split_retract_category())
    return pool


def find_non_simple(pool=None) -> tuple[ReflectionMonad, str] | None:
    """First idempotent monad with a supported arrow f whose Tℓ_f is not
    invertible, with that arrow's name."""
    for C in pool if pool is not None else fuzz_pool():
        for M in iter_idempotent_monads(C):
            rep = is_simple_reflection(M)
            bad = rep.first_failure()
            if bad is not None:
                return M, bad.subject
    return None
