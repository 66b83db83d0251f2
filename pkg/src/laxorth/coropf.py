"""The coreflection–opfibration factorisation on finite categories.

f: A → B factors through the comma category Kf = f ↓ B of triples
(a, β: fa → b, b): Lf(a) = (a, 1, fa) and Rf is the projection to B.
Coalgebras are left adjoint right inverses, algebras are split
opfibrations.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .awfs import (
    AlgebraStruct,
    CoalgebraStruct,
    CommaSystem,
    FactoredMorphism,
    compose_coalgebras,
    iter_algebras,
    iter_coalgebras,
    register,
    validate_algebra,
    validate_coalgebra,
)
from .errors import AlgebraInvalid, CoalgebraInvalid, NotARetraction, ShapeMismatch, WitnessNotFound
from .fincat.adjunction import iter_laris, verify_adjunction
from .fincat.constructions import CommaCone
from .fincat.core import (
    AdjunctionData,
    Functor,
    NatTrans,
    identity_functor,
    identity_nat,
    nat_violation,
    post,
    pre,
)
from .fincat.enumerate import iter_functors
from .report import Report
from .twomonad import IDENTITY

COROPF = CommaSystem(IDENTITY, "coropf")
register("coropf", lambda: COROPF)


@dataclass(frozen=True)
class CoropfFactored:
    factored: FactoredMorphism
    q: Functor
    nu: NatTrans

    @property
    def L(self) -> Functor:
        return self.factored.L

    @property
    def K(self):
        return self.factored.K

    @property
    def R(self) -> Functor:
        return self.factored.R

    @property
    def cone(self) -> CommaCone:
        return self.factored.cone

    def omega(self) -> NatTrans:
        """Counit of Lf ⊣ q_f: the cell with q_f·ω = 1 and Rf·ω = ν_f."""
        fm = self.factored
        K = fm.K
        idx = fm.cone.arrow_index
        LQ = fm.L @ self.q
        comps = tuple(
            idx[(LQ.obj[X], X, fm.f.source.ident[self.q.obj[X]], self.nu.comp[X])]
            for X in range(K.n_objects)
        )
        return NatTrans(LQ, identity_functor(K), comps)


def factor_coropf(f: Functor) -> CoropfFactored:
    fm = COROPF.factor(f)
    return CoropfFactored(fm, fm.cone.proj_left, fm.cone.cell)


def sigma_coropf(f: Functor) -> Functor:
    return COROPF.factor(f).sigma


def pi_coropf(f: Functor) -> Functor:
    return COROPF.factor(f).pi


# ---------------------------------------------------------------------------
# coalgebras and left adjoint right inverses


@dataclass(frozen=True)
class LariStruct:
    f: Functor
    v: Functor
    xi: NatTrans

    def violations(self, full: bool = True) -> list[str]:
        f, v, xi = self.f, self.v, self.xi
        if v.source != f.target or v.target != f.source:
            return ["v: cod f → dom f"]
        bad = []
        if v @ f != identity_functor(f.source):
            bad.append("v∘f = 1")
        if xi.source != f @ v or not xi.target.is_identity():
            bad.append("ξ: f∘v ⇒ 1")
            return bad
        if nat_violation(xi) is not None:
            bad.append("ξ natural")
        if not pre(xi, f).is_identity():
            bad.append("ξ·f = 1")
        if full and not post(v, xi).is_identity():
            bad.append("v·ξ = 1")
        return bad

    def is_valid(self, full: bool = True) -> bool:
        return not self.violations(full)

    def adjunction(self) -> AdjunctionData:
        return AdjunctionData(self.f, self.v, identity_nat(identity_functor(self.f.source)), self.xi)


def coalgebra_to_lari(co: CoalgebraStruct, full: bool = True) -> LariStruct:
    """v = q_f∘s and ξ = ν_f·s."""
    rep = validate_coalgebra(COROPF, co, full)
    if not rep.ok:
        raise CoalgebraInvalid(f"not a coalgebra: {rep.failed_names()}")
    cf = factor_coropf(co.carrier)
    s = co.structure
    return LariStruct(co.carrier, cf.q @ s, pre(cf.nu, s))


def lari_to_coalgebra(l: LariStruct) -> CoalgebraStruct:
    """s is the functor into the comma with components (v, 1, ξ)."""
    cf = factor_coropf(l.f)
    s = cf.cone.mediate(l.v, identity_functor(l.f.target), l.xi.comp)
    return CoalgebraStruct(l.f, s)


def iter_lari_structs(f: Functor, full: bool = True) -> Iterator[LariStruct]:
    for v, xi in iter_laris(f, full):
        yield LariStruct(f, v, xi)


@dataclass
class BijectionCount:
    coalgebras: int
    laris: int
    round_trips: bool

    @property
    def ok(self) -> bool:
        return self.coalgebras == self.laris and self.round_trips


def coalgebra_lari_bijection(f: Functor, full: bool = True) -> BijectionCount:
    """Count both sides independently and check both round trips.

    With ``full`` the coalgebras are comonad coalgebras and the other side is
    LARIs; otherwise pointed coalgebras against strong deformation retracts.
    """
    coalgs = list(iter_coalgebras(COROPF, f, full))
    laris = list(iter_lari_structs(f, full))
    trips = all(lari_to_coalgebra(coalgebra_to_lari(c, full)) == c for c in coalgs) and all(
        coalgebra_to_lari(lari_to_coalgebra(l), full) == l for l in laris
    )
    return BijectionCount(len(coalgs), len(laris), trips)


def compose_laris(l1: LariStruct, l2: LariStruct) -> LariStruct:
    """Composite of coretract adjunctions f ⊣ v and g ⊣ w: g∘f ⊣ v∘w with
    counit ζ∘(g·ξ·w)."""
    f, g = l1.f, l2.f
    if f.target != g.source:
        raise ShapeMismatch("adjunctions are not composable")
    inner = post(g, pre(l1.xi, l2.v))
    B = g.target
    comps = tuple(B.comp[(l2.xi.comp[x], inner.comp[x])] for x in range(B.n_objects))
    return LariStruct(g @ f, l1.v @ l2.v, NatTrans(g @ f @ l1.v @ l2.v, identity_functor(B), comps))


def composition_cross_check(f: Functor) -> Report:
    """Vertical composition of cofree coalgebras is composition of LARIs, and
    (1, π_f) is the unique coalgebra morphism L(Rf)∘Lf → Lf over (1, R²f)."""
    rep = Report("coalgebra composition vs LARI composition")
    cf = factor_coropf(f)
    fm = cf.factored
    fr = COROPF.factor(fm.R)
    c1 = CoalgebraStruct(fm.L, fm.sigma)
    c2 = CoalgebraStruct(fr.L, fr.sigma)
    comp = compose_coalgebras(COROPF, c1, c2)
    l1, l2 = coalgebra_to_lari(c1), coalgebra_to_lari(c2)
    lc = compose_laris(l1, l2)
    subj = f.label()
    rep.add("composite coalgebra is a coalgebra", subj, validate_coalgebra(COROPF, comp).ok)
    rep.add("composite coalgebra ↔ composite LARI", subj, coalgebra_to_lari(comp) == lc)
    rep.add("right adjoint of L(Rf)∘Lf is q_f∘q_{Rf}", subj, lc.v == cf.q @ fr.cone.proj_left)
    rep.add("q_f∘π_f = q_f∘q_{Rf}", subj, cf.q @ fm.pi == cf.q @ fr.cone.proj_left)

    def is_morphism(k: Functor) -> bool:
        # (1_A, k): L(Rf)∘Lf → Lf with h∘v = v′∘k and ξ′·k = k·ξ
        return l1.v @ k == lc.v and pre(l1.xi, k) == post(k, lc.xi)

    rep.add("(1, π_f) is a coalgebra morphism", subj, is_morphism(fm.pi))
    q, R = cf.q, fm.R
    Kf = fm.K
    cands = [
        [X for X in range(Kf.n_objects) if q.obj[X] == lc.v.obj[Y] and R.obj[X] == fr.R.obj[Y]]
        for Y in range(fr.K.n_objects)
    ]
    found = [
        k
        for k in iter_functors(
            fr.K, Kf, candidates=cands, arrow_filter=lambda u, w: q.arr[w] == lc.v.arr[u] and R.arr[w] == fr.R.arr[u]
        )
        if k @ fr.L @ fm.L == fm.L and is_morphism(k)
    ]
    rep.add("π_f is the unique such morphism", subj, found == [fm.pi], {"count": len(found)})
    return rep


# ---------------------------------------------------------------------------
# split opfibrations


def _is_cocartesian(f: Functor, chi: int) -> bool:
    A, B = f.source, f.target
    a, a1 = A.dom[chi], A.cod[chi]
    for psi in A.out_arrows[a]:
        a2 = A.cod[psi]
        for gamma in B.hom(f.obj[a1], f.obj[a2]):
            if B.comp[(gamma, f.arr[chi])] != f.arr[psi]:
                continue
            n = sum(1 for th in A.hom(a1, a2) if f.arr[th] == gamma and A.comp[(th, chi)] == psi)
            if n != 1:
                return False
    return True


Cleavage = dict  # (a, β) ↦ chosen cocartesian arrow out of a over β


def iter_split_cleavages(f: Functor) -> Iterator[Cleavage]:
    """All split cleavages of f, in canonical order."""
    A, B = f.source, f.target
    keys = [(a, beta) for a in range(A.n_objects) for beta in B.out_arrows[f.obj[a]]]
    cands = {
        (a, beta): [chi for chi in A.out_arrows[a] if f.arr[chi] == beta and _is_cocartesian(f, chi)]
        for a, beta in keys
    }
    choice: dict = {}

    def consistent() -> bool:
        for (a, beta), chi in choice.items():
            if B.is_identity(beta) and chi != A.ident[a]:
                return False
            a1 = A.cod[chi]
            for gamma in B.out_arrows[B.cod[beta]]:
                chi2 = choice.get((a1, gamma))
                whole = choice.get((a, B.comp[(gamma, beta)]))
                if chi2 is not None and whole is not None and whole != A.comp[(chi2, chi)]:
                    return False
        return True

    def go(i: int):
        if i == len(keys):
            yield dict(choice)
            return
        for chi in cands[keys[i]]:
            choice[keys[i]] = chi
            if consistent():
                yield from go(i + 1)
            del choice[keys[i]]

    yield from go(0)


def algebra_from_cleavage(f: Functor, cl: Cleavage) -> AlgebraStruct:
    """p(a, β, b) = β_*a; on arrows the factorisation through the chosen lift."""
    cf = factor_coropf(f)
    Kf, A = cf.K, f.source
    obj = []
    for X in range(Kf.n_objects):
        a, beta, _ = cf.cone.triple(X)
        obj.append(A.cod[cl[(a, beta)]])
    arr = []
    for u in range(Kf.n_arrows):
        X, Y = Kf.dom[u], Kf.cod[u]
        a, beta, _ = cf.cone.triple(X)
        a2, beta2, _ = cf.cone.triple(Y)
        h, k = cf.q.arr[u], cf.R.arr[u]
        target = A.comp[(cl[(a2, beta2)], h)]
        th = [
            t
            for t in A.hom(obj[X], obj[Y])
            if f.arr[t] == k and A.comp[(t, cl[(a, beta)])] == target
        ]
        if len(th) != 1:
            raise WitnessNotFound("chosen lift is not cocartesian")
        arr.append(th[0])
    return AlgebraStruct(f, Functor(Kf, A, tuple(obj), tuple(arr)))


def cleavage_from_algebra(alg: AlgebraStruct) -> Cleavage:
    """χ(a, β) = p((1_a, β): (a, 1, fa) → (a, β, b))."""
    f, p = alg.carrier, alg.structure
    cf = factor_coropf(f)
    A, B = f.source, f.target
    idx = cf.cone.arrow_index
    out = {}
    for a in range(A.n_objects):
        X = cf.L.obj[a]
        for beta in B.out_arrows[f.obj[a]]:
            Y = cf.cone.object_index[(a, beta, B.cod[beta])]
            out[(a, beta)] = p.arr[idx[(X, Y, A.ident[a], beta)]]
    return out


def split_opfib_structure(f: Functor) -> AlgebraStruct | None:
    """First algebra structure on f, built from a split cleavage when one
    exists.  Both routes are run and must agree."""
    first = next(iter_split_cleavages(f), None)
    searched = next(iter_algebras(COROPF, f), None)
    if (first is None) != (searched is None):
        raise WitnessNotFound("cleavage search and algebra search disagree on existence")
    if first is None:
        return None
    alg = algebra_from_cleavage(f, first)
    if not validate_algebra(COROPF, alg).ok:
        raise AlgebraInvalid("cleavage-built structure fails the algebra laws")
    return alg


def cleavage_algebra_agreement(f: Functor) -> Report:
    """Split cleavages and algebra structures on f are in bijection."""
    rep = Report("split cleavages vs algebras")
    cls = list(iter_split_cleavages(f))
    algs = list(iter_algebras(COROPF, f))
    from_cl = [algebra_from_cleavage(f, c) for c in cls]
    subj = f.label()
    rep.add("counts agree", subj, len(cls) == len(algs), {"cleavages": len(cls), "algebras": len(algs)})
    rep.add("cleavage structures are algebras", subj, sorted(map(_key, from_cl)) == sorted(map(_key, algs)))
    rep.add("round trip", subj, all(cleavage_from_algebra(a) == c for a, c in zip(from_cl, cls)))
    return rep


def _key(alg: AlgebraStruct):
    return alg.structure.obj, alg.structure.arr


# ---------------------------------------------------------------------------
# retracts and the comma retract adjunction


def retract_coalgebra(
    co: CoalgebraStruct,
    g: Functor,
    section: tuple[Functor, Functor],
    retraction: tuple[Functor, Functor],
) -> CoalgebraStruct:
    """Transport a pointed coalgebra on f to its retract g:
    v̄ = r₀∘v∘s₁ and ξ̄ = r₁·ξ·s₁."""
    f = co.carrier
    s0, s1 = section
    r0, r1 = retraction
    try:
        ok = (
            f @ s0 == s1 @ g
            and g @ r0 == r1 @ f
            and (r0 @ s0).is_identity()
            and (r1 @ s1).is_identity()
            and (r0 @ s0).source == g.source
            and (r1 @ s1).source == g.target
        )
    except ShapeMismatch:
        ok = False
    if not ok:
        raise NotARetraction("(r₀, r₁)∘(s₀, s₁) is not the identity square on g")
    l = coalgebra_to_lari(co, full=False)
    v = r0 @ l.v @ s1
    xi = pre(post(r1, l.xi), s1)
    bar = LariStruct(g, v, NatTrans(g @ v, identity_functor(g.target), xi.comp))
    out = lari_to_coalgebra(bar)
    if not validate_coalgebra(COROPF, out, full=False).ok:
        raise CoalgebraInvalid("transported structure is not a pointed coalgebra")
    return out


def comma_retract_adjunction(cone: CommaCone, adj: AdjunctionData) -> AdjunctionData:
    """For the comma ℓ ↓ t and ℓ ⊣ r, the retract adjunction p ⊣ s where
    p is the second projection, q∘s = r∘t, p∘s = 1 and ν·s = ε·t."""
    ell, t = cone.f, cone.g
    if adj.left != ell:
        raise ShapeMismatch("adjunction is not on the left leg of the comma")
    r, eta0, eps = adj.right, adj.unit, adj.counit
    A, X = ell.source, t.source
    p = cone.proj_right
    s = cone.mediate(r @ t, identity_functor(X), pre(eps, t).comp)
    sp = s @ p
    comps = []
    for Y in range(cone.apex.n_objects):
        a, beta, x = cone.triple(Y)
        h = A.comp[(r.arr[beta], eta0.comp[a])]
        comps.append(cone.arrow_index[(Y, sp.obj[Y], h, X.ident[x])])
    eta = NatTrans(identity_functor(cone.apex), sp, tuple(comps))
    return AdjunctionData(p, s, eta, identity_nat(p @ s))


def check_comma_retract(cone: CommaCone, adj: AdjunctionData) -> Report:
    out = comma_retract_adjunction(cone, adj)
    rep = verify_adjunction(out, cone.apex.name)
    rep.add("identity counit", cone.apex.name, out.is_retract)
    return rep
