"""Algebras of the init-completion factorisation as split opfibrations whose
fibres carry chosen initial objects preserved by every pushforward."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..awfs import AlgebraStruct, iter_algebras, free_algebra, validate_algebra
from ..coropf import Cleavage, _is_cocartesian
from ..errors import AlgebraInvalid, BundleInvalid
from ..fincat.core import Functor, functor_violation
from ..report import Report
from .initcomp import INIT, check_fibre_algebra_morphisms, fibre_algebra, transferred_system


@dataclass(eq=False)
class OpfibColimBundle:
    """g with a split cleavage χ(a, β) and a chosen initial object per fibre."""

    g: Functor
    cleavage: Cleavage
    initial: tuple[int, ...]
    report: Report = field(default=None, repr=False)

    def key(self):
        return self.g, tuple(sorted(self.cleavage.items())), self.initial

    def __eq__(self, other):
        return isinstance(other, OpfibColimBundle) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key()[1:])


def _fibre_objects(g: Functor, b: int) -> list[int]:
    return [a for a in range(g.source.n_objects) if g.obj[a] == b]


def validate_bundle(bd: OpfibColimBundle) -> Report:
    g, cl = bd.g, bd.cleavage
    A, B = g.source, g.target
    rep = Report(f"split opfibration with fibre initials on {g.label()}")
    subj = g.label()
    keys = {(a, beta) for a in range(A.n_objects) for beta in B.out_arrows[g.obj[a]]}
    if not rep.add("cleavage defined on every (a, β)", subj, set(cl) == keys):
        return rep
    if not rep.add("one chosen initial per object of the base", subj, len(bd.initial) == B.n_objects):
        return rep
    for (a, beta), chi in cl.items():
        s = f"χ({A.objects[a]}, {B.arrows[beta]})"
        if not rep.add("lift lies over β", s, A.dom[chi] == a and g.arr[chi] == beta):
            continue
        rep.add("lift is cocartesian", s, _is_cocartesian(g, chi))
        if B.is_identity(beta):
            rep.add("identity lifts to identity", s, chi == A.ident[a])
        a1 = A.cod[chi]
        for gamma in B.out_arrows[B.cod[beta]]:
            whole = cl[(a, B.comp[(gamma, beta)])]
            rep.add("split: χ(β_*a, γ)∘χ(a, β) = χ(a, γβ)", s, A.comp[(cl[(a1, gamma)], chi)] == whole)
    for b in range(B.n_objects):
        s = f"fibre over {B.objects[b]}"
        z = bd.initial[b]
        if not rep.add("chosen initial lies in its fibre", s, g.obj[z] == b):
            continue
        fib = _fibre_objects(g, b)
        ok = all(
            sum(1 for t in A.hom(z, x) if g.arr[t] == B.ident[b]) == 1 for x in fib
        )
        rep.add("chosen initial is initial in the fibre", s, ok)
        for beta in B.out_arrows[b]:
            rep.add(
                "pushforward preserves the chosen initial",
                f"{B.arrows[beta]} from {B.objects[b]}",
                A.cod[cl[(z, beta)]] == bd.initial[B.cod[beta]],
            )
    return rep


def slice_initial_uniqueness(g: Functor) -> Report:
    """In each fibre of Rg, (⊥, !, b) is the only initial object over ⊥."""
    fm = transferred_system(INIT).factor(g)
    rep = Report("unique chosen initial in the fibres of Rg")
    for b in range(g.target.n_objects):
        z, _ = fibre_algebra(g, b)
        F = z.source
        hits = [
            Y for Y in range(F.n_objects) if fm.q.obj[z.obj[Y]] == 0 and F.is_initial(Y)
        ]
        rep.add("exactly one initial over ⊥", f"{g.label()} over {g.target.objects[b]}", len(hits) == 1, {"count": len(hits)})
    return rep


def ralg_to_opfib_colim(alg: AlgebraStruct) -> OpfibColimBundle:
    """χ(a, β) = p((1, β): Lg(a) → (a, β, b)) and 0_b = p(⊥, !, b)."""
    S = transferred_system(INIT)
    v = validate_algebra(S, alg)
    if not v.ok:
        raise AlgebraInvalid(f"not an algebra: {v.failed_names()}")
    g, p = alg.carrier, alg.structure
    fm = S.factor(g)
    A, B = g.source, g.target
    cone = fm.cone
    iB = INIT.unit(B)
    cl: Cleavage = {}
    for a in range(A.n_objects):
        X = fm.L.obj[a]
        for beta in B.out_arrows[g.obj[a]]:
            Y = cone.object_index[(a + 1, iB.arr[beta], B.cod[beta])]
            cl[(a, beta)] = p.arr[cone.arrow_index[(X, Y, A.ident[a] + 1, beta)]]
    initial = tuple(
        p.obj[cone.object_index[(0, INIT.bottom_arrow(B, b), b)]] for b in range(B.n_objects)
    )
    bd = OpfibColimBundle(g, cl, initial)
    rep = validate_bundle(bd)
    rep.extend(check_fibre_algebra_morphisms(g))
    rep.extend(slice_initial_uniqueness(g))
    bd.report = rep
    return bd


def opfib_colim_to_ralg(bd: OpfibColimBundle) -> AlgebraStruct:
    """Rebuild p: Kg → A.  p(⊥, !, b) = 0_b and p(a, β, b) = β_*a; an arrow
    (h, k) goes to the unique t over k compatible with the chosen lifts."""
    v = validate_bundle(bd)
    if not v.ok:
        raise BundleInvalid(f"invalid bundle: {v.failed_names()}")
    g, cl = bd.g, bd.cleavage
    A = g.source
    fm = transferred_system(INIT).factor(g)
    K, cone = fm.K, fm.cone

    def split(X: int):
        x, xi, b = cone.triple(X)
        if x == 0:
            return None, None, bd.initial[b]
        a, beta = x - 1, xi - 1  # i_B shifts arrows by one
        return a, beta, A.cod[cl[(a, beta)]]

    parts = [split(X) for X in range(K.n_objects)]
    arr = []
    for u in range(K.n_arrows):
        a, beta, src = parts[K.dom[u]]
        a2, beta2, tgt = parts[K.cod[u]]
        k = fm.R.arr[u]
        cands = [t for t in A.hom(src, tgt) if g.arr[t] == k]
        if a is not None:
            h = fm.q.arr[u] - 1
            want = A.comp[(cl[(a2, beta2)], h)]
            cands = [t for t in cands if A.comp[(t, cl[(a, beta)])] == want]
        if len(cands) != 1:
            raise BundleInvalid(f"{len(cands)} candidate images for the arrow {K.arrows[u]}")
        arr.append(cands[0])
    p = Functor(K, A, tuple(x[2] for x in parts), tuple(arr))
    bad = functor_violation(p)
    if bad is not None:
        raise BundleInvalid(f"reconstructed map is not a functor: {bad}")
    alg = AlgebraStruct(g, p)
    if not validate_algebra(transferred_system(INIT), alg).ok:
        raise BundleInvalid("reconstructed map is not an algebra")
    return alg


def round_trip_report(algebras) -> Report:
    """Both composites of the two translations are identities."""
    rep = Report("algebras ⇔ split opfibrations with fibre initials")
    for alg in algebras:
        subj = alg.carrier.label()
        bd = ralg_to_opfib_colim(alg)
        rep.add("bundle checks", subj, bd.report.ok, bd.report.failed_names() or None)
        back = opfib_colim_to_ralg(bd)
        rep.add("algebra → bundle → algebra", subj, back == alg)
        rep.add("bundle → algebra → bundle", subj, ralg_to_opfib_colim(back) == bd)
    return rep


def algebra_corpus(corpus, max_base_objects: int = 3) -> list[AlgebraStruct]:
    """Every algebra on the corpus functors plus the free algebra on each."""
    S = transferred_system(INIT)
    out = []
    for f in corpus:
        if f.target.n_objects > max_base_objects:
            continue
        out.extend(iter_algebras(S, f))
        out.append(free_algebra(S, f))
    return out
