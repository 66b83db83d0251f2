"""The comparison h: T(A_∗) + T(A_•) → Kg for g: A_∗ + A_• → 1 + 1 over the
depth-truncated Δ∅ completion, and the objects its fibre part misses."""
from __future__ import annotations

from ..awfs import CommaSystem
from ..fincat.constructions import coproduct, discrete, point, pullback_category
from ..fincat.core import FinCategory, Functor, functor_violation
from ..report import Report
from .initcomp import TruncatedDeltaEmptyMonad

STAR, DOT = "∗", "•"


def bundled_instance() -> tuple[FinCategory, FinCategory]:
    return discrete("A_star", ["a_star"]), discrete("A_dot", ["a_dot"])


def _sum(A_star: FinCategory, A_dot: FinCategory):
    clash = set(A_star.objects) & set(A_dot.objects) or set(A_star.arrows) & set(A_dot.arrows)
    tags = [STAR, DOT] if clash else None
    A, (i_star, i_dot) = coproduct([A_star, A_dot], tags, name=f"{A_star.name}+{A_dot.name}")
    base = discrete("1+1", [STAR, DOT])
    obj = tuple(0 if x < A_star.n_objects else 1 for x in range(A.n_objects))
    g = Functor(A, base, obj, tuple(base.ident[obj[A.dom[u]]] for u in range(A.n_arrows)), "g")
    return g, i_star, i_dot


def delta_empty_counterexample(depth: int, A_star: FinCategory, A_dot: FinCategory) -> Report:
    """Build h, check that it is a functor commuting with Lg and Rg and
    preserving initial objects, and list the objects of (Kg)_∗ missed by
    h_∗.  ``facts['result']`` is NONSURJECTIVE or SURJECTIVE."""
    M = TruncatedDeltaEmptyMonad(depth)
    g, i_star, i_dot = _sum(A_star, A_dot)
    A, base = g.source, g.target
    fm = CommaSystem(M, M.name).factor(g)
    cone, K = fm.cone, fm.K
    TB = M.apply(base)
    iB = M.unit(base)
    rep = Report(f"Δ∅ completion, truncated at N={depth}")
    rep.facts["truncated_at"] = depth

    def comparison(inc: Functor, b: int) -> Functor:
        """T(A_b) → Kg: x ↦ (T(inc) x, the unique ξ into i(b), b)."""
        Ti = M.on_functor(inc)
        obj = []
        for x in range(Ti.source.n_objects):
            y = Ti.obj[x]
            (xi,) = TB.hom(M.on_functor(g).obj[y], iB.obj[b])
            obj.append(cone.object_index[(y, xi, b)])
        arr = tuple(
            cone.arrow_index[(obj[Ti.source.dom[u]], obj[Ti.source.cod[u]], Ti.arr[u], base.ident[b])]
            for u in range(Ti.source.n_arrows)
        )
        return Functor(Ti.source, K, tuple(obj), arr)

    parts = [(comparison(i_star, 0), i_star, 0), (comparison(i_dot, 1), i_dot, 1)]
    for h, inc, b in parts:
        side = base.objects[b]
        rep.add("h is a functor", side, functor_violation(h) is None)
        rep.add("h∘i = Lg∘inc", side, h @ M.unit(inc.source) == fm.L @ inc)
        rep.add("Rg∘h is constant at the summand", side, all(fm.R.obj[X] == b for X in h.obj))

    h_star = parts[0][0]
    pb = pullback_category(fm.R, point(base, 0))
    F = pb.apex
    T_star = h_star.source
    images = {pb.object_index[(X, 0)] for X in h_star.obj}
    preserved = all(
        F.is_initial(pb.object_index[(h_star.obj[x], 0)])
        for x in range(A_star.n_objects, T_star.n_objects)
    )
    rep.add("h_∗ sends initial objects to initial objects", STAR, preserved)

    missed, witnesses = [], []
    for Y in range(F.n_objects):
        if Y in images:
            continue
        X = pb.proj_left.obj[Y]
        x, xi, _ = cone.triple(X)
        a, n = M.level(A, x)
        missed.append(K.objects[X])
        witnesses.append(
            {
                "object": K.objects[X],
                "a": A.objects[a],
                "n": n,
                "xi": TB.arrows[xi],
                "form": f"(({A.objects[a]},{n}),ξ)",
                "dot_component": a >= A_star.n_objects,
            }
        )
    rep.add(
        "missed objects are ((a,n),ξ) with a in A_• and n ≥ 1",
        STAR,
        all(w["dot_component"] and w["n"] >= 1 for w in witnesses),
    )
    rep.facts["result"] = "NONSURJECTIVE" if missed else "SURJECTIVE"
    rep.facts["witnesses"] = witnesses
    rep.facts["fibre_objects"] = [K.objects[pb.proj_left.obj[Y]] for Y in range(F.n_objects)]
    rep.facts["image"] = sorted(K.objects[pb.proj_left.obj[Y]] for Y in images)
    return rep
