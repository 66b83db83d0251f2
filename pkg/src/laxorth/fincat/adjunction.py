"""Adjunction data: verification and exhaustive search."""
from __future__ import annotations

from typing import Iterator

from ..report import Report
from .core import AdjunctionData, Functor, NatTrans, identity_functor, nat_violation
from .enumerate import iter_functors, iter_nat_trans


def verify_adjunction(adj: AdjunctionData, subject: str = "") -> Report:
    """Check both triangle identities, reporting the first failing object."""
    F, G = adj.left, adj.right
    rep = Report(f"adjunction {subject}".strip())
    shapes = (
        F.target == G.source
        and G.target == F.source
        and adj.unit.source.is_identity()
        and adj.unit.target == G @ F
        and adj.counit.source == F @ G
        and adj.counit.target.is_identity()
    )
    if not rep.add("shapes", subject, shapes):
        return rep
    for label, t in (("unit natural", adj.unit), ("counit natural", adj.counit)):
        v = nat_violation(t)
        rep.add(label, subject, v is None, v)
    if not rep.ok:
        return rep
    A, B = F.source, F.target
    bad = None
    for a in range(A.n_objects):
        if B.comp[(adj.counit.comp[F.obj[a]], F.arr[adj.unit.comp[a]])] != B.ident[F.obj[a]]:
            bad = A.objects[a]
            break
    rep.add("triangle εF·Fη = 1", subject, bad is None, bad)
    bad = None
    for b in range(B.n_objects):
        if A.comp[(G.arr[adj.counit.comp[b]], adj.unit.comp[G.obj[b]])] != A.ident[G.obj[b]]:
            bad = B.objects[b]
            break
    rep.add("triangle Gε·ηG = 1", subject, bad is None, bad)
    rep.facts["retract"] = adj.is_retract
    rep.facts["coretract"] = adj.is_coretract
    return rep


def _sections(f: Functor) -> Iterator[Functor]:
    """Functors v: B → A with v∘f = 1_A."""
    A, B = f.source, f.target
    want: dict[int, int] = {}
    for a, b in enumerate(f.obj):
        if want.setdefault(b, a) != a:
            return
    cands = [[want[b]] if b in want else list(range(A.n_objects)) for b in range(B.n_objects)]
    want_arr: dict[int, int] = {}
    for u, b in enumerate(f.arr):
        if want_arr.setdefault(b, u) != u:
            return
    yield from iter_functors(
        B, A, candidates=cands, arrow_filter=lambda b, a: want_arr.get(b, a) == a
    )


def _counits(f: Functor, v: Functor, full: bool) -> Iterator[NatTrans]:
    """ξ: f∘v ⇒ 1 with ξ·f = 1, and v·ξ = 1 when ``full``."""
    B = f.target
    fixed = set(f.obj)

    def ok(b: int, c: int) -> bool:
        if b in fixed and c != B.ident[b]:
            return False
        return not full or v.arr[c] == v.target.ident[v.obj[b]]

    return iter_nat_trans(f @ v, identity_functor(B), component_filter=ok)


def iter_laris(f: Functor, full: bool = True) -> Iterator[tuple[Functor, NatTrans]]:
    """All (v, ξ) making f a left adjoint right inverse (``full``) or a strong
    deformation retract (ξ·f = 1 and v∘f = 1 only)."""
    for v in _sections(f):
        for xi in _counits(f, v, full):
            yield v, xi


def find_right_adjoint_coretract(f: Functor) -> tuple[Functor, NatTrans] | None:
    return next(iter_laris(f), None)


def find_adjunctions(F: Functor, G: Functor) -> Iterator[AdjunctionData]:
    """Every (unit, counit) pair making F ⊣ G; brute force."""
    A = F.source
    for eta in iter_nat_trans(identity_functor(A), G @ F):
        for eps in iter_nat_trans(F @ G, identity_functor(F.target)):
            adj = AdjunctionData(F, G, eta, eps)
            if verify_adjunction(adj).ok:
                yield adj
