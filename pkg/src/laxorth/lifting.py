"""Lifting problems, diagonal fillers and the orthogonality hierarchy.

A square from f: A → B to g: C → D is a pair (h: A → C, k: B → D) with
g∘h = k∘f; a filler is d: B → C with d∘f = h and g∘d = k.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping

from .base import CAT, CatBase
from .errors import ShapeMismatch, WitnessNotFound
from .fincat.core import Functor, NatTrans, identity_nat, post, pre, vcomp
from .fincat.enumerate import iter_functors, iter_nat_trans


@dataclass(frozen=True)
class Square:
    left: object
    right: object
    top: object
    bottom: object

    def __post_init__(self):
        if self.right @ self.top != self.bottom @ self.left:
            raise ShapeMismatch("square does not commute: g∘h ≠ k∘f")

    def label(self) -> str:
        return f"({_label(self.top)}, {_label(self.bottom)})"


@dataclass(frozen=True)
class Filler:
    square: Square
    diagonal: object

    def __post_init__(self):
        sq, d = self.square, self.diagonal
        if d @ sq.left != sq.top or sq.right @ d != sq.bottom:
            raise ShapeMismatch("diagonal does not fill the square")


@dataclass(frozen=True)
class FillerCell:
    source: Filler
    target: Filler
    cell: NatTrans


def _label(m) -> str:
    if isinstance(m, Functor):
        return repr(m.object_map())
    return getattr(m, "label", lambda: repr(m))()


def squares_between(f, g, base=CAT) -> list[Square]:
    return [Square(f, g, h, k) for h, k in base.squares(f, g)]


def all_fillers(sq: Square, base=CAT) -> list[Filler]:
    return [Filler(sq, d) for d in base.fillers(sq.left, sq.right, sq.top, sq.bottom)]


def is_weakly_orthogonal(f, g, base=CAT) -> bool:
    return all(all_fillers(sq, base) for sq in squares_between(f, g, base))


def _want(f: Functor, values: tuple[int, ...]):
    """Map object of cod f ↦ required component, or None on conflict."""
    want: dict[int, int] = {}
    for a, b in enumerate(f.obj):
        if want.setdefault(b, values[a]) != values[a]:
            return None
    return want


def square_cells(s1: Square, s2: Square) -> Iterator[tuple[NatTrans, NatTrans]]:
    """2-cells (μ: h ⇒ h′, κ: k ⇒ k′) between squares with g·μ = κ·f."""
    f, g = s1.left, s1.right
    for mu in iter_nat_trans(s1.top, s2.top):
        want = _want(f, post(g, mu).comp)
        if want is None:
            continue
        for kappa in iter_nat_trans(s1.bottom, s2.bottom, component_filter=lambda x, c: want.get(x, c) == c):
            yield mu, kappa


def boundary_cells(f: Functor, g: Functor, d: Functor, d2: Functor, alpha: NatTrans, beta: NatTrans) -> list[NatTrans]:
    """All γ: d ⇒ d2 with γ·f = alpha and g·γ = beta."""
    ok = CAT.cell_components_fixed(f, alpha, g, beta)
    if ok is None:
        return []
    return list(iter_nat_trans(d, d2, component_filter=ok))


def orthogonality_witness(f, g, base=CAT):
    """None when f ⊥ g (unique fillers, uniquely lifted 2-cells); otherwise a
    description of the first failure."""
    sqs = squares_between(f, g, base)
    fill = {}
    for sq in sqs:
        ds = all_fillers(sq, base)
        if len(ds) != 1:
            return {"square": sq.label(), "fillers": len(ds)}
        fill[sq] = ds[0].diagonal
    if not isinstance(base, CatBase):
        return None
    for s1 in sqs:
        for s2 in sqs:
            for mu, kappa in square_cells(s1, s2):
                n = len(boundary_cells(f, g, fill[s1], fill[s2], mu, kappa))
                if n != 1:
                    return {"square": s1.label(), "to": s2.label(), "cell_lifts": n}
    return None


def is_orthogonal(f, g, base=CAT) -> bool:
    return orthogonality_witness(f, g, base) is None


# ---------------------------------------------------------------------------
# KZ fillers


def kz_filler_violation(sq: Square, d: Functor):
    """None when d is a KZ filler of sq, else the first bad (d′, α, β, count).

    For every d′: B → C the map γ ↦ (γ·f, g·γ) from Nat(d, d′) to pairs
    (α: h ⇒ d′f, β: k ⇒ g d′) with g·α = β·f must be a bijection.
    """
    f, g, h, k = sq.left, sq.right, sq.top, sq.bottom
    for d2 in iter_functors(f.target, g.source):
        images = set()
        for gamma in iter_nat_trans(d, d2):
            key = (pre(gamma, f).comp, post(g, gamma).comp)
            if key in images:
                return {"other": d2.object_map(), "reason": "two 2-cells with the same boundary"}
            images.add(key)
        d2f, gd2 = d2 @ f, g @ d2
        pairs = 0
        for alpha in iter_nat_trans(h, d2f):
            want = _want(f, post(g, alpha).comp)
            if want is None:
                continue
            for beta in iter_nat_trans(k, gd2, component_filter=lambda x, c: want.get(x, c) == c):
                pairs += 1
                if (alpha.comp, beta.comp) not in images:
                    return {
                        "other": d2.object_map(),
                        "alpha": alpha.components(),
                        "beta": beta.components(),
                        "reason": "no 2-cell with this boundary",
                    }
        if pairs != len(images):  # pragma: no cover - images ⊆ pairs always
            return {"other": d2.object_map(), "reason": "boundary count mismatch"}
    return None


def check_kz_filler(sq: Square, d) -> bool:
    if isinstance(d, Filler):
        d = d.diagonal
    return kz_filler_violation(sq, d) is None


def kz_fillers(sq: Square) -> list[Filler]:
    return [F for F in all_fillers(sq) if check_kz_filler(sq, F.diagonal)]


@dataclass
class LaxOrthAssignment:
    left: Functor
    right: Functor
    fillers: dict[Square, Filler]
    cells: dict[tuple, NatTrans] = field(default_factory=dict)

    def __getitem__(self, sq: Square) -> Filler:
        return self.fillers[sq]

    def diagonal(self, h: Functor, k: Functor) -> Functor:
        return self.fillers[Square(self.left, self.right, h, k)].diagonal


def is_lax_orthogonal(f: Functor, g: Functor) -> LaxOrthAssignment | None:
    """Pick the first KZ filler for every square and extend the choice to
    2-cells between squares; None when some square has no KZ filler."""
    sqs = squares_between(f, g)
    chosen: dict[Square, Filler] = {}
    for sq in sqs:
        kz = next((F for F in all_fillers(sq) if check_kz_filler(sq, F.diagonal)), None)
        if kz is None:
            return None
        chosen[sq] = kz
    cells: dict[tuple, NatTrans] = {}
    for s1 in sqs:
        for s2 in sqs:
            for mu, kappa in square_cells(s1, s2):
                lifts = boundary_cells(f, g, chosen[s1].diagonal, chosen[s2].diagonal, mu, kappa)
                if len(lifts) != 1:
                    return None
                cells[(s1, s2, mu, kappa)] = lifts[0]
    # functoriality on 2-cells: identities and vertical composites
    for s1 in sqs:
        idc = (s1, s1, identity_nat(s1.top), identity_nat(s1.bottom))
        if not cells[idc].is_identity():
            return None
    by_src: dict[Square, list] = {}
    for key, c in cells.items():
        by_src.setdefault(key[0], []).append((key, c))
    for (s1, s2, mu, kappa), c1 in cells.items():
        for (_, s3, mu2, kappa2), c2 in by_src.get(s2, ()):
            comp = cells.get((s1, s3, vcomp(mu2, mu), vcomp(kappa2, kappa)))
            if comp is None or comp != vcomp(c2, c1):
                return None
    return LaxOrthAssignment(f, g, chosen, cells)


def kz_uniqueness_iso(A: LaxOrthAssignment, B: LaxOrthAssignment) -> dict[Square, FillerCell]:
    """The canonical invertible 2-cell from A's filler to B's, per square."""
    out = {}
    for sq, FA in A.fillers.items():
        FB = B.fillers[sq]
        one_h, one_k = identity_nat(sq.top), identity_nat(sq.bottom)
        there = boundary_cells(sq.left, sq.right, FA.diagonal, FB.diagonal, one_h, one_k)
        back = boundary_cells(sq.left, sq.right, FB.diagonal, FA.diagonal, one_h, one_k)
        if len(there) != 1 or len(back) != 1:
            raise WitnessNotFound(f"no unique comparison cell on square {sq.label()}")
        g1, g2 = there[0], back[0]
        if not (vcomp(g2, g1).is_identity() and vcomp(g1, g2).is_identity()):
            raise WitnessNotFound(f"comparison cell on square {sq.label()} is not invertible")
        out[sq] = FillerCell(FA, FB, g1)
    return out


# ---------------------------------------------------------------------------
# lifting operations against a family


@dataclass(frozen=True)
class FamilyMorphism:
    """A morphism u_src → u_dst in the arrow category: u_dst∘top = bottom∘u_src."""

    src: str
    dst: str
    top: Functor
    bottom: Functor


def pitchfork_membership(
    g: Functor,
    family: Mapping[str, Functor],
    phi: Callable[[str, Functor, Functor], Functor],
    morphisms: list[FamilyMorphism] = (),
):
    """Check compatibility of a filler choice φ with the family morphisms.

    For every morphism (x, y): u_a′ → u_a and every square (h, k): u_a → g,
    φ(a, h, k)∘y must equal φ(a′, h∘x, k∘y).  Returns (ok, violation).
    """
    for m in morphisms:
        ua, uap = family[m.dst], family[m.src]
        if ua @ m.top != m.bottom @ uap:
            return False, {"morphism": (m.src, m.dst), "reason": "not a morphism of arrows"}
        for h, k in CAT.squares(ua, g):
            lhs = phi(m.dst, h, k) @ m.bottom
            rhs = phi(m.src, h @ m.top, k @ m.bottom)
            if lhs != rhs:
                return False, {"a": m.dst, "h": h.object_map(), "k": k.object_map(), "from": m.src}
    return True, None


def phi_from_assignments(assign: Mapping[str, LaxOrthAssignment]):
    return lambda a, h, k: assign[a].diagonal(h, k)
