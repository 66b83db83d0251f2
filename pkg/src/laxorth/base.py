"""Ambient 2-categories for the lifting and factorisation checkers.

``CAT`` is the 2-category of finite categories.  ``LocallyDiscrete(C)`` views a
single finite category as a 2-category with identity 2-cells only, which is
where ordinary (1-dimensional) factorisation systems live.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .fincat.core import (
    FinCategory,
    Functor,
    NatTrans,
    identity_functor,
    identity_nat,
    post,
    pre,
    vcomp,
)
from .fincat.enumerate import iter_functors, iter_nat_trans


class CatBase:
    name = "Cat"

    def identity(self, X: FinCategory) -> Functor:
        return identity_functor(X)

    def dom(self, m: Functor) -> FinCategory:
        return m.source

    def cod(self, m: Functor) -> FinCategory:
        return m.target

    def hom(self, X: FinCategory, Y: FinCategory) -> Iterator[Functor]:
        return iter_functors(X, Y)

    def fillers(self, f: Functor, g: Functor, h: Functor, k: Functor) -> Iterator[Functor]:
        """Functors d with d∘f = h and g∘d = k."""
        B, C = f.target, g.source
        fixed: dict[int, int] = {}
        for a, b in enumerate(f.obj):
            if fixed.setdefault(b, h.obj[a]) != h.obj[a]:
                return iter(())
        fixed_arr: dict[int, int] = {}
        for u, b in enumerate(f.arr):
            if fixed_arr.setdefault(b, h.arr[u]) != h.arr[u]:
                return iter(())
        fibre = {}
        for c in range(C.n_objects):
            fibre.setdefault(g.obj[c], []).append(c)
        cands = []
        for b in range(B.n_objects):
            if b in fixed:
                c = fixed[b]
                cands.append([c] if g.obj[c] == k.obj[b] else [])
            else:
                cands.append(fibre.get(k.obj[b], []))

        def arrow_ok(w: int, c: int) -> bool:
            if w in fixed_arr and fixed_arr[w] != c:
                return False
            return g.arr[c] == k.arr[w]

        return iter_functors(B, C, candidates=cands, arrow_filter=arrow_ok)

    def squares(self, f: Functor, g: Functor) -> Iterator[tuple[Functor, Functor]]:
        """Pairs (h, k) with g∘h = k∘f."""
        A, C = f.source, g.source
        fibre: dict[int, list[int]] = {}
        for c in range(C.n_objects):
            fibre.setdefault(g.obj[c], []).append(c)
        for k in iter_functors(f.target, g.target):
            kf = k @ f
            cands = [fibre.get(kf.obj[a], []) for a in range(A.n_objects)]
            for h in iter_functors(A, C, candidates=cands, arrow_filter=lambda u, c, kf=kf: g.arr[c] == kf.arr[u]):
                yield h, k

    def cells(
        self, m: Functor, n: Functor, component_filter: Callable[[int, int], bool] | None = None
    ) -> Iterator[NatTrans]:
        return iter_nat_trans(m, n, component_filter=component_filter)

    def identity_cell(self, m: Functor) -> NatTrans:
        return identity_nat(m)

    def vcomp(self, b: NatTrans, a: NatTrans) -> NatTrans:
        return vcomp(b, a)

    def post(self, k: Functor, a: NatTrans) -> NatTrans:
        return post(k, a)

    def pre(self, a: NatTrans, h: Functor) -> NatTrans:
        return pre(a, h)

    def cell_components_fixed(self, f: Functor, alpha: NatTrans, g: Functor, beta: NatTrans):
        """Component filter for γ with γ·f = alpha and g·γ = beta."""
        want: dict[int, int] = {}
        for a, b in enumerate(f.obj):
            if want.setdefault(b, alpha.comp[a]) != alpha.comp[a]:
                return None

        def ok(x: int, c: int) -> bool:
            if x in want and want[x] != c:
                return False
            return g.arr[c] == beta.comp[x]

        return ok

    def is_iso(self, m: Functor) -> bool:
        return m.is_isomorphism()

    def cell_is_invertible(self, a: NatTrans) -> bool:
        return a.is_invertible()


CAT = CatBase()


@dataclass(frozen=True)
class Arrow:
    """An arrow of a fixed finite category, as a 1-cell of a locally discrete 2-category."""

    category: FinCategory
    index: int

    @property
    def source(self) -> int:
        return self.category.dom[self.index]

    @property
    def target(self) -> int:
        return self.category.cod[self.index]

    def __matmul__(self, other: "Arrow") -> "Arrow":
        return Arrow(self.category, self.category.comp[(self.index, other.index)])

    def label(self) -> str:
        return self.category.arrows[self.index]

    def __repr__(self) -> str:
        return f"<Arrow {self.label()}>"

    def __hash__(self) -> int:
        return hash(self.index)

    def __eq__(self, other) -> bool:
        return isinstance(other, Arrow) and self.index == other.index and self.category is other.category


@dataclass(frozen=True)
class IdCell:
    source: object
    target: object

    def is_identity(self) -> bool:
        return True

    def is_invertible(self) -> bool:
        return True


class LocallyDiscrete:
    def __init__(self, C: FinCategory):
        self.C = C
        self.name = f"disc({C.name})"

    def arrow(self, a: int | str) -> Arrow:
        return Arrow(self.C, self.C.aid(a) if isinstance(a, str) else a)

    def identity(self, x: int) -> Arrow:
        return Arrow(self.C, self.C.ident[x])

    def dom(self, m: Arrow) -> int:
        return m.source

    def cod(self, m: Arrow) -> int:
        return m.target

    def hom(self, x: int, y: int) -> Iterator[Arrow]:
        return (Arrow(self.C, a) for a in self.C.hom(x, y))

    def fillers(self, f: Arrow, g: Arrow, h: Arrow, k: Arrow) -> Iterator[Arrow]:
        return (d for d in self.hom(f.target, g.source) if d @ f == h and g @ d == k)

    def squares(self, f: Arrow, g: Arrow) -> Iterator[tuple[Arrow, Arrow]]:
        for k in self.hom(f.target, g.target):
            for h in self.hom(f.source, g.source):
                if g @ h == k @ f:
                    yield h, k

    def cells(self, m: Arrow, n: Arrow, component_filter=None) -> Iterator[IdCell]:
        if m == n:
            yield IdCell(m, n)

    def identity_cell(self, m: Arrow) -> IdCell:
        return IdCell(m, m)

    def vcomp(self, b: IdCell, a: IdCell) -> IdCell:
        return IdCell(a.source, b.target)

    def post(self, k: Arrow, a: IdCell) -> IdCell:
        return IdCell(k @ a.source, k @ a.target)

    def pre(self, a: IdCell, h: Arrow) -> IdCell:
        return IdCell(a.source @ h, a.target @ h)

    def cell_components_fixed(self, f, alpha, g, beta):
        return lambda x, c: True

    def is_iso(self, m: Arrow) -> bool:
        return self.C.is_iso(m.index)

    def cell_is_invertible(self, a: IdCell) -> bool:
        return True
