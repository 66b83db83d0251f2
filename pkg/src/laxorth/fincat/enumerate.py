"""Exhaustive enumeration of functors and natural transformations.

Both searches are depth-first in declared order, so results come out in
lexicographic order of (object map, arrow map) resp. component tuples.
"""
from __future__ import annotations

from contextlib import contextmanager
from typing import Callable, Iterator, Sequence

from ..errors import SizeLimitExceeded
from .core import FinCategory, Functor, NatTrans

DEFAULT_LIMIT = 10**6
_limit = [DEFAULT_LIMIT]


def search_limit() -> int:
    return _limit[0]


def set_search_limit(n: int) -> None:
    if n < 1:
        raise ValueError("search limit must be positive")
    _limit[0] = n


@contextmanager
def limited(n: int):
    old = _limit[0]
    set_search_limit(n)
    try:
        yield
    finally:
        _limit[0] = old


def _arrow_plan(A: FinCategory):
    """Order non-identity arrows and attach each composition constraint to
    the last of its arrows in that order."""
    order = A.non_identity_arrows()
    pos = {a: i for i, a in enumerate(order)}
    checks: list[list[tuple[int, int, int]]] = [[] for _ in order]
    for (g, f), h in A.comp.items():
        if g not in pos or f not in pos:
            continue
        last = max(pos[g], pos[f], pos.get(h, -1))
        checks[last].append((g, f, h))
    return order, checks


def iter_functors(
    A: FinCategory,
    B: FinCategory,
    *,
    candidates: Sequence[Sequence[int]] | None = None,
    arrow_filter: Callable[[int, int], bool] | None = None,
    injective: bool = False,
    limit: int | None = None,
) -> Iterator[Functor]:
    """Yield every functor A → B in canonical order.

    ``candidates[x]`` restricts the image of object x; ``arrow_filter(a, b)``
    restricts the image of arrow a.  ``injective`` keeps only maps injective
    on objects and arrows.  More than ``limit`` complete object maps raise
    :class:`SizeLimitExceeded`.
    """
    limit = limit or _limit[0]
    n = A.n_objects
    cands = [tuple(candidates[x]) for x in range(n)] if candidates is not None else [tuple(range(B.n_objects))] * n
    # arrows that become checkable once object x is placed
    closing: list[list[int]] = [[] for _ in range(n)]
    for a in A.non_identity_arrows():
        closing[max(A.dom[a], A.cod[a])].append(a)
    order, checks = _arrow_plan(A)
    obj = [0] * n
    arr = [0] * A.n_arrows
    used_obj: set[int] = set()
    used_arr: set[int] = set()
    count = [0]
    Bcomp = B.comp

    def arrows_at(i: int):
        if i == len(order):
            yield Functor(A, B, tuple(obj), tuple(arr))
            return
        a = order[i]
        for b in B.hom(obj[A.dom[a]], obj[A.cod[a]]):
            if injective and b in used_arr:
                continue
            if arrow_filter is not None and not arrow_filter(a, b):
                continue
            arr[a] = b
            if all(Bcomp[(arr[g], arr[f])] == arr[h] for g, f, h in checks[i]):
                if injective:
                    used_arr.add(b)
                yield from arrows_at(i + 1)
                if injective:
                    used_arr.discard(b)

    def objects_at(x: int):
        if x == n:
            count[0] += 1
            if count[0] > limit:
                raise SizeLimitExceeded(
                    f"more than {limit} candidate object maps from {A.name} to {B.name}"
                )
            for y in range(n):
                arr[A.ident[y]] = B.ident[obj[y]]
            if injective:
                used_arr.clear()
                used_arr.update(arr[A.ident[y]] for y in range(n))
            yield from arrows_at(0)
            return
        for y in cands[x]:
            if injective and y in used_obj:
                continue
            obj[x] = y
            if all(B.hom(obj[A.dom[a]], obj[A.cod[a]]) for a in closing[x]):
                if injective:
                    used_obj.add(y)
                yield from objects_at(x + 1)
                if injective:
                    used_obj.discard(y)

    yield from objects_at(0)


def enumerate_functors(A: FinCategory, B: FinCategory, **kw) -> list[Functor]:
    return list(iter_functors(A, B, **kw))


def iter_nat_trans(
    F: Functor,
    G: Functor,
    *,
    component_filter: Callable[[int, int], bool] | None = None,
    limit: int | None = None,
) -> Iterator[NatTrans]:
    """Yield every natural transformation F ⇒ G in canonical order.

    ``component_filter(x, c)`` restricts the component at object x.
    """
    limit = limit or _limit[0]
    A, T = F.source, F.target
    n = A.n_objects
    closing: list[list[int]] = [[] for _ in range(n)]
    for u in A.non_identity_arrows():
        closing[max(A.dom[u], A.cod[u])].append(u)
    comp = [0] * n
    count = [0]
    Tcomp = T.comp
    Farr, Garr = F.arr, G.arr

    def at(x: int):
        if x == n:
            count[0] += 1
            if count[0] > limit:
                raise SizeLimitExceeded(f"more than {limit} natural transformations")
            yield NatTrans(F, G, tuple(comp))
            return
        for c in T.hom(F.obj[x], G.obj[x]):
            if component_filter is not None and not component_filter(x, c):
                continue
            comp[x] = c
            if all(
                Tcomp[(Garr[u], comp[A.dom[u]])] == Tcomp[(comp[A.cod[u]], Farr[u])] for u in closing[x]
            ):
                yield from at(x + 1)

    yield from at(0)


def enumerate_nat_trans(F: Functor, G: Functor, **kw) -> list[NatTrans]:
    return list(iter_nat_trans(F, G, **kw))


def count_functors(A: FinCategory, B: FinCategory, **kw) -> int:
    return sum(1 for _ in iter_functors(A, B, **kw))


def find_isomorphism(A: FinCategory, B: FinCategory) -> Functor | None:
    """First isomorphism of categories A → B, or None."""
    if A.n_objects != B.n_objects or A.n_arrows != B.n_arrows:
        return None

    def sig(C: FinCategory, x: int):
        return (
            len(C.hom(x, x)),
            sorted(len(C.hom(x, y)) for y in range(C.n_objects)),
            sorted(len(C.hom(y, x)) for y in range(C.n_objects)),
        )

    sB = [sig(B, y) for y in range(B.n_objects)]
    cands = [[y for y in range(B.n_objects) if sB[y] == sig(A, x)] for x in range(A.n_objects)]
    return next(iter_functors(A, B, candidates=cands, injective=True), None)


def are_isomorphic(A: FinCategory, B: FinCategory) -> bool:
    return find_isomorphism(A, B) is not None
