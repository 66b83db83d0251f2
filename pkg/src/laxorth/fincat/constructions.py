"""Standard constructions on finite categories."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as _product
from typing import Sequence

from ..errors import ShapeMismatch, TargetMismatch
from .core import FinCategory, Functor, NatTrans, build_category, identity_name


class _Builder:
    """Accumulates objects and arrows; identities are added with objects."""

    def __init__(self, name: str):
        self.name = name
        self.objects: list[str] = []
        self.arrows: list[str] = []
        self.dom: list[int] = []
        self.cod: list[int] = []
        self.ident: list[int] = []
        self.comp: dict[tuple[int, int], int] = {}

    def add_object(self, name: str) -> int:
        x = len(self.objects)
        self.objects.append(name)
        self.ident.append(len(self.arrows))
        self.arrows.append(identity_name(name))
        self.dom.append(x)
        self.cod.append(x)
        return x

    def add_arrow(self, name: str, x: int, y: int) -> int:
        a = len(self.arrows)
        self.arrows.append(name)
        self.dom.append(x)
        self.cod.append(y)
        return a

    def units(self) -> None:
        for a in range(len(self.arrows)):
            self.comp[(self.ident[self.cod[a]], a)] = a
            self.comp[(a, self.ident[self.dom[a]])] = a

    def build(self) -> FinCategory:
        return FinCategory(self.name, self.objects, self.arrows, self.dom, self.cod, self.ident, self.comp)


# ---------------------------------------------------------------------------
# small named categories


def discrete(name: str, objects: Sequence[str]) -> FinCategory:
    return build_category(name, list(objects), [])


def poset(name: str, elements: Sequence[str], leq: Sequence[tuple[str, str]]) -> FinCategory:
    """Thin category of a partial order given by generating relations x ≤ y.

    Non-identity arrows are named ``x<=y``.
    """
    ix = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    le = [[i == j for j in range(n)] for i in range(n)]
    for x, y in leq:
        le[ix[x]][ix[y]] = True
    for k in range(n):
        for i in range(n):
            if le[i][k]:
                for j in range(n):
                    if le[k][j]:
                        le[i][j] = True
    for i in range(n):
        for j in range(n):
            if i != j and le[i][j] and le[j][i]:
                raise ShapeMismatch(f"{name}: relation is not antisymmetric")
    b = _Builder(name)
    for e in elements:
        b.add_object(e)
    arrow_of: dict[tuple[int, int], int] = {(i, i): b.ident[i] for i in range(n)}
    for i in range(n):
        for j in range(n):
            if i != j and le[i][j]:
                arrow_of[(i, j)] = b.add_arrow(f"{elements[i]}<={elements[j]}", i, j)
    for (i, j), a in arrow_of.items():
        for k in range(n):
            if (j, k) in arrow_of:
                b.comp[(arrow_of[(j, k)], a)] = arrow_of[(i, k)]
    return b.build()


def free_category(name: str, objects: Sequence[str], edges: Sequence[tuple[str, str, str]]) -> FinCategory:
    """Free category on a finite acyclic graph; the path f then g is named ``g.f``."""
    ix = {o: i for i, o in enumerate(objects)}
    b = _Builder(name)
    for o in objects:
        b.add_object(o)
    out: dict[int, list[tuple[str, int]]] = {x: [] for x in range(len(objects))}
    for e, d, c in edges:
        out[ix[d]].append((e, ix[c]))
    path_ix: dict[tuple[str, ...], int] = {}
    frontier = [((e,), ix[d], ix[c]) for e, d, c in edges]
    depth = 0
    while frontier:
        depth += 1
        if depth > len(edges):
            raise ShapeMismatch(f"{name}: graph has a cycle")
        nxt = []
        for p, d, c in frontier:
            path_ix[p] = b.add_arrow(".".join(reversed(p)), d, c)
            nxt.extend((p + (e,), d, c2) for e, c2 in out[c])
        frontier = nxt
    b.units()
    for pf, f in path_ix.items():
        for pg, g in path_ix.items():
            if b.cod[f] == b.dom[g]:
                b.comp[(g, f)] = path_ix[pf + pg]
    return b.build()


def monoid(name: str, elements: Sequence[str], table: dict[tuple[str, str], str], unit: str) -> FinCategory:
    """One-object category; ``table[(g, f)]`` is g∘f.  ``unit`` names the identity."""
    b = _Builder(name)
    b.add_object("*")
    b.arrows[0] = unit
    ix = {unit: 0}
    for e in elements:
        if e != unit:
            ix[e] = b.add_arrow(e, 0, 0)
    b.units()
    for (g, f), h in table.items():
        b.comp[(ix[g], ix[f])] = ix[h]
    return b.build()


# ---------------------------------------------------------------------------
# opposite, products, coproducts


def opposite(C: FinCategory) -> FinCategory:
    comp = {(f, g): h for (g, f), h in C.comp.items()}
    return FinCategory(f"{C.name}^op", C.objects, C.arrows, C.cod, C.dom, C.ident, comp)


def product(A: FinCategory, B: FinCategory) -> tuple[FinCategory, Functor, Functor]:
    b = _Builder(f"{A.name}×{B.name}")
    oix = {}
    for x, y in _product(range(A.n_objects), range(B.n_objects)):
        oix[(x, y)] = b.add_object(f"({A.objects[x]},{B.objects[y]})")
    aix = {}
    for x, y in _product(range(A.n_objects), range(B.n_objects)):
        aix[(A.ident[x], B.ident[y])] = b.ident[oix[(x, y)]]
    for u, v in _product(range(A.n_arrows), range(B.n_arrows)):
        if (u, v) in aix:
            continue
        aix[(u, v)] = b.add_arrow(
            f"({A.arrows[u]},{B.arrows[v]})", oix[(A.dom[u], B.dom[v])], oix[(A.cod[u], B.cod[v])]
        )
    pairs = {a: uv for uv, a in aix.items()}
    for (u, v), a in aix.items():
        for u2 in A.out_arrows[A.cod[u]]:
            for v2 in B.out_arrows[B.cod[v]]:
                b.comp[(aix[(u2, v2)], a)] = aix[(A.comp[(u2, u)], B.comp[(v2, v)])]
    P = b.build()
    p1 = Functor(P, A, tuple(x for x, _ in oix), tuple(pairs[a][0] for a in range(P.n_arrows)))
    p2 = Functor(P, B, tuple(y for _, y in oix), tuple(pairs[a][1] for a in range(P.n_arrows)))
    return P, p1, p2


def coproduct(
    cats: Sequence[FinCategory], tags: Sequence[str] | None = None, name: str | None = None
) -> tuple[FinCategory, list[Functor]]:
    """Disjoint union; objects and arrows are prefixed ``tag.`` when tags are given."""
    tags = list(tags) if tags is not None else [None] * len(cats)
    b = _Builder(name or "+".join(C.name for C in cats))
    incs = []
    for C, t in zip(cats, tags):
        pre = f"{t}." if t is not None else ""
        o0 = len(b.objects)
        for o in C.objects:
            b.add_object(pre + o)
        amap = [0] * C.n_arrows
        for x in range(C.n_objects):
            amap[C.ident[x]] = b.ident[o0 + x]
        for a in C.non_identity_arrows():
            amap[a] = b.add_arrow(pre + C.arrows[a], o0 + C.dom[a], o0 + C.cod[a])
        for (g, f), h in C.comp.items():
            b.comp[(amap[g], amap[f])] = amap[h]
        incs.append((C, tuple(range(o0, o0 + C.n_objects)), tuple(amap)))
    S = b.build()
    return S, [Functor(C, S, om, am) for C, om, am in incs]


# ---------------------------------------------------------------------------
# arrow category and comma objects


def arrow_category(C: FinCategory) -> FinCategory:
    """Objects are arrows of C; arrows f → g are commuting squares (h, k)."""
    b = _Builder(f"{C.name}^2")
    for a in C.arrows:
        b.add_object(a)
    sq: dict[tuple[int, int, int, int], int] = {}
    for f in range(C.n_arrows):
        sq[(f, f, C.ident[C.dom[f]], C.ident[C.cod[f]])] = b.ident[f]
    for f in range(C.n_arrows):
        for g in range(C.n_arrows):
            for h in C.hom(C.dom[f], C.dom[g]):
                for k in C.hom(C.cod[f], C.cod[g]):
                    if (f, g, h, k) in sq or C.comp[(g, h)] != C.comp[(k, f)]:
                        continue
                    sq[(f, g, h, k)] = b.add_arrow(
                        f"({C.arrows[h]}|{C.arrows[k]}):{C.arrows[f]}->{C.arrows[g]}", f, g
                    )
    by_src: dict[int, list] = {}
    for key, a in sq.items():
        by_src.setdefault(key[0], []).append((key, a))
    for (f, g, h, k), a in sq.items():
        for (g2, e, h2, k2), a2 in by_src.get(g, []):
            b.comp[(a2, a)] = sq[(f, e, C.comp[(h2, h)], C.comp[(k2, k)])]
    return b.build()


@dataclass(eq=False)
class CommaCone:
    """The comma object f↓g with its projections and universal cell."""

    f: Functor
    g: Functor
    apex: FinCategory
    proj_left: Functor
    proj_right: Functor
    cell: NatTrans
    object_index: dict[tuple[int, int, int], int] = field(repr=False)
    arrow_index: dict[tuple[int, int, int, int], int] = field(repr=False)

    def triple(self, X: int) -> tuple[int, int, int]:
        return self.proj_left.obj[X], self.cell.comp[X], self.proj_right.obj[X]

    def mediate(self, p: Functor, q: Functor, cell: Sequence[int]) -> Functor:
        """The unique functor m with proj_left∘m = p, proj_right∘m = q and
        self.cell·m = cell (components given per object of the domain)."""
        X = p.source
        if q.source != X or p.target != self.f.source or q.target != self.g.source:
            raise ShapeMismatch("mediating data does not match the comma cone")
        try:
            obj = tuple(self.object_index[(p.obj[x], cell[x], q.obj[x])] for x in range(X.n_objects))
            arr = tuple(
                self.arrow_index[(obj[X.dom[u]], obj[X.cod[u]], p.arr[u], q.arr[u])]
                for u in range(X.n_arrows)
            )
        except KeyError:
            raise ShapeMismatch("mediating data is not a cone over the comma diagram") from None
        return Functor(X, self.apex, obj, arr)


def comma_category(f: Functor, g: Functor, name: str | None = None) -> CommaCone:
    if f.target != g.target:
        raise TargetMismatch(f"comma needs a shared target: {f.target.name} vs {g.target.name}")
    A, B, C = f.source, g.source, f.target
    b = _Builder(name or f"{f.label()}↓{g.label()}")
    oidx: dict[tuple[int, int, int], int] = {}
    triples: list[tuple[int, int, int]] = []
    for a in range(A.n_objects):
        for bb in range(B.n_objects):
            for beta in C.hom(f.obj[a], g.obj[bb]):
                oidx[(a, beta, bb)] = b.add_object(f"({A.objects[a]}|{C.arrows[beta]}|{B.objects[bb]})")
                triples.append((a, beta, bb))
    aidx: dict[tuple[int, int, int, int], int] = {}
    arrow_pairs: dict[int, tuple[int, int]] = {}
    for X, (a, beta, bb) in enumerate(triples):
        ident = b.ident[X]
        aidx[(X, X, A.ident[a], B.ident[bb])] = ident
        arrow_pairs[ident] = (A.ident[a], B.ident[bb])
    for X, (a, beta, bb) in enumerate(triples):
        for h in A.out_arrows[a]:
            a2 = A.cod[h]
            fh = f.arr[h]
            for k in B.out_arrows[bb]:
                b2 = B.cod[k]
                rhs = C.comp[(g.arr[k], beta)]
                for beta2 in C.hom(f.obj[a2], g.obj[b2]):
                    if C.comp[(beta2, fh)] != rhs:
                        continue
                    Y = oidx[(a2, beta2, b2)]
                    key = (X, Y, h, k)
                    if key in aidx:
                        continue
                    aidx[key] = b.add_arrow(
                        f"({A.arrows[h]}|{B.arrows[k]}):{C.arrows[beta]}->{C.arrows[beta2]}", X, Y
                    )
                    arrow_pairs[aidx[key]] = (h, k)
    out: dict[int, list[tuple[int, int, int, int]]] = {}
    for (X, Y, h, k), u in aidx.items():
        out.setdefault(X, []).append((Y, h, k, u))
    for (X, Y, h, k), u in aidx.items():
        for Z, h2, k2, v in out.get(Y, ()):
            b.comp[(v, u)] = aidx[(X, Z, A.comp[(h2, h)], B.comp[(k2, k)])]
    K = b.build()
    left = Functor(K, A, tuple(t[0] for t in triples), tuple(arrow_pairs[u][0] for u in range(K.n_arrows)))
    right = Functor(K, B, tuple(t[2] for t in triples), tuple(arrow_pairs[u][1] for u in range(K.n_arrows)))
    cell = NatTrans(f @ left, g @ right, tuple(t[1] for t in triples))
    return CommaCone(f, g, K, left, right, cell, oidx, aidx)


@dataclass(eq=False)
class PullbackCone:
    f: Functor
    g: Functor
    apex: FinCategory
    proj_left: Functor
    proj_right: Functor
    object_index: dict[tuple[int, int], int] = field(repr=False)
    arrow_index: dict[tuple[int, int], int] = field(repr=False)

    def mediate(self, p: Functor, q: Functor) -> Functor:
        X = p.source
        try:
            obj = tuple(self.object_index[(p.obj[x], q.obj[x])] for x in range(X.n_objects))
            arr = tuple(self.arrow_index[(p.arr[u], q.arr[u])] for u in range(X.n_arrows))
        except KeyError:
            raise ShapeMismatch("mediating data does not commute over the pullback diagram") from None
        return Functor(X, self.apex, obj, arr)


def pullback_category(f: Functor, g: Functor, name: str | None = None) -> PullbackCone:
    if f.target != g.target:
        raise TargetMismatch(f"pullback needs a shared target: {f.target.name} vs {g.target.name}")
    A, B = f.source, g.source
    b = _Builder(name or f"{A.name}×{B.name}")
    oidx: dict[tuple[int, int], int] = {}
    for x in range(A.n_objects):
        for y in range(B.n_objects):
            if f.obj[x] == g.obj[y]:
                oidx[(x, y)] = b.add_object(f"({A.objects[x]},{B.objects[y]})")
    aidx: dict[tuple[int, int], int] = {}
    for (x, y), P in oidx.items():
        aidx[(A.ident[x], B.ident[y])] = b.ident[P]
    for u in range(A.n_arrows):
        for v in range(B.n_arrows):
            if (u, v) in aidx or f.arr[u] != g.arr[v]:
                continue
            d = (A.dom[u], B.dom[v])
            c = (A.cod[u], B.cod[v])
            aidx[(u, v)] = b.add_arrow(f"({A.arrows[u]},{B.arrows[v]})", oidx[d], oidx[c])
    pairs = {a: uv for uv, a in aidx.items()}
    for (u, v), a in aidx.items():
        for u2 in A.out_arrows[A.cod[u]]:
            for v2 in B.out_arrows[B.cod[v]]:
                if (u2, v2) in aidx:
                    b.comp[(aidx[(u2, v2)], a)] = aidx[(A.comp[(u2, u)], B.comp[(v2, v)])]
    P = b.build()
    objs = list(oidx)
    p1 = Functor(P, A, tuple(x for x, _ in objs), tuple(pairs[a][0] for a in range(P.n_arrows)))
    p2 = Functor(P, B, tuple(y for _, y in objs), tuple(pairs[a][1] for a in range(P.n_arrows)))
    return PullbackCone(f, g, P, p1, p2, oidx, aidx)


def fibre(p: Functor, b: int) -> tuple[FinCategory, Functor]:
    """Fibre of p over object b: the pullback along the point b, with its inclusion."""
    B = p.target
    pt = point(B, b)
    pb = pullback_category(p, pt, name=f"{p.source.name}_{B.objects[b]}")
    return pb.apex, pb.proj_left


TERMINAL = None


def terminal() -> FinCategory:
    global TERMINAL
    if TERMINAL is None:
        TERMINAL = discrete("1", ["*"])
    return TERMINAL


def point(C: FinCategory, x: int) -> Functor:
    """The functor 1 → C picking object x."""
    return Functor(terminal(), C, (x,), (C.ident[x],), f"{C.objects[x]}")


def to_terminal(C: FinCategory) -> Functor:
    return Functor(C, terminal(), (0,) * C.n_objects, (0,) * C.n_arrows, f"!_{C.name}")


def full_subcategory(C: FinCategory, keep: Sequence[int], name: str | None = None) -> tuple[FinCategory, Functor]:
    keep = sorted(keep)
    pos = {x: i for i, x in enumerate(keep)}
    arrows = [a for a in range(C.n_arrows) if C.dom[a] in pos and C.cod[a] in pos]
    apos = {a: i for i, a in enumerate(arrows)}
    S = FinCategory(
        name or f"{C.name}|sub",
        [C.objects[x] for x in keep],
        [C.arrows[a] for a in arrows],
        [pos[C.dom[a]] for a in arrows],
        [pos[C.cod[a]] for a in arrows],
        [apos[C.ident[x]] for x in keep],
        {(apos[g], apos[f]): apos[h] for (g, f), h in C.comp.items() if g in apos and f in apos},
    )
    return S, Functor(S, C, tuple(keep), tuple(arrows))
