"""Naive enumerations used to freeze expected counts.

Nothing here goes through the package's search code: every routine walks
the full product of candidate assignments and filters with the raw tables.
"""
from itertools import product


def functor_tables(A, B):
    """All (obj, arr) maps A → B satisfying the functor equations."""
    out = []
    for obj in product(range(B.n_objects), repeat=A.n_objects):
        choices = [
            [b for b in range(B.n_arrows) if B.dom[b] == obj[A.dom[a]] and B.cod[b] == obj[A.cod[a]]]
            for a in range(A.n_arrows)
        ]
        for arr in product(*choices):
            if any(arr[A.ident[x]] != B.ident[obj[x]] for x in range(A.n_objects)):
                continue
            if all(B.comp[(arr[g], arr[f])] == arr[h] for (g, f), h in A.comp.items()):
                out.append((obj, arr))
    return out


def nat_tables(F, G):
    """All component tuples of transformations F ⇒ G."""
    A, B = F.source, F.target
    choices = [
        [b for b in range(B.n_arrows) if B.dom[b] == F.obj[x] and B.cod[b] == G.obj[x]]
        for x in range(A.n_objects)
    ]
    out = []
    for comp in product(*choices):
        if all(
            B.comp[(G.arr[a], comp[A.dom[a]])] == B.comp[(comp[A.cod[a]], F.arr[a])]
            for a in range(A.n_arrows)
        ):
            out.append(comp)
    return out


def _compose(G, F):
    return tuple(G.obj[x] for x in F.obj), tuple(G.arr[a] for a in F.arr)


def _table(F):
    return F.obj, F.arr


def filler_tables(f, g, h, k):
    """Diagonals d: cod f → dom g with d∘f = h and g∘d = k."""
    out = []
    for obj, arr in functor_tables(f.target, g.source):
        d_f = tuple(obj[x] for x in f.obj), tuple(arr[a] for a in f.arr)
        g_d = tuple(g.obj[x] for x in obj), tuple(g.arr[a] for a in arr)
        if d_f == _table(h) and g_d == _table(k):
            out.append((obj, arr))
    return out


def square_tables(f, g):
    """Commuting squares (h, k) from f to g, as pairs of tables."""
    hs = functor_tables(f.source, g.source)
    ks = functor_tables(f.target, g.target)
    out = []
    for h in hs:
        for k in ks:
            gh = tuple(g.obj[x] for x in h[0]), tuple(g.arr[a] for a in h[1])
            kf = tuple(k[0][x] for x in f.obj), tuple(k[1][a] for a in f.arr)
            if gh == kf:
                out.append((h, k))
    return out


def comma_triples(f, g):
    """Objects (a, β: fa → gb, b) of f ↓ g."""
    C = f.target
    return [
        (a, beta, b)
        for a in range(f.source.n_objects)
        for b in range(g.source.n_objects)
        for beta in range(C.n_arrows)
        if C.dom[beta] == f.obj[a] and C.cod[beta] == g.obj[b]
    ]


def commuting_squares_in(C):
    """Number of arrows of the arrow category: all (f, g, h, k) with g∘h = k∘f."""
    n = 0
    for f in range(C.n_arrows):
        for g in range(C.n_arrows):
            for h in range(C.n_arrows):
                for k in range(C.n_arrows):
                    if (
                        C.dom[h] == C.dom[f]
                        and C.cod[h] == C.dom[g]
                        and C.dom[k] == C.cod[f]
                        and C.cod[k] == C.cod[g]
                        and C.comp[(g, h)] == C.comp[(k, f)]
                    ):
                        n += 1
    return n


def has_initial(C):
    return any(
        all(sum(1 for a in range(C.n_arrows) if C.dom[a] == x and C.cod[a] == y) == 1 for y in range(C.n_objects))
        for x in range(C.n_objects)
    )


class _T:
    """Bare functor table with the attributes nat_tables reads."""

    def __init__(self, source, target, obj, arr):
        self.source, self.target, self.obj, self.arr = source, target, obj, arr


def _then(G, F):
    return _T(F.source, G.target, tuple(G.obj[x] for x in F.obj), tuple(G.arr[a] for a in F.arr))


def _whisker_pre(comp, f):
    return tuple(comp[x] for x in f.obj)


def _whisker_post(g, comp):
    return tuple(g.arr[c] for c in comp)


def is_kz_filler(f, g, h, k, d):
    """Every pair (α: h ⇒ d′f, β: k ⇒ gd′) with g·α = β·f lifts to exactly one
    γ: d ⇒ d′, and distinct γ have distinct boundaries."""
    B, C = f.target, g.source
    dT = _T(B, C, *d)
    for d2 in functor_tables(B, C):
        d2T = _T(B, C, *d2)
        images = [(_whisker_pre(c, f), _whisker_post(g, c)) for c in nat_tables(dT, d2T)]
        if len(set(images)) != len(images):
            return False
        pairs = [
            (a, b)
            for a in nat_tables(h, _then(d2T, f))
            for b in nat_tables(k, _then(g, d2T))
            if _whisker_post(g, a) == _whisker_pre(b, f)
        ]
        if sorted(pairs) != sorted(images):
            return False
    return True


def lax_orthogonal_exists(f, g):
    """Every square has a KZ filler (the per-square half of lax orthogonality)."""
    return all(
        any(is_kz_filler(f, g, _T(f.source, g.source, *h), _T(f.target, g.target, *k), d)
            for d in filler_tables(f, g, _T(f.source, g.source, *h), _T(f.target, g.target, *k)))
        for h, k in square_tables(f, g)
    )


def lari_count(f):
    """Pairs (v, ξ: fv ⇒ 1) with vf = 1, ξ·f = 1 and v·ξ = 1."""
    A, B = f.source, f.target
    n = 0
    for v in functor_tables(B, A):
        vT = _T(B, A, *v)
        vf = _then(vT, f)
        if vf.obj != tuple(range(A.n_objects)) or vf.arr != tuple(range(A.n_arrows)):
            continue
        one = _T(B, B, tuple(range(B.n_objects)), tuple(range(B.n_arrows)))
        for xi in nat_tables(_then(f, vT), one):
            if all(xi[f.obj[a]] == B.ident[f.obj[a]] for a in range(A.n_objects)) and all(
                v[1][xi[b]] == A.ident[v[0][b]] for b in range(B.n_objects)
            ):
                n += 1
    return n


def unique_fillers_in(C, l, r):
    """Every commuting square from arrow l to arrow r of C has exactly one
    diagonal, counted straight from the composition table."""
    comp = C.comp
    arrows = range(C.n_arrows)
    for h in arrows:
        if C.dom[h] != C.dom[l] or C.cod[h] != C.dom[r]:
            continue
        for k in arrows:
            if C.dom[k] != C.cod[l] or C.cod[k] != C.cod[r]:
                continue
            if comp[(r, h)] != comp[(k, l)]:
                continue
            n = sum(
                1
                for d in arrows
                if C.dom[d] == C.cod[l] and C.cod[d] == C.dom[r] and comp[(d, l)] == h and comp[(r, d)] == k
            )
            if n != 1:
                return False
    return True


def unique_fillers_between(f, g):
    """Every square of functors from f to g has exactly one diagonal."""
    return all(
        len(filler_tables(f, g, _T(f.source, g.source, *h), _T(f.target, g.target, *k))) == 1
        for h, k in square_tables(f, g)
    )
