"""Finite categories, functors and natural transformations.

Everything is stored by position.  A category keeps its object and arrow
names for display, but all maps (functor object/arrow maps, transformation
components) are tuples of integer indices into the declared order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from ..errors import (
    BadComposite,
    BadIdentity,
    DuplicateId,
    MissingComposite,
    NameCollision,
    NonAssociative,
    NotAFunctor,
    NotNatural,
    ShapeMismatch,
    UnknownId,
)


def identity_name(obj: str) -> str:
    return f"id_{obj}"


class FinCategory:
    """A finite category with a total composition table.

    ``comp[(g, f)]`` is the index of ``g∘f`` for every composable pair.
    Construction does not validate; use :func:`build_category` or
    :func:`validate_category` for untrusted input.
    """

    def __init__(
        self,
        name: str,
        objects: Sequence[str],
        arrows: Sequence[str],
        dom: Sequence[int],
        cod: Sequence[int],
        ident: Sequence[int],
        comp: dict[tuple[int, int], int],
    ):
        self.name = name
        self.objects = tuple(objects)
        self.arrows = tuple(arrows)
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.ident = tuple(ident)
        self.comp = comp
        self._oix = {n: i for i, n in enumerate(self.objects)}
        if len(self._oix) != len(self.objects):
            raise NameCollision(f"{name}: duplicate object name")
        self._aix = {n: i for i, n in enumerate(self.arrows)}
        if len(self._aix) != len(self.arrows):
            dup = next(a for a in self.arrows if self.arrows.count(a) > 1)
            raise NameCollision(f"{name}: duplicate arrow name {dup!r}")
        n = len(self.objects)
        homs: dict[tuple[int, int], list[int]] = {}
        outs: list[list[int]] = [[] for _ in range(n)]
        ins: list[list[int]] = [[] for _ in range(n)]
        for a, (x, y) in enumerate(zip(self.dom, self.cod)):
            homs.setdefault((x, y), []).append(a)
            outs[x].append(a)
            ins[y].append(a)
        self._hom = {k: tuple(v) for k, v in homs.items()}
        self.out_arrows = tuple(tuple(v) for v in outs)
        self.in_arrows = tuple(tuple(v) for v in ins)
        self._is_id = frozenset(self.ident)

    # -- lookup -----------------------------------------------------------
    def oid(self, name: str) -> int:
        try:
            return self._oix[name]
        except KeyError:
            raise UnknownId(f"{self.name}: no object {name!r}") from None

    def aid(self, name: str) -> int:
        try:
            return self._aix[name]
        except KeyError:
            raise UnknownId(f"{self.name}: no arrow {name!r}") from None

    def has_object(self, name: str) -> bool:
        return name in self._oix

    def has_arrow(self, name: str) -> bool:
        return name in self._aix

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        return self._hom.get((x, y), ())

    def compose(self, g: int, f: int) -> int:
        return self.comp[(g, f)]

    def is_identity(self, a: int) -> bool:
        return a in self._is_id

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def non_identity_arrows(self) -> list[int]:
        return [a for a in range(len(self.arrows)) if a not in self._is_id]

    def inverse(self, a: int) -> int | None:
        x, y = self.dom[a], self.cod[a]
        for b in self.hom(y, x):
            if self.comp[(b, a)] == self.ident[x] and self.comp[(a, b)] == self.ident[y]:
                return b
        return None

    def is_iso(self, a: int) -> bool:
        return self.inverse(a) is not None

    def is_initial(self, x: int) -> bool:
        return all(len(self.hom(x, y)) == 1 for y in range(len(self.objects)))

    def is_strict_initial(self, x: int) -> bool:
        return self.is_initial(x) and all(
            not self.hom(y, x) or y == x for y in range(len(self.objects))
        )

    # -- identity and display --------------------------------------------
    @cached_property
    def _key(self):
        return (
            self.objects,
            self.arrows,
            self.dom,
            self.cod,
            self.ident,
            tuple(sorted(self.comp.items())),
        )

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self._key == other._key

    @cached_property
    def _hash(self) -> int:
        return hash((self.objects, self.arrows, self.dom, self.cod))

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"<FinCategory {self.name}: {len(self.objects)} objects, {len(self.arrows)} arrows>"

    def renamed(self, name: str) -> "FinCategory":
        return FinCategory(name, self.objects, self.arrows, self.dom, self.cod, self.ident, self.comp)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "objects": list(self.objects),
            "arrows": [
                [self.arrows[a], self.objects[self.dom[a]], self.objects[self.cod[a]]]
                for a in self.non_identity_arrows()
            ],
        }


# ---------------------------------------------------------------------------
# building and validating categories


def build_category(
    name: str,
    objects: Sequence[str],
    arrows: Sequence[tuple[str, str, str]],
    composites: Mapping[tuple[str, str], str] | Iterable[tuple[str, str, str]] = (),
    lines: Mapping | None = None,
) -> FinCategory:
    """Build and fully validate a category from names.

    Identities are implicit and named ``id_<object>``.  ``composites`` maps
    ``(g, f)`` to ``h`` for every composable pair of non-identity arrows;
    entries involving identities are allowed but must agree with the unit
    laws.  ``lines`` optionally maps items to source line numbers for errors.
    """
    lines = lines or {}
    seen: dict[str, int | None] = {}
    for o in objects:
        if o in seen:
            raise DuplicateId(f"{name}: duplicate object {o!r}", lines.get(("object", o)))
        seen[o] = None
    obj_ix = {o: i for i, o in enumerate(objects)}
    names = [identity_name(o) for o in objects]
    dom = list(range(len(objects)))
    cod = list(range(len(objects)))
    taken = set(names)
    for aname, d, c in arrows:
        ln = lines.get(("arrow", aname))
        if aname in taken:
            raise DuplicateId(f"{name}: duplicate arrow {aname!r}", ln)
        for o in (d, c):
            if o not in obj_ix:
                raise UnknownId(f"{name}: arrow {aname!r} uses unknown object {o!r}", ln)
        taken.add(aname)
        names.append(aname)
        dom.append(obj_ix[d])
        cod.append(obj_ix[c])
    arr_ix = {a: i for i, a in enumerate(names)}
    ident = list(range(len(objects)))
    comp: dict[tuple[int, int], int] = {}
    for a in range(len(names)):
        comp[(ident[cod[a]], a)] = a
        comp[(a, ident[dom[a]])] = a
    items = composites.items() if isinstance(composites, Mapping) else (((g, f), h) for g, f, h in composites)
    for (g, f), h in items:
        ln = lines.get(("compose", g, f))
        for x in (g, f, h):
            if x not in arr_ix:
                raise UnknownId(f"{name}: compose uses unknown arrow {x!r}", ln)
        gi, fi, hi = arr_ix[g], arr_ix[f], arr_ix[h]
        if cod[fi] != dom[gi]:
            raise BadComposite(f"{name}: {g} and {f} are not composable", ln)
        if dom[hi] != dom[fi] or cod[hi] != cod[gi]:
            raise BadComposite(f"{name}: {g}∘{f} = {h} has the wrong domain or codomain", ln)
        if (gi, fi) in comp and comp[(gi, fi)] != hi:
            if gi in ident or fi in ident:
                raise BadIdentity(f"{name}: {g}∘{f} must equal {names[comp[(gi, fi)]]}", ln)
            raise DuplicateId(f"{name}: composite {g}∘{f} given twice", ln)
        comp[(gi, fi)] = hi
    C = FinCategory(name, objects, names, dom, cod, ident, comp)
    check_category(C)
    return C


def check_category(C: FinCategory) -> None:
    """Raise unless ``C`` satisfies totality, unit and associativity."""
    n = len(C.arrows)
    for f in range(n):
        for g in C.out_arrows[C.cod[f]]:
            if (g, f) not in C.comp:
                raise MissingComposite(f"{C.name}: missing composite {C.arrows[g]}∘{C.arrows[f]}")
    for (g, f), h in C.comp.items():
        if C.cod[f] != C.dom[g]:
            raise BadComposite(f"{C.name}: composite entry for non-composable pair")
        if C.dom[h] != C.dom[f] or C.cod[h] != C.cod[g]:
            raise BadComposite(f"{C.name}: {C.arrows[g]}∘{C.arrows[f]} lands in the wrong hom-set")
    for x, i in enumerate(C.ident):
        if C.dom[i] != x or C.cod[i] != x:
            raise BadIdentity(f"{C.name}: identity of {C.objects[x]} is not an endo-arrow")
    for a in range(n):
        if C.comp[(C.ident[C.cod[a]], a)] != a or C.comp[(a, C.ident[C.dom[a]])] != a:
            raise BadIdentity(f"{C.name}: identity law fails at {C.arrows[a]}")
    comp = C.comp
    for f in range(n):
        for g in C.out_arrows[C.cod[f]]:
            gf = comp[(g, f)]
            for h in C.out_arrows[C.cod[g]]:
                if comp[(h, gf)] != comp[(comp[(h, g)], f)]:
                    raise NonAssociative(
                        f"{C.name}: ({C.arrows[h]}∘{C.arrows[g]})∘{C.arrows[f]} "
                        f"≠ {C.arrows[h]}∘({C.arrows[g]}∘{C.arrows[f]})"
                    )


# ---------------------------------------------------------------------------
# functors


@dataclass(frozen=True, eq=False)
class Functor:
    source: FinCategory
    target: FinCategory
    obj: tuple[int, ...]
    arr: tuple[int, ...]
    name: str = ""

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Functor):
            return NotImplemented
        return (
            self.obj == other.obj
            and self.arr == other.arr
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self) -> int:
        return hash((self.obj, self.arr))

    def __matmul__(self, other: "Functor") -> "Functor":
        """``self @ other`` is the composite self∘other."""
        if other.target != self.source:
            raise ShapeMismatch(
                f"cannot compose {self.label()} after {other.label()}: "
                f"{other.target.name} ≠ {self.source.name}"
            )
        so, sa = self.obj, self.arr
        return Functor(
            other.source,
            self.target,
            tuple(so[x] for x in other.obj),
            tuple(sa[a] for a in other.arr),
        )

    def label(self) -> str:
        return self.name or f"{self.source.name}→{self.target.name}"

    def __repr__(self) -> str:
        om = ", ".join(
            f"{self.source.objects[i]}↦{self.target.objects[j]}" for i, j in enumerate(self.obj)
        )
        return f"<Functor {self.label()} [{om}]>"

    def object_map(self) -> dict[str, str]:
        return {self.source.objects[i]: self.target.objects[j] for i, j in enumerate(self.obj)}

    def arrow_map(self) -> dict[str, str]:
        return {self.source.arrows[i]: self.target.arrows[j] for i, j in enumerate(self.arr)}

    def is_identity(self) -> bool:
        return self.source == self.target and self.obj == tuple(range(len(self.obj))) and self.arr == tuple(
            range(len(self.arr))
        )

    def is_isomorphism(self) -> bool:
        return (
            len(set(self.obj)) == len(self.obj) == self.target.n_objects
            and len(set(self.arr)) == len(self.arr) == self.target.n_arrows
        )

    def inverse(self) -> "Functor":
        if not self.is_isomorphism():
            raise ShapeMismatch(f"{self.label()} is not an isomorphism of categories")
        obj = [0] * len(self.obj)
        arr = [0] * len(self.arr)
        for i, j in enumerate(self.obj):
            obj[j] = i
        for i, j in enumerate(self.arr):
            arr[j] = i
        return Functor(self.target, self.source, tuple(obj), tuple(arr))

    def named(self, name: str) -> "Functor":
        return Functor(self.source, self.target, self.obj, self.arr, name)

    def describe(self) -> dict:
        return {
            "name": self.label(),
            "source": self.source.name,
            "target": self.target.name,
            "objects": self.object_map(),
            "arrows": {
                k: v
                for i, (k, v) in enumerate(self.arrow_map().items())
                if not self.source.is_identity(i)
            },
        }


def functor_violation(F: Functor) -> str | None:
    """Return a description of the first functor-law failure, or None."""
    A, B = F.source, F.target
    if len(F.obj) != A.n_objects or len(F.arr) != A.n_arrows:
        return "map sizes do not match the source category"
    for a in range(A.n_arrows):
        b = F.arr[a]
        if B.dom[b] != F.obj[A.dom[a]] or B.cod[b] != F.obj[A.cod[a]]:
            return f"arrow {A.arrows[a]} is sent to {B.arrows[b]} with the wrong domain or codomain"
    for x in range(A.n_objects):
        if F.arr[A.ident[x]] != B.ident[F.obj[x]]:
            return f"identity of {A.objects[x]} is not preserved"
    for (g, f), h in A.comp.items():
        if B.comp[(F.arr[g], F.arr[f])] != F.arr[h]:
            return f"composite {A.arrows[g]}∘{A.arrows[f]} is not preserved"
    return None


def check_functor(F: Functor) -> Functor:
    v = functor_violation(F)
    if v is not None:
        raise NotAFunctor(f"{F.label()}: {v}")
    return F


def make_functor(
    source: FinCategory,
    target: FinCategory,
    object_map: Mapping[str, str],
    arrow_map: Mapping[str, str] | None = None,
    name: str = "",
    lines: Mapping | None = None,
) -> Functor:
    """Build a functor from name maps and validate it.

    Identity arrows may be omitted from ``arrow_map``.  A non-identity arrow
    may also be omitted when its target hom-set has exactly one arrow.
    """
    arrow_map = dict(arrow_map or {})
    lines = lines or {}
    for o in object_map:
        if not source.has_object(o):
            raise UnknownId(f"{name}: {source.name} has no object {o!r}", lines.get(("object", o)))
    obj = []
    for o in source.objects:
        if o not in object_map:
            raise NotAFunctor(f"{name}: object {o!r} is not mapped")
        t = object_map[o]
        if not target.has_object(t):
            raise UnknownId(f"{name}: {target.name} has no object {t!r}", lines.get(("object", o)))
        obj.append(target.oid(t))
    for a in arrow_map:
        if not source.has_arrow(a):
            raise UnknownId(f"{name}: {source.name} has no arrow {a!r}", lines.get(("arrow", a)))
    arr = []
    for i, a in enumerate(source.arrows):
        if a in arrow_map:
            t = arrow_map[a]
            if not target.has_arrow(t):
                raise UnknownId(f"{name}: {target.name} has no arrow {t!r}", lines.get(("arrow", a)))
            arr.append(target.aid(t))
        elif source.is_identity(i):
            arr.append(target.ident[obj[source.dom[i]]])
        else:
            hom = target.hom(obj[source.dom[i]], obj[source.cod[i]])
            if len(hom) != 1:
                raise NotAFunctor(f"{name}: arrow {a!r} is not mapped")
            arr.append(hom[0])
    return check_functor(Functor(source, target, tuple(obj), tuple(arr), name))


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, tuple(range(C.n_objects)), tuple(range(C.n_arrows)), f"1_{C.name}")


def constant_functor(C: FinCategory, D: FinCategory, x: int) -> Functor:
    return Functor(C, D, (x,) * C.n_objects, (D.ident[x],) * C.n_arrows)


# ---------------------------------------------------------------------------
# natural transformations


@dataclass(frozen=True, eq=False)
class NatTrans:
    source: Functor
    target: Functor
    comp: tuple[int, ...]
    name: str = ""

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, NatTrans):
            return NotImplemented
        return self.comp == other.comp and self.source == other.source and self.target == other.target

    def __hash__(self) -> int:
        return hash(self.comp)

    @property
    def category(self) -> FinCategory:
        return self.source.target

    def is_identity(self) -> bool:
        return self.source == self.target and all(
            c == self.category.ident[self.source.obj[x]] for x, c in enumerate(self.comp)
        )

    def is_invertible(self) -> bool:
        return all(self.category.is_iso(c) for c in self.comp)

    def components(self) -> dict[str, str]:
        A = self.source.source
        T = self.category
        return {A.objects[x]: T.arrows[c] for x, c in enumerate(self.comp)}

    def __repr__(self) -> str:
        body = ", ".join(f"{k}:{v}" for k, v in self.components().items())
        return f"<NatTrans {self.name or ''} [{body}]>"


def nat_violation(alpha: NatTrans) -> str | None:
    F, G = alpha.source, alpha.target
    if F.source != G.source or F.target != G.target:
        return "functors are not parallel"
    A, T = F.source, F.target
    if len(alpha.comp) != A.n_objects:
        return "wrong number of components"
    for x, c in enumerate(alpha.comp):
        if T.dom[c] != F.obj[x] or T.cod[c] != G.obj[x]:
            return f"component at {A.objects[x]} has the wrong domain or codomain"
    for u in range(A.n_arrows):
        x, y = A.dom[u], A.cod[u]
        if T.comp[(G.arr[u], alpha.comp[x])] != T.comp[(alpha.comp[y], F.arr[u])]:
            return f"naturality fails at arrow {A.arrows[u]}"
    return None


def check_nat(alpha: NatTrans) -> NatTrans:
    v = nat_violation(alpha)
    if v is not None:
        raise NotNatural(f"{alpha.name or 'transformation'}: {v}")
    return alpha


def make_nat_trans(
    F: Functor, G: Functor, components: Mapping[str, str], name: str = "", lines: Mapping | None = None
) -> NatTrans:
    lines = lines or {}
    A, T = F.source, F.target
    for o in components:
        if not A.has_object(o):
            raise UnknownId(f"{name}: {A.name} has no object {o!r}", lines.get(("at", o)))
    comp = []
    for x, o in enumerate(A.objects):
        if o in components:
            a = components[o]
            if not T.has_arrow(a):
                raise UnknownId(f"{name}: {T.name} has no arrow {a!r}", lines.get(("at", o)))
            comp.append(T.aid(a))
        else:
            hom = T.hom(F.obj[x], G.obj[x])
            if len(hom) != 1:
                raise NotNatural(f"{name}: no component given at {o!r}")
            comp.append(hom[0])
    return check_nat(NatTrans(F, G, tuple(comp), name))


def identity_nat(F: Functor) -> NatTrans:
    T = F.target
    return NatTrans(F, F, tuple(T.ident[y] for y in F.obj))


def vcomp(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """Vertical composite beta·alpha : F ⇒ H for alpha: F ⇒ G, beta: G ⇒ H."""
    if alpha.target != beta.source:
        raise ShapeMismatch("vertical composite of non-matching transformations")
    T = alpha.category
    return NatTrans(alpha.source, beta.target, tuple(T.comp[(b, a)] for a, b in zip(alpha.comp, beta.comp)))


def post(K: Functor, alpha: NatTrans) -> NatTrans:
    """Whiskering K·alpha : K∘F ⇒ K∘G."""
    return NatTrans(K @ alpha.source, K @ alpha.target, tuple(K.arr[c] for c in alpha.comp))


def pre(alpha: NatTrans, H: Functor) -> NatTrans:
    """Whiskering alpha·H : F∘H ⇒ G∘H."""
    return NatTrans(alpha.source @ H, alpha.target @ H, tuple(alpha.comp[x] for x in H.obj))


def hcomp(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """Horizontal composite beta∗alpha : K∘F ⇒ L∘G."""
    return vcomp(pre(beta, alpha.target), post(beta.source, alpha))


def inverse_nat(alpha: NatTrans) -> NatTrans:
    T = alpha.category
    comp = []
    for c in alpha.comp:
        inv = T.inverse(c)
        if inv is None:
            raise ShapeMismatch("transformation is not invertible")
        comp.append(inv)
    return NatTrans(alpha.target, alpha.source, tuple(comp))


def nat_from_function(F: Functor, G: Functor, fn) -> NatTrans:
    """Transformation whose component at object index x is ``fn(x)``."""
    return NatTrans(F, G, tuple(fn(x) for x in range(F.source.n_objects)))


# ---------------------------------------------------------------------------
# adjunctions


@dataclass(frozen=True)
class AdjunctionData:
    left: Functor
    right: Functor
    unit: NatTrans
    counit: NatTrans

    @property
    def is_retract(self) -> bool:
        return self.counit.is_identity()

    @property
    def is_coretract(self) -> bool:
        return self.unit.is_identity()


def duplicate_check(names: Iterable[str], what: str) -> None:
    seen = set()
    for n in names:
        if n in seen:
            raise DuplicateId(f"duplicate {what} {n!r}")
        seen.add(n)
