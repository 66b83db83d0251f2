"""Named small categories and the default functor corpus."""
from __future__ import annotations

from functools import lru_cache
from itertools import zip_longest

from .constructions import discrete, free_category, monoid, terminal
from .core import FinCategory, Functor, build_category
from .enumerate import iter_functors


@lru_cache(maxsize=None)
def _catalogue() -> dict[str, FinCategory]:
    cats = [
        discrete("empty", []),
        terminal(),
        free_category("2", ["0", "1"], [("u", "0", "1")]),
        discrete("1+1", ["l", "r"]),
        monoid("Z2", ["id_*", "s"], {("s", "s"): "id_*"}, unit="id_*"),
        monoid("idem", ["id_*", "e"], {("e", "e"): "e"}, unit="id_*"),
        build_category(
            "iso",
            ["0", "1"],
            [("u", "0", "1"), ("v", "1", "0")],
            {("v", "u"): "id_0", ("u", "v"): "id_1"},
        ),
        free_category("2+1", ["0", "1", "c"], [("u", "0", "1")]),
        free_category("parallel", ["0", "1"], [("s", "0", "1"), ("t", "0", "1")]),
        free_category("span", ["s", "l", "r"], [("p", "s", "l"), ("q", "s", "r")]),
        free_category("cospan", ["l", "r", "t"], [("i", "l", "t"), ("j", "r", "t")]),
        free_category("3", ["0", "1", "2"], [("u", "0", "1"), ("v", "1", "2")]),
        discrete("disc3", ["a", "b", "c"]),
    ]
    return {C.name: C for C in cats}


def catalogue() -> dict[str, FinCategory]:
    """Fresh dict of the built-in categories, keyed by name."""
    return dict(_catalogue())


def cat(name: str) -> FinCategory:
    return _catalogue()[name]


def small_categories(max_objects: int = 3, max_arrows: int = 6) -> list[FinCategory]:
    return [C for C in _catalogue().values() if C.n_objects <= max_objects and C.n_arrows <= max_arrows]


def default_corpus(cap: int = 200, categories: list[FinCategory] | None = None) -> list[Functor]:
    """Functors between catalogue categories, interleaved across (source,
    target) pairs so that a cap keeps every pair represented."""
    cats = categories if categories is not None else small_categories()
    streams = []
    for A in cats:
        for B in cats:
            fs = list(iter_functors(A, B))
            streams.append([F.named(f"{A.name}→{B.name}#{i}") for i, F in enumerate(fs)])
    out: list[Functor] = []
    for row in zip_longest(*streams):
        for F in row:
            if F is not None:
                out.append(F)
                if len(out) == cap:
                    return out
    return out
