"""Finite-category kernel."""
from .adjunction import find_right_adjoint_coretract, find_adjunctions, verify_adjunction
from .catalog import cat, catalogue, default_corpus, small_categories
from .constructions import (
    CommaCone,
    PullbackCone,
    arrow_category,
    comma_category,
    coproduct,
    discrete,
    fibre,
    free_category,
    full_subcategory,
    monoid,
    opposite,
    point,
    poset,
    product,
    pullback_category,
    terminal,
    to_terminal,
)
from .core import (
    AdjunctionData,
    FinCategory,
    Functor,
    NatTrans,
    build_category,
    check_category,
    check_functor,
    check_nat,
    constant_functor,
    functor_violation,
    hcomp,
    identity_functor,
    identity_nat,
    inverse_nat,
    make_functor,
    make_nat_trans,
    nat_violation,
    post,
    pre,
    vcomp,
)
from .enumerate import (
    DEFAULT_LIMIT,
    are_isomorphic,
    count_functors,
    enumerate_functors,
    enumerate_nat_trans,
    find_isomorphism,
    iter_functors,
    iter_nat_trans,
    limited,
    search_limit,
    set_search_limit,
)
from .parse import Document, parse_files, parse_text, validate_category

__all__ = [name for name in dir() if not name.startswith("_")]
