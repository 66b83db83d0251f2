"""Command-line front end: validate inputs, factor morphisms, run check
suites and the Δ∅ counterexample.

Exit status is 0 when every reported check passes, 1 when some check fails
and 2 on usage or input errors.
"""
from __future__ import annotations

import json
import sys
import time

import click

from . import __version__
from .errors import LaxorthError
from .report import SCHEMA, Report

SUITES = ("laws", "distributive", "kz", "orthogonality", "prop19", "thm7", "prop3")


class Context:
    def __init__(self, limit: int, fmt: str):
        self.limit = limit
        self.format = fmt


def _load(paths):
    from .fincat.parse import Document, parse_files

    return parse_files(paths) if paths else Document()


def _emit(ctx: Context, command: str, reports: list[Report], started: float) -> None:
    ok = all(r.ok for r in reports)
    if ctx.format == "json":
        payload = {
            "schema": SCHEMA,
            "command": command,
            "ok": ok,
            "elapsed_s": round(time.perf_counter() - started, 3),
            "reports": [r.to_dict() for r in reports],
        }
        click.echo(json.dumps(payload, indent=2, ensure_ascii=False, default=str))
    else:
        for r in reports:
            click.echo(f"{'PASS' if r.ok else 'FAIL'}  {r.summary()}")
            for c in r.failures():
                detail = "" if c.detail is None else f"  {json.dumps(c.detail, ensure_ascii=False, default=str)}"
                click.echo(f"    FAIL {c.name} [{c.subject}]{detail}")
            for k, v in r.facts.items():
                click.echo(f"    {k}: {json.dumps(v, ensure_ascii=False, default=str)}")
        click.echo(f"{'OK' if ok else 'FAILED'} ({time.perf_counter() - started:.2f}s)")
    sys.exit(0 if ok else 1)


def _fail_input(ctx: Context, command: str, err: Exception, started: float) -> None:
    rep = Report(command)
    rep.add(type(err).__name__, "input", False, str(err))
    if ctx.format == "json":
        click.echo(json.dumps({"schema": SCHEMA, "command": command, "ok": False, "reports": [rep.to_dict()]}, ensure_ascii=False))
    else:
        click.echo(f"error: {type(err).__name__}: {err}", err=True)
    sys.exit(2)


@click.group()
@click.option("--limit", type=click.IntRange(min=1), default=10**6, show_default=True, help="Search limit for brute-force enumeration.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.version_option(__version__, prog_name="laxorth")
@click.pass_context
def main(click_ctx, limit, fmt):
    """Exhaustive checks of factorisation systems on finite categories."""
    from .fincat.enumerate import set_search_limit

    set_search_limit(limit)
    click_ctx.obj = Context(limit, fmt)


@main.command()
@click.argument("paths", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def validate(ctx: Context, paths):
    """Parse and validate category, functor and transformation files."""
    started = time.perf_counter()
    try:
        doc = _load(paths)
    except LaxorthError as e:
        _fail_input(ctx, "validate", e, started)
    rep = Report("validate")
    for name, C in doc.categories.items():
        rep.add("category", name, True, {"objects": C.n_objects, "non_identity_arrows": len(C.non_identity_arrows())})
    for name, F in doc.functors.items():
        rep.add("functor", name, True, {"source": F.source.name, "target": F.target.name})
    for name, a in doc.nattrans.items():
        rep.add("nattrans", name, True, {"components": a.components()})
    _emit(ctx, "validate", [rep], started)


def _resolve_handle(name: str):
    from .awfs import get_handle

    try:
        return get_handle(name)
    except KeyError as e:
        raise click.BadParameter(str(e.args[0]), param_hint="--handle") from None


def _is_discrete(S) -> bool:
    from .simple.reflection import ReflectionSystem

    return isinstance(S, ReflectionSystem)


def _morphism(S, name: str, doc):
    if _is_discrete(S):
        C = S.monad.base
        if not C.has_arrow(name):
            raise click.BadParameter(f"{C.name} has no arrow {name!r}", param_hint="--morphism")
        return S.base.arrow(name)
    if name in doc.functors:
        return doc.functors[name]
    from .fincat.catalog import default_corpus

    for f in default_corpus():
        if f.label() == name:
            return f
    raise click.BadParameter(f"no functor {name!r} in the inputs or the default corpus", param_hint="--morphism")


def _describe_arrow(m) -> dict:
    if hasattr(m, "describe"):
        return m.describe()
    return {"arrow": m.label(), "from": m.category.objects[m.source], "to": m.category.objects[m.target]}


@main.command()
@click.option("--handle", required=True, help="Factorisation handle, e.g. coropf, init-completion, reflection:chain.")
@click.option("--morphism", required=True, help="Functor name (input file or default corpus) or arrow name.")
@click.argument("paths", nargs=-1, type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def factor(ctx: Context, handle, morphism, paths):
    """Factor one morphism and print Lf, Kf and Rf."""
    started = time.perf_counter()
    try:
        doc = _load(paths)
    except LaxorthError as e:
        _fail_input(ctx, "factor", e, started)
    S = _resolve_handle(handle)
    f = _morphism(S, morphism, doc)
    rep = Report(f"factor [{S.name}]")
    if _is_discrete(S):
        from .simple.reflection import simple_reflection_factor

        try:
            fm = simple_reflection_factor(S.monad, f)
        except LaxorthError as e:
            rep.add("factorisation", morphism, False, f"{type(e).__name__}: {e}")
            _emit(ctx, "factor", [rep], started)
        C = S.monad.base
        rep.facts["K"] = C.objects[fm.K]
        rep.facts["L"] = _describe_arrow(fm.L)
        rep.facts["R"] = _describe_arrow(fm.R)
        rep.add("R∘L = f", morphism, fm.R @ fm.L == f)
    else:
        fm = S.factor(f)
        K = fm.K
        rep.facts["K"] = {"objects": list(K.objects), "arrows": [K.arrows[a] for a in K.non_identity_arrows()]}
        rep.facts["L"] = fm.L.describe()["objects"]
        rep.facts["R"] = fm.R.describe()["objects"]
        if fm.cone is not None:
            rep.facts["comma"] = {K.objects[X]: list(_triple_names(fm, X)) for X in range(K.n_objects)}
        rep.add("R∘L = f", morphism, fm.R @ fm.L == f)
    _emit(ctx, "factor", [rep], started)


def _triple_names(fm, X):
    c = fm.cone
    x, xi, b = c.triple(X)
    return c.f.source.objects[x], c.f.target.arrows[xi], c.g.source.objects[b]


def _corpus(S, doc, has_files: bool):
    if _is_discrete(S):
        return S.corpus()
    if has_files:
        return list(doc.functors.values())
    from .fincat.catalog import default_corpus

    return default_corpus()


def _suite(S, suite: str, corpus) -> list[Report]:
    from .awfs import check_all_laws, check_distributive_law, check_functorial_factorization, is_idempotent_pair
    from .lifting import squares_between

    if suite == "laws":
        squares = [sq for f in corpus for sq in squares_between(f, f, S.base)]
        return [check_functorial_factorization(S, squares), check_all_laws(S, corpus)]
    if suite == "distributive":
        rep = Report(f"distributive law [{S.name}]")
        for f in corpus:
            rep.extend(check_distributive_law(S, f))
        return [rep]
    if suite == "kz":
        from .kz import check_awfs_lax_orthogonal, default_filler_pairs

        pairs = [] if _is_discrete(S) else default_filler_pairs(S, corpus)
        return [check_awfs_lax_orthogonal(S, corpus, pairs)]
    if suite == "orthogonality":
        res = is_idempotent_pair(S, corpus)
        rep = Report(f"idempotence vs orthogonality [{S.name}]")
        rep.add(
            "both idempotent ⇔ L ⊥ R",
            S.name,
            res.consistent,
            {"flags": list(res.flags), "orthogonal": res.orthogonal},
        )
        rep.facts["sigma_witness"] = res.sigma_witness
        rep.facts["pi_witness"] = res.pi_witness
        rep.facts["orthogonality_witness"] = res.orthogonality_witness
        return [rep]
    if suite == "prop19":
        if S.name != "coropf":
            raise click.UsageError("the prop19 suite runs on the coropf handle")
        from .coropf import coalgebra_lari_bijection

        rep = Report("coalgebras ⇔ LARIs [coropf]")
        for f in corpus:
            b = coalgebra_lari_bijection(f)
            rep.add("counts agree and maps round-trip", f.label(), b.ok, {"coalgebras": b.coalgebras, "laris": b.laris})
        return [rep]
    if suite == "thm7":
        if S.name != "init-completion":
            raise click.UsageError("the thm7 suite runs on the init-completion handle")
        from .simple.initcomp import INIT, check_fibre_law, check_terminal_factor
        from .simple.opfib import algebra_corpus, round_trip_report

        fib = Report("fibres of Rf are T(f↓b)")
        for f in corpus:
            fib.extend(check_fibre_law(f))
        term = Report("K(A→1) ≅ TA")
        for A in sorted({f.source for f in corpus}, key=lambda C: C.name):
            term.extend(check_terminal_factor(INIT, A))
        return [round_trip_report(algebra_corpus(corpus)), fib, term]
    if suite == "prop3":
        if not _is_discrete(S):
            raise click.UsageError("the prop3 suite runs on reflection:<name> handles")
        from .simple.reflection import simple_coreflective_report

        return [simple_coreflective_report([S.monad])]
    raise click.BadParameter(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}", param_hint="--suite")


@main.command()
@click.option("--handle", required=True)
@click.option("--suite", "suites", default="laws", show_default=True, help=f"Comma-separated list from: {', '.join(SUITES)}.")
@click.option("--corpus", "corpus_paths", multiple=True, type=click.Path(exists=True, dir_okay=False), help="Input file whose functors form the corpus.")
@click.pass_obj
def check(ctx: Context, handle, suites, corpus_paths):
    """Run check suites for a handle over a corpus."""
    started = time.perf_counter()
    try:
        doc = _load(corpus_paths)
    except LaxorthError as e:
        _fail_input(ctx, "check", e, started)
    S = _resolve_handle(handle)
    corpus = _corpus(S, doc, bool(corpus_paths))
    reports = []
    for name in [s.strip() for s in suites.split(",") if s.strip()]:
        reports.extend(_suite(S, name, corpus))
    _emit(ctx, f"check {handle} --suite {suites}", reports, started)


@main.command()
@click.option("--depth", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--star", default=None, help="Category for the ∗ summand (from the inputs).")
@click.option("--dot", default=None, help="Category for the • summand (from the inputs).")
@click.argument("paths", nargs=-1, type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def counterexample(ctx: Context, depth, star, dot, paths):
    """Compare T(A_∗) with the fibre (Kg)_∗ over the truncated Δ∅ completion."""
    from .fincat.catalog import catalogue
    from .simple.counterexample import bundled_instance, delta_empty_counterexample

    started = time.perf_counter()
    try:
        doc = _load(paths)
    except LaxorthError as e:
        _fail_input(ctx, "counterexample", e, started)
    known = {**catalogue(), **doc.categories}
    A_star, A_dot = bundled_instance()
    for opt, val in (("--star", star), ("--dot", dot)):
        if val is not None and val not in known:
            raise click.BadParameter(f"unknown category {val!r}", param_hint=opt)
    if star is not None:
        A_star = known[star]
    if dot is not None:
        A_dot = known[dot]
    rep = delta_empty_counterexample(depth, A_star, A_dot)
    _emit(ctx, f"counterexample --depth {depth}", [rep], started)


if __name__ == "__main__":  # pragma: no cover
    main()
