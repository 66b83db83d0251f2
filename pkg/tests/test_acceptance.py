"""The ten acceptance criteria, each at exact equality with its runtime bound.

Every test prints one ``PASS``/``FAIL`` line and records it for the terminal
summary written by conftest.
"""
import time

from click.testing import CliRunner

import oracle
from laxorth.awfs import (
    IdentitySystem,
    check_all_laws,
    check_functorial_factorization,
    is_idempotent_pair,
)
from laxorth.cli import main
from laxorth.coropf import COROPF, coalgebra_lari_bijection
from laxorth.fincat import default_corpus
from laxorth.kz import (
    check_awfs_lax_orthogonal,
    check_comonad_kz_at,
    default_filler_pairs,
    monad_kz_instance,
)
from laxorth.lifting import squares_between
from laxorth.report import Report
from laxorth.simple import (
    INIT,
    CorruptedMultMonad,
    ReflectionSystem,
    algebra_corpus,
    check_fibre_law,
    check_simplicity_witness,
    check_terminal_factor,
    is_simple_reflection,
    iter_poset_reflections,
    simple_coreflective_report,
    reflection_handle,
    round_trip_report,
    transferred_system,
)

CORPUS = default_corpus()
INIT_SYS = transferred_system(INIT)
RESULTS = []


def verdict(n, title, ok, started, bound=None, detail="", elapsed=None):
    if elapsed is None:
        elapsed = time.perf_counter() - started
    within = bound is None or elapsed < bound
    passed = bool(ok) and within
    limit = "" if bound is None else f" (limit {bound:g}s)"
    line = f"{'PASS' if passed else 'FAIL'} criterion {n:>2}: {title} [{elapsed:.2f}s{limit}]"
    if detail:
        line += f" {detail}"
    print(line)
    RESULTS.append(line)
    assert ok, line
    assert within, line


def test_criterion_01_coropf_laws():
    t = time.perf_counter()
    assert len(CORPUS) == 200
    squares = [sq for f in CORPUS for sq in squares_between(f, f)]
    ff = check_functorial_factorization(COROPF, squares)
    laws = check_all_laws(COROPF, CORPUS)
    n = len(ff.checks) + len(laws.checks)
    verdict(1, "coropf factorisation, comonad, monad and distributive laws", ff.ok and laws.ok, t, 60, f"{n} checks")


def test_criterion_02_lax_orthogonality():
    t = time.perf_counter()
    reps = []
    for S in (COROPF, INIT_SYS):
        reps.append(check_awfs_lax_orthogonal(S, CORPUS, default_filler_pairs(S, CORPUS)))
    bad = [name for r in reps for name in r.failed_names()]
    counts = "/".join(str(len(r.checks)) for r in reps)
    verdict(2, "lax orthogonality of coropf and the init completion", not bad, t, 120, f"{counts} checks")


def test_criterion_03_coalgebras_and_laris():
    t = time.perf_counter()
    wrong = []
    total = 0
    for f in CORPUS:
        b = coalgebra_lari_bijection(f)
        total += b.laris
        if not b.ok or b.coalgebras != b.laris:
            wrong.append(f.label())
    timed = time.perf_counter() - t
    # counts against the independent enumeration, kept out of the timing
    mismatch = [f.label() for f in CORPUS if coalgebra_lari_bijection(f).laris != oracle.lari_count(f)]
    ok = not wrong and not mismatch
    verdict(3, "coalgebras ⇔ LARIs with round trips", ok, t, 60, f"{total} structures", elapsed=timed)


def test_criterion_04_monad_kz_implies_comonad_kz():
    t = time.perf_counter()
    bad, hits = [], 0
    for S in (COROPF, INIT_SYS):
        for f in CORPUS:
            ok, _ = monad_kz_instance(S, f)
            if ok:
                hits += 1
                if check_comonad_kz_at(S, f) is None:
                    bad.append((S.name, f.label()))
    verdict(4, "monad KZ ⇒ comonad KZ on every instance", not bad and hits > 0, t, None, f"{hits} instances")


def _brute_orthogonal_functors(S, fs):
    return all(oracle.unique_fillers_between(S.L(f), S.R(g)) for f in fs for g in fs)


def _brute_orthogonal_arrows(S):
    C = S.monad.base
    arrows = S.corpus()
    return all(oracle.unique_fillers_in(C, S.L(f).index, S.R(g).index) for f in arrows for g in arrows)


def test_criterion_05_idempotent_pairs():
    t = time.perf_counter()
    checks = []
    five = [CORPUS[i] for i in (14, 25, 30, 38, 52)]
    ident = is_idempotent_pair(IdentitySystem(), five)
    checks.append(ident.flags == (True, True) and _brute_orthogonal_functors(IdentitySystem(), five))

    chain = reflection_handle("chain")
    res = is_idempotent_pair(chain, chain.corpus())
    checks.append(res.flags == (True, True) and _brute_orthogonal_arrows(chain))

    small = [f for f in CORPUS if f.source.name in ("1", "2") and f.target.name in ("1", "2")]
    co = is_idempotent_pair(COROPF, small)
    w = next(f for f in small if f.label() == co.sigma_witness)
    checks.append(co.flags == (False, False) and not COROPF.factor(w).sigma.is_isomorphism())
    checks.append(not _brute_orthogonal_functors(COROPF, small))

    # every simple reflection on posets with at most three elements
    n = 0
    for M in iter_poset_reflections(3):
        if not is_simple_reflection(M).ok:
            continue
        S = ReflectionSystem(M)
        r = is_idempotent_pair(S, S.corpus())
        checks.append((r.flags == (True, True)) == _brute_orthogonal_arrows(S))
        n += 1
    verdict(5, "idempotent pairs ⇔ unique fillers", all(checks), t, None, f"σ witness {co.sigma_witness}, {n} reflections")


def test_criterion_06_simple_iff_coreflective():
    t = time.perf_counter()
    rep = simple_coreflective_report(iter_poset_reflections(4))
    skipped = len(rep.facts["unsupported"])
    verdict(6, "simple ⇔ T-Iso coreflective on posets ≤ 4", rep.ok, t, None, f"{len(rep.checks)} compared, {skipped} without pullbacks")


def test_criterion_07_fibres_and_terminal_factor():
    t = time.perf_counter()
    fs = [f for f in CORPUS if f.source.n_objects > 0][:40]
    fib = Report("fibres")
    for f in fs:
        fib.extend(check_fibre_law(f))
    term = Report("terminal")
    for A in sorted({f.source for f in CORPUS} | {f.target for f in CORPUS}, key=lambda C: C.name):
        term.extend(check_terminal_factor(INIT, A))
    ok = fib.ok and term.ok and len(fs) >= 10
    verdict(7, "fibres of Rf are T(f↓b), K(A→1) ≅ TA", ok, t, None, f"{len(fs)} functors, {len(term.checks)} terminal checks")


def test_criterion_08_algebras_and_bundles():
    t = time.perf_counter()
    algs = algebra_corpus(CORPUS)
    rep = round_trip_report(algs)
    verdict(8, "algebras ⇔ split opfibrations with fibre initials", rep.ok and algs, t, None, f"{len(algs)} algebras")


def test_criterion_09_counterexample():
    import json

    t = time.perf_counter()
    runner = CliRunner()
    one = runner.invoke(main, ["--format", "json", "counterexample", "--depth", "1"])
    empty = runner.invoke(main, ["--format", "json", "counterexample", "--dot", "empty"])
    r1 = Report.from_dict(json.loads(one.output)["reports"][0])
    r0 = Report.from_dict(json.loads(empty.output)["reports"][0])
    ws = r1.facts["witnesses"]
    ok = (
        one.exit_code == 0
        and r1.facts["result"] == "NONSURJECTIVE"
        and ws
        and all(w["dot_component"] and w["n"] == 1 and w["form"].startswith("((") for w in ws)
        and r0.facts["result"] == "SURJECTIVE"
    )
    verdict(9, "truncated Δ∅ comparison misses ((a,1),ξ)", ok, t, 5, ws[0]["form"] if ws else "")


def test_criterion_10_simplicity_witnesses():
    t = time.perf_counter()
    missing = [f.label() for f in CORPUS if check_simplicity_witness(INIT, f) is None]
    bad = CorruptedMultMonad()
    caught = [f for f in CORPUS[13:40] if check_simplicity_witness(bad, f) is None]
    ok = not missing and len(caught) == len(CORPUS[13:40])
    verdict(10, "simplicity coretract adjunction, corrupted m rejected", ok, t, None, f"{len(CORPUS)} functors")
