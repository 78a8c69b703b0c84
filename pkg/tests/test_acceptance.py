"""Acceptance criteria 1-8, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary. Running this file directly prints the same lines.
"""
from __future__ import annotations

import itertools
import json
import os
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

import oracles
from liesuper import (
    GF,
    QQ,
    AxiomViolation,
    GradingViolation,
    JacobiViolation,
    LieSuperalgebra,
    SkewViolation,
    abelian,
    by_name,
    catalog,
    classify_extension,
    construct_stem_cover,
    converse_schur_bound,
    cover_dimension,
    covers_isoclinic_check,
    decide_isoclinic,
    direct_sum,
    epimorphism_isoclinism_test,
    find_cover_epimorphism,
    find_isomorphism,
    fingerprint,
    hev,
    hodd,
    is_stem,
    isoclinism_quotient,
    isoclinism_subalgebra_plus_center,
    isoclinism_with_direct_sum,
    make_cocycle,
    minimality_check,
    multiplier,
    parse_algebra,
    quotient,
    random_algebra,
    serialize,
    stem_extensions_from_cover,
    stem_reduce,
    verify_homoclinism,
    verify_isoclinism,
    central_extension_from_cocycles,
)
from liesuper.algebra import direct_sum_data
from liesuper.catalog import CATALOG_NAMES
from liesuper.isoclinism import enumerate_ideals, enumerate_subalgebras

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # direct execution
    ACCEPTANCE_LINES = {}

F5 = GF(5)
TITLES = {
    1: "axiom suite",
    2: "constructive isoclinisms and the epimorphism criterion",
    3: "multiplier oracle",
    4: "stem covers",
    5: "stem extensions are images of the cover",
    6: "stem reduction, minimality, converse Schur bound",
    7: "isoclinism decider on 20 labelled pairs",
    8: "CLI round-trip, byte stability, exit codes",
}


def record(n: int, ok: bool, detail: str, seconds: float) -> None:
    line = f"criterion {n} [{'PASS' if ok else 'FAIL'}] {TITLES[n]}: {detail} ({seconds:.1f}s)"
    ACCEPTANCE_LINES[n] = line
    print(line)


def run_criterion(n: int, fn) -> None:
    t0 = time.perf_counter()
    try:
        detail = fn()
    except AssertionError as e:
        record(n, False, f"assertion failed: {e}", time.perf_counter() - t0)
        raise
    except Exception as e:  # recorded, then re-raised for pytest
        record(n, False, f"{type(e).__name__}: {e}", time.perf_counter() - t0)
        raise
    record(n, True, detail, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# 1
# ---------------------------------------------------------------------------


def _nested(L):
    f = L.field
    n = L.n
    conv = int if f.is_finite else Fraction
    return [[[conv(L.constants[i, j, k]) for k in range(n)] for j in range(n)] for i in range(n)]


def _perturbation_checks(L: LieSuperalgebra, jacobi_sample: int | None, rng) -> tuple[int, int, int, int]:
    f = L.field
    n = L.n
    par = [int(x) for x in L.parities]
    p = f.p
    one = f.one
    counts = [0, 0, 0, 0]  # grading rejected, skew rejected, jacobi rejected, consistent accepted
    for i, j, k in itertools.product(range(n), repeat=3):
        c = np.array(L.constants, copy=True)
        bump = (c[i, j, k] + one) % p if p else c[i, j, k] + one
        c[i, j, k] = bump
        if par[k] != par[i] ^ par[j]:
            with pytest.raises(GradingViolation):
                LieSuperalgebra(f, L.even_names, L.odd_names, c)
            counts[0] += 1
        elif not (i == j and par[i] == 1):
            # one stored entry changed without its graded skew partner
            with pytest.raises(SkewViolation):
                LieSuperalgebra(f, L.even_names, L.odd_names, c)
            counts[1] += 1
    # bracket-level perturbations (entry plus its forced partner), Jacobi vs oracle
    slots = [
        (i, j, k)
        for i in range(n)
        for j in range(i, n)
        for k in range(n)
        if par[k] == par[i] ^ par[j] and not (i == j and par[i] == 0)
    ]
    if jacobi_sample is not None and len(slots) > jacobi_sample:
        idx = sorted(rng.choice(len(slots), size=jacobi_sample, replace=False))
        slots = [slots[t] for t in idx]
    for i, j, k in slots:
        table = {}
        for a in range(n):
            for b in range(a, n):
                terms = {t: L.constants[a, b, t] for t in range(n) if L.constants[a, b, t] != 0}
                if terms:
                    table[(a, b)] = terms
        terms = dict(table.get((i, j), {}))
        new = (terms.get(k, 0) + 1) % p if p else terms.get(k, Fraction(0)) + 1
        terms[k] = new
        table[(i, j)] = terms
        from liesuper import validate

        nested = _nested(L)
        nested[i][j][k] = int(new) if p else Fraction(new)
        if i != j:
            sgn = -((-1) ** (par[i] * par[j]))
            nested[j][i][k] = (sgn * nested[i][j][k]) % p if p else sgn * nested[i][j][k]
        consistent = oracles.jacobi_holds(nested, par, p)
        if consistent:
            validate(f, L.even_names, L.odd_names, table)
            counts[3] += 1
        else:
            with pytest.raises(JacobiViolation):
                validate(f, L.even_names, L.odd_names, table)
            counts[2] += 1
    return tuple(counts)


def criterion_1() -> str:
    rng = np.random.default_rng(2024)
    algebras = [abelian(m, n, QQ) for m in range(4) for n in range(4)]
    algebras += [hodd(QQ), hev(QQ)]
    randoms = [random_algebra(F5, seed, max_total=4) for seed in range(100)]
    for L in randoms:
        assert L.n <= 4
        assert oracles.jacobi_holds(_nested(L), [int(x) for x in L.parities], 5)
    totals = np.zeros(4, dtype=int)
    for L in algebras + randoms:
        # acceptance of the unperturbed table, rebuilt from scratch
        LieSuperalgebra(L.field, L.even_names, L.odd_names, np.array(L.constants, copy=True))
        sample = None if L.n <= 4 else 30
        totals += _perturbation_checks(L, sample, rng)
    # every algebra got at least one rejection of each kind it admits
    assert totals[0] > 0 and totals[1] > 0 and totals[2] > 0
    return (
        f"{len(algebras) + len(randoms)} algebras accepted; rejected {totals[0]} grading, "
        f"{totals[1]} skew, {totals[2]} Jacobi perturbations; {totals[3]} consistent ones accepted"
    )


# ---------------------------------------------------------------------------
# 2
# ---------------------------------------------------------------------------


def criterion_2() -> str:
    pairs = 0
    ideals_checked = 0
    for L in catalog(F5):
        for a in range(3):
            for b in range(3):
                A = abelian(a, b, F5).renamed([f"u{i}" for i in range(a)], [f"v{i}" for i in range(b)])
                w = isoclinism_with_direct_sum(L, A)
                assert verify_isoclinism(w), (L.name, a, b)
                ds = direct_sum_data(L, A)
                M = ds.algebra
                f = F5
                # subalgebra plus center, H = the L block
                H = M.subspace([M.basis_vector(i) for i in ds.left_index]) if L.n else M.zero_space()
                r = isoclinism_subalgebra_plus_center(M, H)
                assert verify_isoclinism(r.pair)
                if r.fills_algebra:
                    assert verify_isoclinism(r.pair_with_algebra)
                # quotient by an ideal, I = the A block
                I = M.subspace([M.basis_vector(i) for i in ds.right_index]) if A.n else M.zero_space()
                q = isoclinism_quotient(M, I)
                assert verify_isoclinism(q.pair)
                assert q.meet_is_zero and verify_isoclinism(q.pair_with_algebra)
                # epimorphism criterion on the projection M -> M/I
                e = epimorphism_isoclinism_test(quotient(M, I).projection)
                assert e.isoclinic and verify_isoclinism(e.pair)
                pairs += 5
        for H in enumerate_subalgebras(L):
            r = isoclinism_subalgebra_plus_center(L, H)
            assert verify_homoclinism(r.pair, require_bijective=True)
            if r.fills_algebra:
                assert verify_isoclinism(r.pair_with_algebra)
            pairs += 1
        for I in enumerate_ideals(L):
            q = isoclinism_quotient(L, I)
            assert verify_isoclinism(q.pair)
            proj = quotient(L, I).projection
            e = epimorphism_isoclinism_test(proj)
            truth = decide_isoclinic(L, q.by_ideal).isoclinic
            assert e.isoclinic == q.meet_is_zero == truth, (L.name, I)
            if e.isoclinic:
                assert verify_isoclinism(e.pair)
            ideals_checked += 1
            pairs += 1
    return f"{pairs} constructed pairs verified; epimorphism criterion matched ground truth on {ideals_checked} graded ideals"


# ---------------------------------------------------------------------------
# 3
# ---------------------------------------------------------------------------


def criterion_3() -> str:
    checked = 0
    for field in (QQ, F5):
        for m in range(4):
            for n in range(4):
                L = abelian(m, n, field)
                expected = oracles.abelian_multiplier(m, n)
                assert oracles.graded_multiplier_dims(L) == expected
                got = multiplier(L).dim
                assert (got.even, got.odd) == expected, (m, n, field)
                checked += 1
        for L, expected in ((hodd(field), (0, 0)), (hev(field), (2, 0))):
            assert oracles.graded_multiplier_dims(L) == expected
            got = multiplier(L).dim
            assert (got.even, got.odd) == expected
            checked += 1
    even_inputs = [hev(QQ), hev(F5), by_name("Hev+A(1|0)", QQ), abelian(3, 0, QQ)]
    even_inputs += [L for L in (random_algebra(F5, s) for s in range(60)) if L.dim.odd == 0]
    for L in even_inputs:
        got = multiplier(L).dim
        assert got.odd == 0
        assert got.even == oracles.ungraded_h2(L), L.name
        checked += 1
    return f"{checked} multiplier computations matched the oracles ({len(even_inputs)} against ungraded H^2)"


# ---------------------------------------------------------------------------
# 4
# ---------------------------------------------------------------------------


def criterion_4() -> str:
    c1 = construct_stem_cover(abelian(0, 1, F5))
    c2 = construct_stem_cover(abelian(2, 0, F5))
    assert find_isomorphism(c1.total, hodd(F5)) is not None
    assert find_isomorphism(c2.total, hev(F5)) is not None
    assert c1.classification == "cover" and c2.classification == "cover"
    assert classify_extension(c1.base, c1.total, c1.projection, c1.kernel) == "cover"
    for field in (QQ, F5):
        for L in catalog(field):
            E = construct_stem_cover(L)
            assert E.is_cover
            assert E.total.dim == cover_dimension(L) == L.dim + multiplier(L).dim
    # two complement choices for the same base
    A01 = abelian(0, 1, F5)
    alt = central_extension_from_cocycles(A01, [make_cocycle(A01, 0, {(0, 0): 3})])
    assert alt.is_cover
    d1 = covers_isoclinic_check(A01, c1, alt)
    A20 = abelian(2, 0, F5)
    alt2 = central_extension_from_cocycles(A20, [make_cocycle(A20, 0, {(0, 1): 2})])
    d2 = covers_isoclinic_check(A20, c2, alt2)
    # a cover with a coboundary-shifted representative (nonabelian base)
    Hv = hev(F5)
    m = multiplier(Hv)
    shifted = m.even[0].values.copy()
    shifted[0, 1] = (shifted[0, 1] + 1) % 5
    shifted[1, 0] = (shifted[1, 0] - 1) % 5
    alt3 = central_extension_from_cocycles(Hv, [make_cocycle(Hv, 0, shifted), m.even[1]])
    assert alt3.is_cover
    d3 = covers_isoclinic_check(Hv, construct_stem_cover(Hv), alt3)
    assert all(verify_isoclinism(d.pair) for d in (d1, d2, d3))
    return "A(0|1)->Hodd, A(2|0)->Hev found; covers of every catalog algebra classified; 3 cover pairs isoclinic"


# ---------------------------------------------------------------------------
# 5
# ---------------------------------------------------------------------------


def criterion_5() -> str:
    found = 0
    for name in ("A(0|1)", "A(1|1)", "A(2|0)"):
        E = construct_stem_cover(by_name(name, F5))
        for sq in stem_extensions_from_cover(E):
            if sq.killed.dim != E.kernel.dim:
                assert sq.extension.is_stem, (name, sq.killed)
            g = find_cover_epimorphism(sq.extension, E)
            assert g is not None and g.is_surjective()
            assert np.array_equal(
                (sq.extension.projection.matrix @ g.matrix) % 5, np.asarray(E.projection.matrix) % 5
            )
            found += 1
    return f"{found} stem quotients, each the image of its cover under a found epimorphism"


# ---------------------------------------------------------------------------
# 6
# ---------------------------------------------------------------------------


def criterion_6() -> str:
    inputs = list(catalog(F5))
    for base in (hodd(F5), hev(F5)):
        for a in range(3):
            for b in range(3):
                inputs.append(direct_sum(base, abelian(a, b, F5).renamed(
                    [f"a{i + 1}" for i in range(a)], [f"c{i + 1}" for i in range(b)]),
                    name=f"{base.name}+A({a}|{b})"))
    for L in inputs:
        r = stem_reduce(L)
        assert is_stem(r.stem), L.name
        assert verify_isoclinism(r.witness), L.name
        assert stem_reduce(r.stem).killed.is_zero(), L.name
        assert converse_schur_bound(L).holds, L.name
    for T, fam in (
        (hodd(F5), [by_name(f"Hodd+A({a}|{b})", F5) for a in range(3) for b in range(3)]),
        (hev(F5), [by_name(f"Hev+A({a}|{b})", F5) for a in range(3) for b in range(3)]),
    ):
        rep = minimality_check(T, fam)
        assert rep.is_stem and rep.minimal and rep.consistent
    # the abelian class reduces to the zero algebra
    zero = stem_reduce(abelian(2, 1, F5)).stem
    assert minimality_check(zero, [abelian(0, 0, F5)]).minimal
    b1, b2 = converse_schur_bound(hodd(F5)), converse_schur_bound(hev(F5))
    assert (b1.lhs, b1.rhs) == (1, 1) and (b2.lhs, b2.rhs) == (2, 2)
    return f"{len(inputs)} inputs reduced, witnessed, idempotent; bound holds, equality on Hodd (1<=1) and Hev (2<=2)"


# ---------------------------------------------------------------------------
# 7
# ---------------------------------------------------------------------------


def _labelled_pairs():
    iso = []
    # L ~ L + A
    for name, (a, b) in (
        ("Hodd", (1, 0)), ("Hodd", (2, 1)), ("Hev", (0, 1)), ("Hev", (1, 1)), ("A(1|1)", (1, 0)), ("Hodd", (0, 2)),
    ):
        L = by_name(name, F5)
        iso.append((L, direct_sum(L, abelian(a, b, F5).renamed(
            [f"a{i + 1}" for i in range(a)], [f"c{i + 1}" for i in range(b)]))))
    # L ~ L/I when I meets L' trivially
    for name in ("Hodd+A(1|0)", "Hodd+A(2|1)", "Hev+A(0|1)", "Hev+A(2|0)"):
        L = by_name(name, F5)
        I = next(I for I in enumerate_ideals(L) if not I.is_zero() and (I & L.derived).is_zero())
        iso.append((L, quotient(L, I).algebra))
    non = []
    for a, b in (
        ("Hodd", "A(1|1)"), ("Hodd", "Hev"), ("Hev", "A(3|0)"), ("Hodd+A(1|0)", "Hev"), ("A(2|1)", "Hodd"),
        ("Hev+A(0|1)", "Hodd+A(2|1)"), ("Hodd", "random(5,3)"), ("Hev", "random(5,7)"),
        ("Hodd+A(0|2)", "A(1|3)"), ("Hev+A(1|1)", "A(0|1)"),
    ):
        L, K = by_name(a, F5), by_name(b, F5)
        non.append((L, K))
    return iso, non


def criterion_7() -> str:
    iso, non = _labelled_pairs()
    assert len(iso) == 10 and len(non) == 10
    for L, K in non:
        assert fingerprint(L).mismatch(fingerprint(K)) is not None, (L.name, K.name)
    agree = 0
    for truth, pairs in ((True, iso), (False, non)):
        for L, K in pairs:
            d = decide_isoclinic(L, K)
            assert d.isoclinic == truth, (L.name, K.name, d.reason)
            if d.pair is not None:
                assert verify_isoclinism(d.pair)
            agree += 1
    return f"{agree}/20 verdicts agree with the labels; every witness verified"


# ---------------------------------------------------------------------------
# 8
# ---------------------------------------------------------------------------


def _cli(*args, cwd):
    env = dict(os.environ)
    return subprocess.run(
        [sys.executable, "-m", "liesuper.cli", *args], capture_output=True, text=True, cwd=cwd, env=env
    )


def criterion_8(tmp) -> str:
    for field in (QQ, F5, GF(7)):
        for L in catalog(field):
            text = serialize(L)
            M = parse_algebra(text)
            assert M.names == L.names and M.same_constants(L)
            assert serialize(M) == text
    files = {}
    for name in ("Hodd", "Hodd+A(1|0)", "A(1|1)", "Hev"):
        path = os.path.join(tmp, name.replace("|", "_").replace("(", "").replace(")", "").replace("+", "_") + ".json")
        with open(path, "w") as fh:
            fh.write(serialize(by_name(name, F5)))
        files[name] = path
    cmds = [
        ["analyze", files["Hodd"]],
        ["multiplier", files["Hev"]],
        ["cover", files["A(1|1)"]],
        ["isoclinic", files["Hodd"], files["Hodd+A(1|0)"], "--exhaustive"],
        ["stem-reduce", files["Hodd+A(1|0)"]],
        ["schur-bound", files["Hev"]],
        ["stem-quotients", files["A(1|1)"]],
        ["catalog", "Hev"],
    ]
    for cmd in cmds:
        r1 = _cli(*cmd, "--format", "machine", cwd=tmp)
        r2 = _cli(*cmd, "--format", "machine", cwd=tmp)
        assert r1.returncode == 0, (cmd, r1.stdout, r1.stderr)
        assert r1.stdout == r2.stdout, cmd
        json.loads(r1.stdout)
    # exit 1: negative verdict and validation failure
    r = _cli("isoclinic", files["Hodd"], files["A(1|1)"], "--format", "machine", cwd=tmp)
    assert r.returncode == 1 and json.loads(r.stdout)["verdict"] == "not-isoclinic"
    bad = os.path.join(tmp, "bad.json")
    with open(bad, "w") as fh:
        fh.write('{"field": "Q", "even": ["x"], "odd": ["y"], "brackets": [{"pair": ["y", "y"], "terms": [["y", "1"]]}]}')
    r = _cli("validate", bad, "--format", "machine", cwd=tmp)
    assert r.returncode == 1 and json.loads(r.stdout)["valid"] is False
    # exit 2: parse error, unknown field value, usage error
    broken = os.path.join(tmp, "broken.json")
    with open(broken, "w") as fh:
        fh.write('{"field": "Q",\n "even": [x]}')
    r = _cli("validate", broken, cwd=tmp)
    assert r.returncode == 2 and "line 2" in r.stderr
    gf4 = os.path.join(tmp, "gf4.json")
    with open(gf4, "w") as fh:
        fh.write('{"field": {"GF": 4}, "even": [], "odd": []}')
    assert _cli("validate", gf4, cwd=tmp).returncode == 2
    assert _cli("no-such-command", cwd=tmp).returncode == 2
    return f"round-trip on {3 * len(CATALOG_NAMES)} algebras; {len(cmds)} commands byte-stable; exit codes 0/1/2 observed"


# ---------------------------------------------------------------------------
# pytest entry points
# ---------------------------------------------------------------------------


def test_criterion_1_axiom_suite():
    run_criterion(1, criterion_1)


def test_criterion_2_constructive_isoclinisms():
    run_criterion(2, criterion_2)


def test_criterion_3_multiplier_oracle():
    run_criterion(3, criterion_3)


def test_criterion_4_cover_suite():
    run_criterion(4, criterion_4)


def test_criterion_5_stem_extensions_from_cover():
    run_criterion(5, criterion_5)


def test_criterion_6_stem_reduction_and_bound():
    run_criterion(6, criterion_6)


def test_criterion_7_decider_on_labelled_pairs():
    run_criterion(7, criterion_7)


def test_criterion_8_cli_round_trip(tmp_path):
    run_criterion(8, lambda: criterion_8(str(tmp_path)))


if __name__ == "__main__":
    import tempfile

    failed = 0
    for n in range(1, 9):
        fn = globals()[f"criterion_{n}"]
        try:
            if n == 8:
                with tempfile.TemporaryDirectory() as d:
                    run_criterion(n, lambda: criterion_8(d))
            else:
                run_criterion(n, fn)
        except Exception:
            failed += 1
    sys.exit(1 if failed else 0)
