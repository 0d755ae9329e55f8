"""Acceptance gate: the eleven criteria, each printing one PASS/FAIL line.

Everything symbolic is compared exactly (zero tolerance); the positivity
scan is numeric by design and must clear its own reported error bound.
Run with ``pytest -s tests/test_acceptance.py`` to see the lines as they go.
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from ikeda_hecke.exact import ALaurent, Laurent
from ikeda_hecke.ikeda import (
    BoundViolated,
    IkedaContext,
    coefficients,
    eigenvalue_closed_form,
    eigenvalue_via_oracle,
    lemma_vanishing_check,
    pc_identity_check,
    positivity_scan,
    positivity_threshold,
    primes_above,
    verify_bounds,
)
from ikeda_hecke.qcomb import enumerate_deltas, gaussian_multinomial, inversion_sum
from ikeda_hecke.spherical import (
    SphericalPoint,
    elementary_symmetric,
    omega_T_pr,
    omega_t,
    weyl_transform,
)

GRID = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1)]
GOLDEN = Path(__file__).parent / "golden"


def _report(ok: bool, label: str, started: float) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"{status}  {label}  [{time.time() - started:.1f}s]")
    assert ok, label


@lru_cache(maxsize=None)
def _closed(n: int, r: int):
    return eigenvalue_closed_form(IkedaContext(n=n, r=r))


def test_criterion_01_gaussian_multinomial_oracle():
    started = time.time()
    ok = True
    for m in (2, 4, 6):
        for r in (1, 2, 3):
            for delta in enumerate_deltas(m, r):
                gm = gaussian_multinomial(delta)
                ok = ok and gm == inversion_sum(delta)
                ok = ok and gm.coefficient(0) == 1
                for exp, coeff in gm.terms.items():
                    j = -exp // 2
                    ok = ok and coeff == int(coeff) and 0 <= coeff <= m**j
    _report(ok, "criterion 1: Gaussian multinomial = inversion sum "
                "(m in {2,4,6}, r <= 3, bounds included)", started)


def test_criterion_02_vanishing_lemma():
    started = time.time()
    ok = True
    for n in (1, 2, 3):
        import math
        records = lemma_vanishing_check(n)  # raises CheckFailed on violation
        ok = ok and len(records) == math.factorial(2 * n)
        ok = ok and all(rec.status == "pass" for rec in records)
    _report(ok, "criterion 2: non-identity permutation weights vanish "
                "(n in {1,2,3}, identity nonzero)", started)


def test_criterion_03_pc_identity():
    started = time.time()
    ok = True
    for n in (1, 2, 3):
        for delta in enumerate_deltas(2 * n, 2):
            ok = ok and pc_identity_check(n, delta)
    _report(ok, "criterion 3: normalizer times identity weight equals the "
                "Gaussian factor (n <= 3, r <= 2)", started)


def test_criterion_04_closed_form_vs_oracle():
    started = time.time()
    ok = True
    for n, r in GRID:
        closed = _closed(n, r)
        brute = eigenvalue_via_oracle(IkedaContext(n=n, r=r))
        ok = ok and closed.poly == brute.poly
    _report(ok, "criterion 4: closed form = spherical brute force on "
                "{1,2}x{1,2,3} and (3,1), exactly", started)


def test_criterion_05_genus_two_closed_form():
    started = time.time()
    expected = ALaurent(
        {1: Laurent.one(), -1: Laurent.one(), 0: Laurent({1: 1, -1: 1})}
    )
    ok = _closed(1, 1).poly == expected
    ok = ok and _closed(1, 2).poly == eigenvalue_via_oracle(
        IkedaContext(n=1, r=2)
    ).poly
    _report(ok, "criterion 5: genus-2 eigenvalue a + 1/a + q + 1/q and the "
                "r=2 oracle match", started)


def test_criterion_06_coefficient_bounds():
    started = time.time()
    ok = True
    for n, r in GRID:
        try:
            records = verify_bounds(IkedaContext(n=n, r=r))
        except BoundViolated:
            ok = False
            continue
        ok = ok and all(rec.status == "pass" for rec in records)
        # the root form of the bound, as exact integer comparisons
        cms = coefficients(_closed(n, r))
        top = r * n * n
        for m, cm in cms.items():
            if m < top:
                value = int(abs(cm.sum_coefficients()))
                ok = ok and value <= (4 * n) ** (top - m)
    _report(ok, "criterion 6: support window, leading 1, and the 4n "
                "coefficient bound on the full grid", started)


def test_criterion_07_a_symmetry():
    started = time.time()
    ok = True
    for n, r in GRID:
        poly = _closed(n, r).poly
        ok = ok and poly == poly.substitute_inverse()
    _report(ok, "criterion 7: eigenvalues symmetric under a <-> 1/a on the "
                "full grid", started)


def test_criterion_08_positivity_above_threshold():
    started = time.time()
    ok = True
    for n in (1, 2):
        for r in (1, 2, 3):
            ctx = IkedaContext(n=n, r=r)
            primes = primes_above(positivity_threshold(ctx), 3)
            records = positivity_scan(ctx, primes, t_grid_size=401)
            for rec in records:
                ok = ok and rec.status == "pass"
                ok = ok and rec.witness["min"] > rec.witness["error_bound"]
    _report(ok, "criterion 8: first three primes above the threshold give "
                "positive minima beyond the error estimate", started)


def _random_point(rank, rng):
    values = []
    while len(values) < rank:
        v = Fraction(rng.randint(3, 300), rng.randint(1, 3))
        if v > 1 and v not in values:
            values.append(v)
    return SphericalPoint(
        p=Fraction(rng.randint(2, 13)),
        xs=tuple(values),
        x0=Fraction(rng.randint(2, 30)),
    )


def test_criterion_09_route_agreement_and_weyl_invariance():
    started = time.time()
    rng = random.Random(20260810)
    ok = True
    for idx in range(50):
        rank = 1 + idx % 4
        point = _random_point(rank, rng)
        base = {}
        for r in (1, 2, 3):
            direct = omega_T_pr(r, point, "direct")
            base[r] = direct
            ok = ok and direct == omega_T_pr(r, point, "via-gl")
        generators = list(range(1, rank + 1)) + [
            tuple(range(i)) + (i + 1, i) + tuple(range(i + 2, rank))
            for i in range(rank - 1)
        ]
        for gen in generators:
            moved = weyl_transform(point, gen)
            for r in (1, 2, 3):
                ok = ok and omega_T_pr(r, moved) == base[r]
    _report(ok, "criterion 9: both spherical routes agree and are Weyl "
                "invariant at 50 random points (rank <= 4, r <= 3)", started)


def test_criterion_10_elementary_symmetric_identity():
    started = time.time()
    rng = random.Random(97)
    ok = True
    for idx in range(50):
        rank = 1 + idx % 4
        point = _random_point(rank, rng)
        for i in range(rank + 1):
            delta = (0,) * (rank - i) + (1,) * i
            expected = point.p ** ((-i * (i + 1)) // 2) * elementary_symmetric(
                i, point.xs
            )
            ok = ok and omega_t(delta, point) == expected
    _report(ok, "criterion 10: GL image of the i-th fundamental coset is "
                "p^(-i(i+1)/2) s_i at 50 random points", started)


def _cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "ikeda_hecke.cli", *argv],
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_criterion_11_cli_contract(tmp_path):
    started = time.time()
    ok = True

    args = ("eigenvalue", "--n", "2", "--r", "1", "--format", "json",
            "--no-timestamp")
    first = _cli(*args)
    second = _cli(*args)
    ok = ok and first == second and first[0] == 0
    ok = ok and first[1] == (GOLDEN / "eigenvalue_n2r1.json").read_text()

    rc, out, _ = _cli("table", "--n", "1", "--r-max", "2", "--ap-file",
                      str(GOLDEN / "delta_aps.txt"), "--format", "csv",
                      "--no-timestamp")
    ok = ok and rc == 0 and out == (GOLDEN / "table_delta.csv").read_text()

    rc, out, _ = _cli("verify", "bounds", "--n", "1", "--r", "3",
                      "--format", "json", "--no-timestamp")
    ok = ok and rc == 0
    ok = ok and out == (GOLDEN / "verify_bounds_n1r3.json").read_text()
    ok = ok and any(c["name"] == "c_3 = 1" for c in json.loads(out)["checks"])

    ok = ok and _cli("threshold", "--n", "1", "--r", "0")[0] == 2
    ok = ok and _cli("positivity", "--n", "1", "--r", "1", "--grid", "2")[0] == 2
    ok = ok and _cli("eigenvalue", "--n", "1")[0] == 2

    bad = tmp_path / "bad.txt"
    bad.write_text("k 12\n2 -24\n7 abc\n", encoding="ascii")
    rc, _, err = _cli("table", "--n", "1", "--ap-file", str(bad))
    ok = ok and rc == 1 and "line 3" in err

    _report(ok, "criterion 11: CLI determinism, exit codes and a_p "
                "validation against golden files", started)
