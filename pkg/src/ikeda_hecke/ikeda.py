"""Hecke eigenvalues of Ikeda lifts, exactly.

For a lift living in genus 2n built from an elliptic eigenform of weight k
with Satake parameters a, a^(-1), the local parameters at p are the explicit
monomials

    a_0 = p^(nk - n/2) a^(-n),    a_i = a p^(-n - 1/2 + i)   (1 <= i <= 2n),

normalized so that a_0^2 a_1 ... a_{2n} = p^(2nk - n).  Working in
q = p^(1/2) keeps every exponent integral.  The normalized eigenvalue of the
Hecke operator at p^r,

    lam~ = lam / p^(r(nk - n/2))
         = sum over 0 <= d_1 <= ... <= d_{2n} <= r of
               a^(-nr + sum d_i) q^(sum (2i - 2n - 1) d_i) Phi(delta),

is a Laurent polynomial in (q, a) with integer coefficients, independent of
the weight.  This module computes it two ways: the closed form above, and a
brute-force route that pushes the parameter monomials through the generic
spherical evaluation (a sum over all of S_{2n}); the two must agree exactly.
It also checks the structural facts the closed form rests on (the vanishing
of every non-identity permutation weight, and the collapse of the normalizer
times the identity weight into the Gaussian-multinomial factor), verifies
the coefficient support/size bounds, and evaluates the explicit threshold
beyond which every eigenvalue is positive.
"""

from __future__ import annotations

import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .exact import ALaurent, Laurent, RatFunc
from .qcomb import enumerate_deltas, gaussian_multinomial, multiplicity_signature
from .spherical import SphericalPoint, c_factor, p_normalizer, q_delta


class DomainError(ValueError):
    """An argument is outside the supported numeric domain."""


class OracleNotPolynomial(ArithmeticError):
    """A brute-force coefficient failed to reduce to a Laurent polynomial."""


class NonIntegerCoefficient(ArithmeticError):
    """An eigenvalue coefficient is not an integer (bug indicator)."""


class CheckFailed(Exception):
    """A verification found a counterexample; carries a witness dict."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class BoundViolated(CheckFailed):
    """A coefficient bound fails at some (m, value, bound)."""


class PositivityViolated(CheckFailed):
    """An above-threshold prime produced a nonpositive eigenvalue."""


@dataclass(frozen=True)
class CheckRecord:
    """One verification step: JSON-ready name/status/witness."""

    name: str
    status: str  # "pass" | "fail" | "info"
    witness: dict = field(default_factory=dict)


@dataclass(frozen=True)
class IkedaContext:
    """Parameters of one eigenvalue computation.

    n is the half-genus (the lift lives in genus 2n), r the Hecke-operator
    exponent.  The elliptic weight k only matters when reattaching the
    global power of p for unnormalized numeric output, so it is optional.
    """

    n: int
    r: int
    k: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.r < 0:
            raise ValueError("r must be >= 0")
        if self.k is not None and self.k < 1:
            raise ValueError("k must be >= 1 when given")


@dataclass(frozen=True)
class IkedaSatakePoint:
    """The lift's local parameters as monomials in (q, a)."""

    a0: ALaurent
    ai: tuple[ALaurent, ...]

    def __post_init__(self):
        n2 = len(self.ai)
        prod = self.a0 * self.a0
        for x in self.ai:
            prod = prod * x
        if not (prod.is_monomial() and prod.min_exp() == 0):
            raise ValueError("Satake parameters violate the normalization")
        qpart = prod.terms[0]
        if not (qpart.is_monomial() and qpart.coefficient(qpart.min_exp()) == 1):
            raise ValueError("Satake parameters violate the normalization")


@dataclass(frozen=True)
class EigenvaluePoly:
    """Normalized eigenvalue lam~ as a Laurent polynomial in (q, a).

    ``poly`` maps a-exponents to Laurent polynomials in q; the global factor
    p^(r(nk - n/2)) is deliberately left out and reattached only in numeric
    output.
    """

    poly: ALaurent
    context: IkedaContext


def satake_point(ctx: IkedaContext) -> IkedaSatakePoint:
    """The parameter monomials for the context; needs the weight k."""
    if ctx.k is None:
        raise ValueError("satake_point needs a context with the weight k set")
    n, k = ctx.n, ctx.k
    a0 = ALaurent.term(Laurent.term(1, 2 * n * k - n), -n)
    ai = tuple(
        ALaurent.term(Laurent.term(1, 2 * i - 2 * n - 1), 1)
        for i in range(1, 2 * n + 1)
    )
    point = IkedaSatakePoint(a0=a0, ai=ai)
    prod = a0 * a0
    for x in ai:
        prod = prod * x
    if prod != ALaurent.term(Laurent.term(1, 2 * (2 * n * k - n)), 0):
        raise ValueError("Satake parameters violate the normalization")
    return point


def _ratio_point(n: int) -> SphericalPoint:
    """Evaluation point for the permutation weights, over Q(q).

    The weights consume only ratios a_i/a_j = q^(2(i-j)), so the factor a
    cancels and x_i = q^(2i - 2n - 1) carries all the information.
    """
    xs = tuple(
        RatFunc(Laurent.term(1, 2 * i - 2 * n - 1)) for i in range(1, 2 * n + 1)
    )
    return SphericalPoint(p=RatFunc(Laurent.term(1, 2)), xs=xs)


def _oracle_point(n: int) -> SphericalPoint:
    """Fully symbolic point: a-monomials over Q(q), for the brute force."""
    xs = tuple(
        ALaurent.term(RatFunc(Laurent.term(1, 2 * i - 2 * n - 1)), 1)
        for i in range(1, 2 * n + 1)
    )
    return SphericalPoint(p=ALaurent.term(RatFunc(Laurent.term(1, 2)), 0), xs=xs)


def eigenvalue_closed_form(ctx: IkedaContext) -> EigenvaluePoly:
    """lam~ from the closed formula: one Gaussian-multinomial term per
    nondecreasing tuple, no permutation sums."""
    n, r = ctx.n, ctx.r
    terms: dict[int, Laurent] = {}
    for delta in enumerate_deltas(2 * n, r):
        a_exp = -n * r + sum(delta)
        q_exp = sum((2 * i - 2 * n - 1) * d for i, d in enumerate(delta, 1))
        contrib = Laurent.term(1, q_exp) * gaussian_multinomial(delta)
        acc = terms.get(a_exp)
        terms[a_exp] = contrib if acc is None else acc + contrib
    return EigenvaluePoly(poly=ALaurent(terms), context=ctx)


def eigenvalue_via_oracle(ctx: IkedaContext) -> EigenvaluePoly:
    """lam~ by brute force through the spherical machinery.

    Substitutes the parameter monomials into the full permutation-sum
    formula over the coefficient field of a-Laurent polynomials with Q(q)
    entries, then divides out the a/q content of a_0^r.  Every coefficient
    of the result must reduce to a genuine Laurent polynomial in q; anything
    else is reported as ``OracleNotPolynomial``.  Feasible for n <= 3
    (a (2n)!-term sum per tuple).
    """
    n, r = ctx.n, ctx.r
    point = _oracle_point(n)
    cache: dict = {}
    total: ALaurent | None = None
    for delta in enumerate_deltas(2 * n, r):
        normalizer = p_normalizer(multiplicity_signature(delta), point)
        term = q_delta(delta, point, cache) / normalizer
        total = term if total is None else total + term
    total = total * ALaurent.term(RatFunc.one(), -n * r)

    def as_laurent(coeff: RatFunc) -> Laurent:
        if not coeff.is_laurent():
            raise OracleNotPolynomial(
                f"coefficient did not reduce to a polynomial: {coeff}"
            )
        return coeff.numer

    return EigenvaluePoly(poly=total.map_coefficients(as_laurent), context=ctx)


def lemma_vanishing_check(n: int) -> list[CheckRecord]:
    """Verify that every non-identity permutation weight vanishes at the
    lift parameters, and the identity weight does not.

    Each vanishing record carries one witnessing pair (i, j), i < j with
    sigma(i) = sigma(j) + 1, whose factor has an exactly zero numerator.
    Raises ``CheckFailed`` on any counterexample.
    """
    point = _ratio_point(n)
    m = 2 * n
    identity = tuple(range(m))
    records = []
    for sigma in permutations(range(m)):
        value = c_factor(sigma, point)
        one_based = [s + 1 for s in sigma]
        if sigma == identity:
            if not value:
                raise CheckFailed(
                    "identity weight vanished", {"sigma": one_based}
                )
            records.append(
                CheckRecord(
                    name="c(identity) nonzero",
                    status="pass",
                    witness={"sigma": one_based, "value": str(value)},
                )
            )
            continue
        if value:
            raise CheckFailed(
                f"nonzero weight at sigma={one_based}",
                {"sigma": one_based, "value": str(value)},
            )
        pair = next(
            (
                (i + 1, j + 1)
                for i in range(m)
                for j in range(i + 1, m)
                if sigma[i] == sigma[j] + 1
            ),
            None,
        )
        if pair is None:
            raise CheckFailed(
                f"no vanishing factor found for sigma={one_based}",
                {"sigma": one_based},
            )
        records.append(
            CheckRecord(
                name=f"c(sigma)=0 at sigma={tuple(one_based)}",
                status="pass",
                witness={"sigma": one_based, "zero_factor": list(pair)},
            )
        )
    return records


def pc_identity_check(n: int, delta) -> bool:
    """Exact identity in Q(q): the inverse normalizer times the identity
    permutation weight equals the Gaussian-multinomial factor of delta."""
    point = _ratio_point(n)
    identity = tuple(range(2 * n))
    lhs = c_factor(identity, point) / p_normalizer(
        multiplicity_signature(delta), point
    )
    return lhs == RatFunc(gaussian_multinomial(delta))


def coefficients(ep: EigenvaluePoly) -> dict[int, ALaurent]:
    """Transpose lam~ into {q-exponent m: coefficient in Z[a, a^(-1)]}.

    Raises ``NonIntegerCoefficient`` if any coefficient is fractional.
    """
    out: dict[int, dict[int, Fraction]] = {}
    for a_exp, qpoly in ep.poly.terms.items():
        for q_exp, c in qpoly.terms.items():
            if c.denominator != 1:
                raise NonIntegerCoefficient(
                    f"coefficient {c} at q^{q_exp} a^{a_exp}"
                )
            out.setdefault(q_exp, {})[a_exp] = c
    return {m: ALaurent(d) for m, d in sorted(out.items())}


def support_window(ctx: IkedaContext) -> tuple[int, int]:
    """The proven q-support window [-rn^2 - 2n(2n-1), rn^2]."""
    n, r = ctx.n, ctx.r
    return (-r * n * n - 2 * n * (2 * n - 1), r * n * n)


def verify_bounds(ctx: IkedaContext) -> list[CheckRecord]:
    """Check the coefficient facts about lam~: support window, leading
    coefficient 1, and the size bounds (value at a=1, which dominates the
    unit circle since every underlying count is nonnegative)

        |c_m| <= 2 (2n)^(rn^2 - m)   and   |c_m|^(1/(rn^2-m)) <= 4n

    for every m below the top exponent.  Raises ``BoundViolated``.
    """
    n = ctx.n
    ep = eigenvalue_closed_form(ctx)
    cms = coefficients(ep)
    lo, hi = support_window(ctx)
    records = []

    min_m, max_m = min(cms), max(cms)
    if min_m < lo or max_m > hi:
        raise BoundViolated(
            f"support [{min_m}, {max_m}] leaves window [{lo}, {hi}]",
            {"support": [min_m, max_m], "window": [lo, hi]},
        )
    records.append(
        CheckRecord(
            name="support-window",
            status="pass",
            witness={"support": [min_m, max_m], "window": [lo, hi]},
        )
    )

    leading = cms.get(hi)
    if leading != ALaurent({0: Fraction(1)}):
        raise BoundViolated(
            f"leading coefficient c_{hi} != 1",
            {"m": hi, "value": str(leading)},
        )
    records.append(
        CheckRecord(
            name=f"c_{hi} = 1", status="pass", witness={"m": hi}
        )
    )

    for m, cm in cms.items():
        if m >= hi:
            continue
        value = int(abs(cm.sum_coefficients()))
        gap = hi - m
        bound_two = 2 * (2 * n) ** gap
        bound_4n = (4 * n) ** gap
        if value > bound_two or value > bound_4n:
            raise BoundViolated(
                f"|c_{m}| at a=1 is {value}, exceeding the bound",
                {"m": m, "value": value, "bounds": [bound_two, bound_4n]},
            )
        records.append(
            CheckRecord(
                name=f"bound m={m}",
                status="pass",
                witness={
                    "m": m,
                    "value_at_1": value,
                    "bound_2(2n)^gap": bound_two,
                    "bound_(4n)^gap": bound_4n,
                },
            )
        )
    return records


def positivity_threshold(ctx: IkedaContext) -> int:
    """The explicit bound (4n(2rn^2 + 2n(2n-1)))^2: every prime beyond it
    gives a positive eigenvalue."""
    if ctx.r < 1:
        raise DomainError("positivity threshold requires r >= 1")
    n, r = ctx.n, ctx.r
    return (4 * n * (2 * r * n * n + 2 * n * (2 * n - 1))) ** 2


def is_prime(m: int) -> bool:
    """Trial division; ample for desk-scale thresholds."""
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def next_prime(m: int) -> int:
    """Smallest prime strictly greater than m."""
    candidate = m + 1
    while not is_prime(candidate):
        candidate += 1
    return candidate


def primes_above(bound: int, count: int) -> list[int]:
    out = []
    p = bound
    for _ in range(count):
        p = next_prime(p)
        out.append(p)
    return out


@dataclass(frozen=True)
class NumericValue:
    """A floating-point eigenvalue with a crude forward error bound."""

    value: float
    error_bound: float


def _symmetric_terms(ep: EigenvaluePoly) -> tuple[list[tuple[int, int, int]], int]:
    """Fold lam~ into (q-exponent, |a-exponent|, integer coefficient) triples.

    Requires the a <-> a^(-1) symmetry (checked here), which makes the value
    on the unit circle a real polynomial in t = a + a^(-1).
    """
    triples = []
    max_j = 0
    for m, cm in coefficients(ep).items():
        for j, coeff in cm.terms.items():
            if j and cm.terms.get(-j) != coeff:
                raise CheckFailed(
                    "eigenvalue polynomial is not symmetric in a <-> 1/a",
                    {"m": m, "j": j},
                )
            if j >= 0:
                triples.append((m, j, int(coeff)))
                max_j = max(max_j, j)
    return triples, max_j


def _eval_triples(triples, max_j: int, p, t: float, q_powers=None) -> NumericValue:
    """Compensated evaluation of the folded form at q = sqrt(p), a + 1/a = t.

    Powers a^j + a^(-j) follow the two-term recurrence s_j = t s_{j-1} -
    s_{j-2} with s_0 = 2, s_1 = t.  The error bound is the crude
    machine-epsilon x term-count x max-term-magnitude estimate.
    """
    s = [2.0, float(t)]
    for _ in range(2, max_j + 1):
        s.append(t * s[-1] - s[-2])
    sqrt_p = math.sqrt(p)
    total = 0.0
    comp = 0.0
    max_mag = 0.0
    for m, j, coeff in triples:
        qm = q_powers[m] if q_powers is not None else sqrt_p**m
        term = coeff * qm * (s[j] if j else 1.0)
        max_mag = max(max_mag, abs(term))
        fresh = total + term
        if abs(total) >= abs(term):
            comp += (total - fresh) + term
        else:
            comp += (term - fresh) + total
        total = fresh
    value = total + comp
    err = sys.float_info.epsilon * len(triples) * max_mag
    return NumericValue(value=value, error_bound=err)


def evaluate_numeric(
    ep: EigenvaluePoly,
    p,
    t: float,
    normalized: bool = True,
    check_domain: bool = True,
) -> NumericValue:
    """Evaluate lam~ (or lam, when ``normalized`` is off) at q = sqrt(p) and
    a on the unit circle with a + a^(-1) = t.

    ``check_domain`` may be disabled to allow |t| > 2 (a real rather than
    unit-circle parameter), used for cross checks against exact evaluation.
    """
    if p < 2:
        raise DomainError(f"p must be >= 2, got {p}")
    if check_domain and abs(t) > 2:
        raise DomainError(f"t must lie in [-2, 2], got {t}")
    triples, max_j = _symmetric_terms(ep)
    out = _eval_triples(triples, max_j, p, t)
    if normalized:
        return out
    ctx = ep.context
    if ctx.k is None:
        raise DomainError("unnormalized output needs the weight k in the context")
    exponent = ctx.r * (2 * ctx.n * ctx.k - ctx.n)  # power of sqrt(p)
    y = 0.5 * exponent * math.log(p)
    try:
        scale = math.exp(y)
    except OverflowError:
        scale = math.inf
    value = out.value * scale
    # the exp/log rescaling alone carries a relative error of order |y| eps
    err = out.error_bound * scale + abs(value) * 2 * abs(y) * sys.float_info.epsilon
    return NumericValue(value=value, error_bound=err)


def positivity_scan(
    ctx: IkedaContext,
    primes: list[int],
    t_grid_size: int = 401,
    threads: int = 1,
) -> list[CheckRecord]:
    """Scan lam~ over a uniform t-grid in [-2, 2] for each prime.

    For primes above the positivity threshold the minimum must be positive
    (``PositivityViolated`` otherwise); below the threshold the sign is
    reported without assertion.
    """
    if ctx.r < 1:
        raise DomainError("positivity scan requires r >= 1")
    if t_grid_size < 3:
        raise DomainError("t grid must have at least 3 points")
    threshold = positivity_threshold(ctx)
    ep = eigenvalue_closed_form(ctx)
    triples, max_j = _symmetric_terms(ep)
    grid = [-2.0 + 4.0 * i / (t_grid_size - 1) for i in range(t_grid_size)]

    def scan_one(p: int) -> CheckRecord:
        exps = {m for m, _, _ in triples}
        sqrt_p = math.sqrt(p)
        q_powers = {m: sqrt_p**m for m in exps}
        best = None
        max_err = 0.0
        for t in grid:
            out = _eval_triples(triples, max_j, p, t, q_powers)
            max_err = max(max_err, out.error_bound)
            if best is None or out.value < best[0]:
                best = (out.value, t)
        min_value, argmin_t = best
        above = p > threshold
        if above and min_value <= 0:
            raise PositivityViolated(
                f"nonpositive eigenvalue at p={p}, t={argmin_t}",
                {"prime": p, "t": argmin_t, "min": min_value},
            )
        return CheckRecord(
            name=f"p={p}",
            status="pass" if above else "info",
            witness={
                "prime": p,
                "above_threshold": above,
                "min": min_value,
                "argmin_t": argmin_t,
                "error_bound": max_err,
            },
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(scan_one, primes))
    return [scan_one(p) for p in primes]
