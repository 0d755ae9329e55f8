"""q-analog combinatorics behind the eigenvalue coefficients.

The central object is the Gaussian-multinomial factor attached to a
nondecreasing integer tuple delta = (d_1 <= ... <= d_m): with
phi_m(x) = prod_{i=1}^m (x^i - 1) and (k_1, ..., k_t) the run lengths of
equal entries of delta,

    Phi(delta) = phi_m(x) / (phi_{k_1}(x) ... phi_{k_t}(x))  at  x = p^(-1).

Phi(delta) is computed here twice, by independent routes:

* ``gaussian_multinomial`` -- the product formula with exact polynomial
  division, returned as a polynomial in q^(-2) (q = p^(1/2), so q^(-2)
  stands for p^(-1));
* ``inversion_sum`` -- the generating function of the inversion statistic
  over all distinct rearrangements of the multiset {d_1, ..., d_m}.

Their exact agreement is a test oracle, so the two code paths share nothing
beyond the Laurent arithmetic.
"""

from __future__ import annotations

import math
from collections import Counter
from functools import lru_cache
from typing import Iterator

from .exact import Laurent


def _check_delta(delta) -> tuple[int, ...]:
    delta = tuple(int(d) for d in delta)
    if not delta:
        raise ValueError("delta tuple must be nonempty")
    if delta[0] < 0:
        raise ValueError("delta entries must be nonnegative")
    if any(a > b for a, b in zip(delta, delta[1:])):
        raise ValueError(f"delta tuple must be nondecreasing: {delta}")
    return delta


def enumerate_deltas(length: int, bound: int) -> Iterator[tuple[int, ...]]:
    """Yield all nondecreasing tuples 0 <= d_1 <= ... <= d_length <= bound.

    Lexicographic order; exactly C(bound + length, length) tuples.
    """
    if length < 1:
        raise ValueError("length must be positive")
    if bound < 0:
        raise ValueError("bound must be nonnegative")

    def rec(prefix: tuple[int, ...], lo: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == length:
            yield prefix
            return
        for v in range(lo, bound + 1):
            yield from rec(prefix + (v,), v)

    yield from rec((), 0)


def multiplicity_signature(delta) -> tuple[int, ...]:
    """Run lengths of equal consecutive entries, e.g. (0,0,1,2) -> (2,1,1)."""
    delta = _check_delta(delta)
    parts = []
    run = 1
    for prev, cur in zip(delta, delta[1:]):
        if cur == prev:
            run += 1
        else:
            parts.append(run)
            run = 1
    parts.append(run)
    return tuple(parts)


@lru_cache(maxsize=None)
def phi(m: int) -> Laurent:
    """The product prod_{i=1}^m (x^i - 1) as a polynomial in x; phi(0) = 1."""
    if m < 0:
        raise ValueError("phi is defined for nonnegative arguments")
    if m == 0:
        return Laurent.one()
    return phi(m - 1) * (Laurent.term(1, m) - 1)


def gaussian_multinomial(delta) -> Laurent:
    """Phi(delta) as a polynomial in q^(-2), via exact polynomial division.

    The quotient phi_m / (phi_{k_1} ... phi_{k_t}) is always exact; an
    InexactDivision escaping here would indicate a bug.  The result has
    nonnegative integer coefficients and constant term 1.
    """
    delta = _check_delta(delta)
    quot = phi(len(delta))
    for k in multiplicity_signature(delta):
        quot = quot.exact_div(phi(k))
    return quot.scale_exponents(-2)


def inversion_count(seq) -> int:
    """Number of pairs i < j with seq[i] > seq[j]."""
    seq = tuple(seq)
    return sum(
        1
        for i in range(len(seq))
        for j in range(i + 1, len(seq))
        if seq[i] > seq[j]
    )


def _distinct_rearrangements(delta) -> Iterator[tuple[int, ...]]:
    counts = Counter(delta)
    values = sorted(counts)
    length = len(delta)

    def rec(prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for v in values:
            if counts[v]:
                counts[v] -= 1
                prefix.append(v)
                yield from rec(prefix)
                prefix.pop()
                counts[v] += 1

    yield from rec([])


def inversion_sum(delta) -> Laurent:
    """Sum of q^(-2 * inversions(w)) over distinct rearrangements w of delta.

    Independent oracle for ``gaussian_multinomial``; the number of summands
    is the plain multinomial coefficient of the multiplicity signature.
    """
    delta = _check_delta(delta)
    hist: Counter[int] = Counter()
    for word in _distinct_rearrangements(delta):
        hist[inversion_count(word)] += 1
    return Laurent({-2 * j: c for j, c in hist.items()})


def weak_composition_count(total: int, parts: int) -> int:
    """Number of ways to write total as an ordered sum of `parts` values >= 0."""
    if total < 0:
        raise ValueError("total must be nonnegative")
    if parts < 1:
        raise ValueError("parts must be positive")
    return math.comb(total + parts - 1, parts - 1)


def multinomial(signature) -> int:
    """m! / (k_1! ... k_t!) for a multiplicity signature summing to m."""
    m = sum(signature)
    out = math.factorial(m)
    for k in signature:
        out //= math.factorial(k)
    return out
