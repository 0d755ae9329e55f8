"""Point evaluation of the spherical images of Hecke operators.

Everything here works over an arbitrary exact coefficient field, supplied
through the coordinates of a ``SphericalPoint``: plain ``Fraction`` values,
``RatFunc`` elements, or ``ALaurent`` monomials over ``RatFunc``.  The
required field surface is only +, -, *, /, integer ** and exact zero tests,
so the same code serves random rational spot checks and the fully symbolic
substitution of lift parameters.

The building blocks follow Andrianov's explicit description of the general
linear spherical map: the rational-function weight attached to a permutation,

    c(sigma) = prod_{i<j} (1 - p^(-1) x_sigma(i)/x_sigma(j))
                        / (1 -        x_sigma(i)/x_sigma(j)),

the permutation sum Q_delta, the normalizing product P attached to the run
lengths of delta, and on top the two routes to the symplectic image of the
Hecke operator at p^r (its direct sum form, and the detour through the GL
image of each diagonal double coset) whose exact agreement is checked in the
test suite.

A point with coincident coordinates puts a zero into a c-denominator; such
points are rejected with ``PoleAtPoint``, never perturbed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable

from .exact import ALaurent, Laurent, RatFunc
from .qcomb import enumerate_deltas, multiplicity_signature


class PoleAtPoint(ArithmeticError):
    """A c-factor denominator vanished (coincident coordinates)."""


class ZeroCoordinate(ValueError):
    """A spherical point coordinate (or p-value) is zero."""


@dataclass(frozen=True)
class SphericalPoint:
    """Evaluation point: a value for p, GL coordinates x_1..x_m, optional x_0.

    All coordinates must be nonzero; pairwise-distinct x_i (as field
    elements) is additionally required wherever c-factors are evaluated,
    and is enforced there by ``PoleAtPoint``.
    """

    p: object
    xs: tuple
    x0: object = None

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(self.xs))
        if not self.p:
            raise ZeroCoordinate("p-value must be nonzero")
        if any(not x for x in self.xs):
            raise ZeroCoordinate("all coordinates must be nonzero")
        if self.x0 is not None and not self.x0:
            raise ZeroCoordinate("x0 must be nonzero")

    @property
    def rank(self) -> int:
        return len(self.xs)

    @property
    def field(self) -> str:
        sample = self.xs[0] if self.xs else self.p
        if isinstance(sample, ALaurent):
            return "alaurent"
        if isinstance(sample, (RatFunc, Laurent)):
            return "ratfunc"
        return "rational"


def _check_permutation(sigma, m: int) -> tuple[int, ...]:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(m)):
        raise ValueError(f"not a permutation of 0..{m - 1}: {sigma}")
    return sigma


def elementary_symmetric(i: int, values: Iterable):
    """The i-th elementary symmetric polynomial of the given field values."""
    values = tuple(values)
    if not 0 <= i <= len(values):
        raise ValueError(f"index {i} out of range for {len(values)} values")
    # e_k built by the usual one-pass recurrence e_k += x * e_{k-1}.
    one = values[0] ** 0 if values else 1
    es = [one] + [None] * i
    for x in values:
        for k in range(min(i, len(es) - 1), 0, -1):
            if es[k - 1] is None:
                continue
            contrib = es[k - 1] * x
            es[k] = contrib if es[k] is None else es[k] + contrib
    return es[i] if es[i] is not None else one - one


def c_factor(sigma, point: SphericalPoint):
    """The permutation weight c(sigma) at the point, as an exact field value.

    Zero numerator factors short-circuit the product (the value is exactly
    zero) but every denominator is still checked, so poles are never masked.
    """
    m = point.rank
    sigma = _check_permutation(sigma, m)
    one = point.p ** 0
    p_inv = point.p ** -1
    xs = point.xs
    acc = one
    hit_zero = False
    for i in range(m - 1):
        for j in range(i + 1, m):
            ratio = xs[sigma[i]] * xs[sigma[j]] ** -1
            den = one - ratio
            if not den:
                raise PoleAtPoint(
                    f"coincident coordinates x_{sigma[i] + 1} = x_{sigma[j] + 1}"
                )
            num = one - p_inv * ratio
            if not num:
                hit_zero = True
            elif not hit_zero:
                acc = acc * num / den
    return one - one if hit_zero else acc


def q_delta(delta, point: SphericalPoint, _c_cache: dict | None = None):
    """The permutation sum Q_delta: sum over all of S_m of the monomial
    x_sigma(1)^d_1 ... x_sigma(m)^d_m weighted by c(sigma).

    The sum runs over the full symmetric group even when delta has repeated
    entries.  ``_c_cache`` may carry c(sigma) values across calls at the
    same point (they do not depend on delta).
    """
    m = point.rank
    delta = tuple(delta)
    if len(delta) != m:
        raise ValueError(f"delta length {len(delta)} != rank {m}")
    if _c_cache is None:
        _c_cache = {}
    xs = point.xs
    total = None
    for sigma in permutations(range(m)):
        c_val = _c_cache.get(sigma)
        if c_val is None:
            c_val = c_factor(sigma, point)
            _c_cache[sigma] = c_val
        if not c_val:
            continue
        term = c_val
        for pos, d in enumerate(delta):
            if d:
                term = term * xs[sigma[pos]] ** d
        total = term if total is None else total + term
    if total is None:
        one = point.p ** 0
        return one - one
    return total


def p_normalizer(signature, point: SphericalPoint):
    """The normalizer P attached to a multiplicity signature, evaluated at
    p^(-1): the product of the phi_{k_i} divided by phi_1^m."""
    p_inv = point.p ** -1
    one = point.p ** 0

    def phi_at(k: int):
        value = one
        power = one
        for _ in range(k):
            power = power * p_inv
            value = value * (power - one)
        return value

    m = sum(signature)
    acc = one
    for k in signature:
        acc = acc * phi_at(k)
    return acc / phi_at(1) ** m


def omega_t(delta, point: SphericalPoint, _c_cache: dict | None = None):
    """GL spherical image of the diagonal double coset for delta.

    Equals P^(-1) p^(-sum (m-i+1) d_i) Q_delta; for delta of the shape
    (0,...,0,1,...,1) with i ones this reduces to p^(-i(i+1)/2) times the
    i-th elementary symmetric polynomial of the coordinates.
    """
    m = point.rank
    delta = tuple(delta)
    exponent = sum((m - i + 1) * d for i, d in enumerate(delta, 1))
    p_inv_pow = point.p ** -exponent if exponent else point.p ** 0
    normalizer = p_normalizer(multiplicity_signature(delta), point)
    return q_delta(delta, point, _c_cache) * p_inv_pow / normalizer


def omega_T_pr(r: int, point: SphericalPoint, route: str = "direct"):
    """Symplectic spherical image of the Hecke operator at p^r, evaluated.

    route="direct": x0^r times the sum over nondecreasing delta of
    P^(-1) Q_delta.  route="via-gl": the same value assembled through
    ``omega_t`` with the compensating powers of p, a second code path kept
    for cross-checking.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    if point.x0 is None:
        raise ValueError("omega_T_pr needs a point with an x0 coordinate")
    m = point.rank
    cache: dict = {}
    total = None
    for delta in enumerate_deltas(m, r):
        if route == "direct":
            normalizer = p_normalizer(multiplicity_signature(delta), point)
            term = q_delta(delta, point, cache) / normalizer
        elif route == "via-gl":
            exponent = sum((m - i + 1) * d for i, d in enumerate(delta, 1))
            p_pow = point.p ** exponent if exponent else point.p ** 0
            term = p_pow * omega_t(delta, point, cache)
        else:
            raise ValueError(f"unknown route {route!r}")
        total = term if total is None else total + term
    return point.x0 ** r * total


def weyl_transform(point: SphericalPoint, op) -> SphericalPoint:
    """Apply a Weyl-group generator to the point.

    ``op`` is either a permutation of 0..m-1 (a tuple; fixes x0 and permutes
    the coordinates) or an integer i in 1..m meaning the involution tau_i
    (x0 -> x0 x_i, x_i -> 1/x_i, other coordinates fixed).
    """
    xs = point.xs
    m = len(xs)
    if isinstance(op, int):
        if not 1 <= op <= m:
            raise ValueError(f"tau index {op} out of range 1..{m}")
        x = xs[op - 1]
        if not x:
            raise ZeroCoordinate(f"cannot invert zero coordinate x_{op}")
        new_xs = xs[: op - 1] + (x**-1,) + xs[op:]
        new_x0 = None if point.x0 is None else point.x0 * x
        return SphericalPoint(p=point.p, xs=new_xs, x0=new_x0)
    sigma = _check_permutation(op, m)
    return SphericalPoint(
        p=point.p, xs=tuple(xs[sigma[k]] for k in range(m)), x0=point.x0
    )
