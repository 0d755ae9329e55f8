"""Exact Hecke eigenvalues of Ikeda lifts.

Closed-form eigenvalue polynomials in (p^(1/2), a), a brute-force spherical
evaluation oracle, coefficient bounds, and the explicit positivity threshold,
all in exact rational arithmetic.
"""

__version__ = "0.1.0"

from .exact import (
    ALaurent,
    DivisionByZero,
    InexactDivision,
    Laurent,
    RatFunc,
    Rational,
    ZeroAtNegativeExponent,
)
from .ikeda import (
    BoundViolated,
    CheckFailed,
    CheckRecord,
    DomainError,
    EigenvaluePoly,
    IkedaContext,
    IkedaSatakePoint,
    NonIntegerCoefficient,
    NumericValue,
    OracleNotPolynomial,
    PositivityViolated,
    coefficients,
    eigenvalue_closed_form,
    eigenvalue_via_oracle,
    evaluate_numeric,
    is_prime,
    lemma_vanishing_check,
    next_prime,
    pc_identity_check,
    positivity_scan,
    positivity_threshold,
    primes_above,
    satake_point,
    support_window,
    verify_bounds,
)
from .qcomb import (
    enumerate_deltas,
    gaussian_multinomial,
    inversion_count,
    inversion_sum,
    multinomial,
    multiplicity_signature,
    phi,
    weak_composition_count,
)
from .spherical import (
    PoleAtPoint,
    SphericalPoint,
    ZeroCoordinate,
    c_factor,
    elementary_symmetric,
    omega_T_pr,
    omega_t,
    p_normalizer,
    q_delta,
    weyl_transform,
)

__all__ = [name for name in dir() if not name.startswith("_")]
