"""Exact scalar and polynomial arithmetic.

The scalar everywhere is ``fractions.Fraction`` (re-exported as ``Rational``).
On top of it live three rings, all immutable after construction and safe to
share between threads:

* ``Laurent`` -- sparse Laurent polynomial in one formal variable over the
  rationals, stored as a map exponent -> nonzero coefficient.
* ``RatFunc`` -- element of the fraction field of ``Laurent``, kept in a
  canonical reduced form so that equality is plain structural equality.
* ``ALaurent`` -- Laurent polynomial in a second formal variable whose
  coefficients live in any of the rings above (Fraction, Laurent or RatFunc).

All arithmetic is exact; nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction


class DivisionByZero(ZeroDivisionError):
    """Division by an exact zero (scalar, polynomial or rational function)."""


class InexactDivision(ArithmeticError):
    """Polynomial division requested where the remainder is nonzero."""


class ZeroAtNegativeExponent(ZeroDivisionError):
    """Evaluation of a Laurent polynomial with negative exponents at 0."""


def _coerce_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an integer or Fraction, got {type(value).__name__}")


class Laurent:
    """Sparse Laurent polynomial over the rationals.

    ``terms`` maps integer exponents to nonzero ``Fraction`` coefficients; the
    zero polynomial is the empty map.  The variable is formal -- this class is
    used both for polynomials in q (= p^(1/2)) and for the helper variable x
    of the normalizing products.

    >>> q = Laurent.term(1, 1)
    >>> print((q - q**-1) * (q + q**-1))
    q^2 - q^-2
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exp, coeff in terms.items():
                coeff = _coerce_fraction(coeff)
                if coeff:
                    clean[int(exp)] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Laurent values are immutable")

    @classmethod
    def term(cls, coeff, exp: int = 0) -> "Laurent":
        return cls({exp: coeff})

    @classmethod
    def const(cls, value) -> "Laurent":
        return cls({0: value})

    @classmethod
    def zero(cls) -> "Laurent":
        return cls()

    @classmethod
    def one(cls) -> "Laurent":
        return cls({0: 1})

    # -- basic queries ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def min_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        return min(self.terms)

    def max_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        return max(self.terms)

    def coefficient(self, exp: int) -> Fraction:
        return self.terms.get(exp, Fraction(0))

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Laurent":
        if isinstance(other, Laurent):
            return other
        if isinstance(other, (int, Fraction)):
            return Laurent({0: other})
        return NotImplemented

    def __eq__(self, other) -> bool:
        other = Laurent._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "Laurent":
        other = Laurent._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            acc = out.get(exp, 0) + coeff
            if acc:
                out[exp] = acc
            else:
                out.pop(exp, None)
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        return Laurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Laurent":
        other = Laurent._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Laurent":
        return -(self - other)

    def __mul__(self, other) -> "Laurent":
        other = Laurent._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                acc = out.get(e, 0) + c1 * c2
                if acc:
                    out[e] = acc
                else:
                    out.pop(e, None)
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            if not self.is_monomial():
                raise DivisionByZero(
                    "negative powers exist only for monomials"
                )
            ((exp, coeff),) = self.terms.items()
            return Laurent({exp * n: coeff**n})
        result = Laurent.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- Laurent-specific operations ----------------------------------------

    def scale_exponents(self, k: int) -> "Laurent":
        """Substitute the variable v -> v^k (k nonzero); remaps exponents."""
        if k == 0:
            raise ValueError("exponent scale must be nonzero")
        return Laurent({e * k: c for e, c in self.terms.items()})

    def evaluate(self, point) -> Fraction:
        """Exact substitution of the variable by a rational value."""
        point = _coerce_fraction(point)
        if not point and self.terms and self.min_exp() < 0:
            raise ZeroAtNegativeExponent(
                "cannot evaluate negative exponents at 0"
            )
        return sum((c * point**e for e, c in self.terms.items()), Fraction(0))

    def _dense(self) -> tuple[int, list[Fraction]]:
        """Return (shift, coefficients) with coefficients[0] != 0."""
        lo = self.min_exp()
        hi = self.max_exp()
        dense = [self.terms.get(e, Fraction(0)) for e in range(lo, hi + 1)]
        return lo, dense

    @staticmethod
    def _from_dense(shift: int, dense: list[Fraction]) -> "Laurent":
        return Laurent({shift + i: c for i, c in enumerate(dense) if c})

    @staticmethod
    def _dense_divmod(num: list[Fraction], den: list[Fraction]):
        """Long division of dense coefficient lists (constant term first)."""
        num = list(num)
        dn, dd = len(num) - 1, len(den) - 1
        if dn < dd:
            return [], num
        quot = [Fraction(0)] * (dn - dd + 1)
        lead = den[dd]
        for i in range(dn - dd, -1, -1):
            c = num[i + dd] / lead
            if c:
                quot[i] = c
                for j, dj in enumerate(den):
                    num[i + j] -= c * dj
        while num and not num[-1]:
            num.pop()
        return quot, num

    def exact_div(self, other: "Laurent") -> "Laurent":
        """Exact quotient self / other; the remainder must be zero.

        Units q^e are handled by shifting both operands to ordinary
        polynomials first, so Laurent divisibility is decided correctly.
        """
        if not other:
            raise DivisionByZero("polynomial division by zero")
        if not self:
            return Laurent.zero()
        lo_n, num = self._dense()
        lo_d, den = other._dense()
        quot, rem = Laurent._dense_divmod(num, den)
        if rem:
            raise InexactDivision(
                f"{self!r} is not divisible by {other!r}"
            )
        return Laurent._from_dense(lo_n - lo_d, quot)

    @staticmethod
    def gcd(a: "Laurent", b: "Laurent") -> "Laurent":
        """Monic gcd of the ordinary-polynomial parts of a and b.

        The unit content q^e of either argument is ignored (q is invertible
        in the Laurent ring); the result has lowest exponent 0 and leading
        coefficient 1, so it is a canonical representative.
        """
        if not a and not b:
            return Laurent.zero()
        if not a:
            return Laurent.gcd(b, b)
        big = a._dense()[1]
        small = b._dense()[1] if b else []
        while small:
            _, rem = Laurent._dense_divmod(big, small)
            big, small = small, rem
        lead = big[-1]
        return Laurent._from_dense(0, [c / lead for c in big])

    # -- presentation -------------------------------------------------------

    def to_str(self, var: str = "q") -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, reverse=True):
            coeff = self.terms[exp]
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            if exp == 0:
                body = str(mag)
            else:
                head = var if exp == 1 else f"{var}^{exp}"
                body = head if mag == 1 else f"{mag}*{head}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = first_body if first_sign == "+" else f"-{first_body}"
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Laurent('{self.to_str()}')"


class RatFunc:
    """Element of the fraction field of ``Laurent``, in canonical form.

    Canonical form: the denominator is an ordinary polynomial with nonzero
    constant term and leading coefficient 1, and shares no factor with the
    shifted-to-ordinary numerator.  The numerator keeps any leftover power of
    the variable.  Equality of canonical forms is field equality, so "is this
    exactly zero / exactly a polynomial" is decidable.
    """

    __slots__ = ("numer", "denom")

    def __init__(self, numer, denom=None):
        numer = Laurent._coerce(numer)
        denom = Laurent.one() if denom is None else Laurent._coerce(denom)
        if not denom:
            raise DivisionByZero("rational function with zero denominator")
        if not numer:
            object.__setattr__(self, "numer", Laurent.zero())
            object.__setattr__(self, "denom", Laurent.one())
            return
        lo_n = numer.min_exp()
        lo_d = denom.min_exp()
        num = Laurent({e - lo_n: c for e, c in numer.terms.items()})
        den = Laurent({e - lo_d: c for e, c in denom.terms.items()})
        g = Laurent.gcd(num, den)
        if g != Laurent.one():
            num = num.exact_div(g)
            den = den.exact_div(g)
        lead = den.terms[den.max_exp()]
        if lead != 1:
            inv = 1 / lead
            num = num * inv
            den = den * inv
        shift = lo_n - lo_d
        if shift:
            num = Laurent({e + shift: c for e, c in num.terms.items()})
        object.__setattr__(self, "numer", num)
        object.__setattr__(self, "denom", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc values are immutable")

    @classmethod
    def zero(cls) -> "RatFunc":
        return cls(Laurent.zero())

    @classmethod
    def one(cls) -> "RatFunc":
        return cls(Laurent.one())

    # -- queries -------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.numer)

    def is_laurent(self) -> bool:
        return self.denom == Laurent.one()

    def to_laurent(self) -> Laurent:
        if not self.is_laurent():
            raise InexactDivision(f"{self!r} is not a Laurent polynomial")
        return self.numer

    @staticmethod
    def _coerce(other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (Laurent, int, Fraction)):
            return RatFunc(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.numer == other.numer and self.denom == other.denom

    def __hash__(self):
        return hash((self.numer, self.denom))

    # -- field operations ------------------------------------------------------

    def __add__(self, other) -> "RatFunc":
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(
            self.numer * other.denom + other.numer * self.denom,
            self.denom * other.denom,
        )

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        out = RatFunc.__new__(RatFunc)
        object.__setattr__(out, "numer", -self.numer)
        object.__setattr__(out, "denom", self.denom)
        return out

    def __sub__(self, other) -> "RatFunc":
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return -(self - other)

    def __mul__(self, other) -> "RatFunc":
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.numer * other.numer, self.denom * other.denom)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(self.numer * other.denom, self.denom * other.numer)

    def __rtruediv__(self, other) -> "RatFunc":
        return RatFunc._coerce(other) / self

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return RatFunc.one() / self ** (-n)
        result = RatFunc.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def to_str(self, var: str = "q") -> str:
        if self.is_laurent():
            return self.numer.to_str(var)
        return f"({self.numer.to_str(var)}) / ({self.denom.to_str(var)})"

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"RatFunc('{self.to_str()}')"


class ALaurent:
    """Laurent polynomial in a second variable with ring coefficients.

    Coefficients may be ``Fraction``, ``Laurent`` or ``RatFunc``; they only
    need +, -, *, ==, bool and integer powers.  Used for the variable a (the
    elliptic Satake parameter), with eigenvalue polynomials living in
    ALaurent-over-Laurent and the spherical oracle in ALaurent-over-RatFunc.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exp, coeff in terms.items():
                if coeff:
                    clean[int(exp)] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ALaurent values are immutable")

    @classmethod
    def term(cls, coeff, exp: int = 0) -> "ALaurent":
        return cls({exp: coeff})

    @classmethod
    def zero(cls) -> "ALaurent":
        return cls()

    # -- queries -------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def min_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        return min(self.terms)

    def max_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        return max(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ALaurent):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    def __hash__(self):
        return hash(frozenset((e, hash(c)) for e, c in self.terms.items()))

    # -- ring operations -----------------------------------------------------

    def __add__(self, other) -> "ALaurent":
        if not isinstance(other, ALaurent):
            return NotImplemented
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            if exp in out:
                acc = out[exp] + coeff
                if acc:
                    out[exp] = acc
                else:
                    del out[exp]
            else:
                out[exp] = coeff
        return ALaurent(out)

    def __neg__(self) -> "ALaurent":
        return ALaurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "ALaurent":
        if not isinstance(other, ALaurent):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "ALaurent":
        if not isinstance(other, ALaurent):
            return NotImplemented
        out: dict[int, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                prod = c1 * c2
                if e in out:
                    acc = out[e] + prod
                    if acc:
                        out[e] = acc
                    else:
                        del out[e]
                elif prod:
                    out[e] = prod
        return ALaurent(out)

    def __pow__(self, n: int) -> "ALaurent":
        if not self.terms:
            if n == 0:
                raise ValueError("0**0 is undefined")
            if n < 0:
                raise DivisionByZero("negative power of zero")
            return ALaurent.zero()
        one_coeff = next(iter(self.terms.values())) ** 0
        if n < 0:
            if not self.is_monomial():
                raise DivisionByZero(
                    "negative powers exist only for monomials"
                )
            ((exp, coeff),) = self.terms.items()
            return ALaurent({exp * n: coeff**n})
        result = ALaurent({0: one_coeff})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other) -> "ALaurent":
        if not isinstance(other, ALaurent):
            return NotImplemented
        return self * other**-1

    # -- substitutions ---------------------------------------------------------

    def substitute_inverse(self) -> "ALaurent":
        """Substitute the outer variable a -> a^(-1)."""
        return ALaurent({-e: c for e, c in self.terms.items()})

    def sum_coefficients(self):
        """Value at a = 1: the plain sum of the coefficients (0 if empty)."""
        total = None
        for coeff in self.terms.values():
            total = coeff if total is None else total + coeff
        return 0 if total is None else total

    def map_coefficients(self, fn) -> "ALaurent":
        return ALaurent({e: fn(c) for e, c in self.terms.items()})

    def to_str(self, var: str = "a", coeff_var: str = "q") -> str:
        if not self.terms:
            return "0"
        chunks = []
        for exp in sorted(self.terms, reverse=True):
            coeff = self.terms[exp]
            if isinstance(coeff, (Laurent, RatFunc)):
                cs = coeff.to_str(coeff_var)
            else:
                cs = str(coeff)
            if exp == 0:
                chunks.append(cs)
                continue
            head = var if exp == 1 else f"{var}^{exp}"
            if cs == "1":
                chunks.append(head)
            elif cs == "-1":
                chunks.append(f"-{head}")
            elif any(s in cs for s in (" + ", " - ")):
                chunks.append(f"({cs})*{head}")
            else:
                chunks.append(f"{cs}*{head}")
        text = chunks[0]
        for chunk in chunks[1:]:
            if chunk.startswith("-"):
                text += f" - {chunk[1:]}"
            else:
                text += f" + {chunk}"
        return text

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"ALaurent('{self.to_str()}')"
