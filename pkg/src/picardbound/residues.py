"""Arithmetic in Z/p^m with explicit valuation and precision tracking.

Conventions used throughout the package:

* A ``PResidue`` is a residue ``0 <= value < p**m`` together with the
  prime ``p`` and the precision exponent ``m``.  Binary operations
  between operands of different precision truncate to the smaller ``m``:
  the coarser operand decides what is knowable about the result.
* ``val`` returns ``min(v_p(value), m)``.  A zero residue reports ``m``,
  which must be read as "valuation at least m", not as an exact value.
* A ``ScaledResidue`` represents ``unit * p**shift`` with the unit
  coprime to ``p``, or an exact zero carrying only its absolute
  precision.  ``shift`` may be negative.  This is the value type for
  deferred divisions: dividing by ``p`` lowers ``shift`` (and with it
  the absolute precision) without touching the unit digits.
* ``UniPoly`` is a dense univariate polynomial over a fixed Z/p^m, used
  for characteristic-polynomial style manipulations where the Gauss
  valuation (minimum coefficient valuation) is the quantity of interest.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def vp(x: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("valuation of 0 is infinite; handle zero separately")
    x = abs(x)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class PResidue:
    value: int
    p: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("precision exponent must be >= 1")
        object.__setattr__(self, "value", self.value % self.p**self.m)

    @property
    def modulus(self) -> int:
        return self.p**self.m

    def val(self) -> int:
        """min(v_p(value), m); the maximum m means "at least m"."""
        if self.value == 0:
            return self.m
        return min(vp(self.value, self.p), self.m)

    def is_zero(self) -> bool:
        return self.value == 0

    def truncate(self, m: int) -> PResidue:
        if m > self.m:
            raise ValueError("cannot increase precision by truncation")
        if m == self.m:
            return self
        return PResidue(self.value, self.p, m)

    def _pair(self, other: PResidue | int) -> tuple[PResidue, PResidue]:
        if isinstance(other, int):
            other = PResidue(other, self.p, self.m)
        if other.p != self.p:
            raise ValueError("cannot mix residues for different primes")
        m = min(self.m, other.m)
        return self.truncate(m), other.truncate(m)

    def __add__(self, other):
        a, b = self._pair(other)
        return PResidue(a.value + b.value, a.p, a.m)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        return PResidue(a.value - b.value, a.p, a.m)

    def __rsub__(self, other):
        a, b = self._pair(other)
        return PResidue(b.value - a.value, a.p, a.m)

    def __mul__(self, other):
        a, b = self._pair(other)
        return PResidue(a.value * b.value, a.p, a.m)

    __rmul__ = __mul__

    def __neg__(self):
        return PResidue(-self.value, self.p, self.m)

    def __pow__(self, e: int):
        if e < 0:
            return invert_unit(self) ** (-e)
        return PResidue(pow(self.value, e, self.modulus), self.p, self.m)

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"PResidue({self.value} mod {self.p}^{self.m})"


def invert_unit(a: PResidue) -> PResidue:
    """Inverse of a residue coprime to p; raises if p divides the value."""
    if a.value % a.p == 0:
        raise ZeroDivisionError(
            f"{a.value} is divisible by {a.p}; no inverse in Z/{a.p}^{a.m}"
        )
    return PResidue(pow(a.value, -1, a.modulus), a.p, a.m)


@dataclass(frozen=True)
class ScaledResidue:
    """``unit * p**shift``, or an exact zero at a stated absolute precision.

    For a zero element ``unit is None`` and ``shift`` stores the absolute
    precision (the value is congruent to 0 modulo p**shift and nothing
    more is known).
    """

    unit: PResidue | None
    shift: int
    p: int

    def __post_init__(self):
        if self.unit is not None:
            if self.unit.p != self.p:
                raise ValueError("unit prime disagrees")
            if self.unit.value % self.p == 0:
                raise ValueError("unit part must be coprime to p")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(p: int, abs_prec: int) -> ScaledResidue:
        return ScaledResidue(None, abs_prec, p)

    @staticmethod
    def from_residue(a: PResidue, shift: int = 0) -> ScaledResidue:
        v = a.val()
        if v >= a.m:
            return ScaledResidue.zero(a.p, a.m + shift)
        unit = PResidue(a.value // a.p**v, a.p, a.m - v)
        return ScaledResidue(unit, shift + v, a.p)

    @staticmethod
    def from_int(x: int, p: int, m: int, shift: int = 0) -> ScaledResidue:
        return ScaledResidue.from_residue(PResidue(x, p, m), shift)

    # -- structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.unit is None

    @property
    def abs_prec(self) -> int:
        """The value is known modulo p**abs_prec."""
        if self.unit is None:
            return self.shift
        return self.shift + self.unit.m

    @property
    def rel_prec(self) -> int:
        return 0 if self.unit is None else self.unit.m

    @property
    def indeterminate(self) -> bool:
        """True when no p-adic digit of the value is certified."""
        if self.unit is None:
            return self.shift <= 0
        return False

    def valuation(self) -> int:
        """Exact valuation, or a lower bound (= abs_prec) for a zero."""
        return self.shift

    # -- arithmetic ---------------------------------------------------

    def truncate_abs(self, prec: int) -> ScaledResidue:
        if prec > self.abs_prec:
            raise ValueError("cannot increase absolute precision")
        if self.unit is None:
            return ScaledResidue.zero(self.p, prec)
        digits = prec - self.shift
        if digits <= 0:
            return ScaledResidue.zero(self.p, prec)
        return ScaledResidue(self.unit.truncate(digits), self.shift, self.p)

    def __add__(self, other: ScaledResidue) -> ScaledResidue:
        if other.p != self.p:
            raise ValueError("cannot mix primes")
        prec = min(self.abs_prec, other.abs_prec)
        if self.is_zero and other.is_zero:
            return ScaledResidue.zero(self.p, prec)
        if self.is_zero:
            return other.truncate_abs(prec)
        if other.is_zero:
            return self.truncate_abs(prec)
        alpha = min(self.shift, other.shift)
        digits = prec - alpha
        if digits <= 0:
            return ScaledResidue.zero(self.p, prec)
        total = (
            self.unit.value * self.p ** (self.shift - alpha)
            + other.unit.value * self.p ** (other.shift - alpha)
        )
        return ScaledResidue.from_residue(PResidue(total, self.p, digits), alpha)

    def __neg__(self) -> ScaledResidue:
        if self.is_zero:
            return self
        return ScaledResidue(-self.unit, self.shift, self.p)

    def __sub__(self, other: ScaledResidue) -> ScaledResidue:
        return self + (-other)

    def __mul__(self, other: ScaledResidue) -> ScaledResidue:
        if other.p != self.p:
            raise ValueError("cannot mix primes")
        if self.is_zero or other.is_zero:
            # a = 0 mod p^prec_a times b = unit p^shift_b: zero mod
            # p^(prec_a + v(b)); with both zero use the sum of precisions.
            if self.is_zero and other.is_zero:
                return ScaledResidue.zero(self.p, self.shift + other.shift)
            z, u = (self, other) if self.is_zero else (other, self)
            return ScaledResidue.zero(self.p, z.shift + u.shift)
        return ScaledResidue(self.unit * other.unit, self.shift + other.shift, self.p)

    def to_residue(self, m: int) -> PResidue:
        """The value modulo p**m; requires abs_prec >= m and integrality."""
        if self.abs_prec < m:
            raise ValueError("absolute precision too small for requested modulus")
        if self.unit is None:
            return PResidue(0, self.p, m)
        if self.shift < 0:
            raise ValueError("value has a pole: negative shift with unit part")
        if self.shift >= m:
            return PResidue(0, self.p, m)
        return PResidue(self.unit.value * self.p**self.shift, self.p, m)

    def to_fraction(self) -> Fraction:
        """The canonical representative unit * p**shift as a rational."""
        if self.unit is None:
            return Fraction(0)
        if self.shift >= 0:
            return Fraction(self.unit.value * self.p**self.shift)
        return Fraction(self.unit.value, self.p ** (-self.shift))


def divide_tracked(a: ScaledResidue, b: int) -> ScaledResidue:
    """Divide by a nonzero integer, moving its p-part into the shift.

    The unit part of ``b`` is inverted exactly; each factor of p lowers
    the shift, and with it the absolute precision, by one.
    """
    if b == 0:
        raise ZeroDivisionError("division by zero")
    p = a.p
    v = vp(b, p)
    u = b // p**v if b > 0 else -((-b) // p**v)
    if a.is_zero:
        return ScaledResidue.zero(p, a.shift - v)
    inv = invert_unit(PResidue(u, p, a.unit.m))
    return ScaledResidue(a.unit * inv, a.shift - v, p)


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial over Z/p^m, coefficients by ascending degree."""

    coeffs: tuple[PResidue, ...]
    p: int
    m: int

    @staticmethod
    def from_ints(coeffs: list[int], p: int, m: int) -> UniPoly:
        return UniPoly(tuple(PResidue(c, p, m) for c in coeffs), p, m)

    @property
    def degree(self) -> int:
        for i in range(len(self.coeffs) - 1, -1, -1):
            if not self.coeffs[i].is_zero():
                return i
        return -1

    def gauss_val(self) -> int:
        """Minimum coefficient valuation (m for the zero polynomial)."""
        if not self.coeffs:
            return self.m
        return min(c.val() for c in self.coeffs)

    def __add__(self, other: UniPoly) -> UniPoly:
        m = min(self.m, other.m)
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            a = self.coeffs[i].value if i < len(self.coeffs) else 0
            b = other.coeffs[i].value if i < len(other.coeffs) else 0
            out.append(PResidue(a + b, self.p, m))
        return UniPoly(tuple(out), self.p, m)

    def __mul__(self, other: UniPoly) -> UniPoly:
        if other.p != self.p:
            raise ValueError("cannot mix primes")
        m = min(self.m, other.m)
        if not self.coeffs or not other.coeffs:
            return UniPoly((), self.p, m)
        mod = self.p**m
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.value == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = (out[i + j] + a.value * b.value) % mod
        return UniPoly.from_ints(out, self.p, m)

    def scale(self, c: int) -> UniPoly:
        return UniPoly(tuple(a * c for a in self.coeffs), self.p, self.m)
