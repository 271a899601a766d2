"""Truncated power series over the rationals with tracked precision.

A ``TruncSeries`` stores the coefficients of t^0 .. t^cap of an element of
Q[[t]]; everything above t^cap is unknown.  A series whose known
coefficients are all zero is "indistinguishable from 0 at this precision",
not proven zero.  Binary operations contract to the smaller cap; exact
division additionally pays the divisor's valuation in precision.

Scalars are plain ``fractions.Fraction`` values, which already enforce the
canonical form (positive denominator, reduced).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    FormatError,
    NotAUnit,
    NotDivisible,
    PrecisionExhausted,
    ZeroDivisor,
)

QQ = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" (q > 0, decimal) into a Fraction."""
    if not isinstance(text, str):
        raise FormatError(f"rational literal must be a string, got {text!r}")
    parts = text.strip().split("/")
    try:
        if len(parts) == 1:
            return Fraction(int(parts[0]))
        if len(parts) == 2:
            num, den = int(parts[0]), int(parts[1])
            if den <= 0:
                raise FormatError(f"denominator must be positive in {text!r}")
            return Fraction(num, den)
    except ValueError as exc:
        raise FormatError(f"bad rational literal {text!r}") from exc
    raise FormatError(f"bad rational literal {text!r}")


def rational_str(value: Fraction) -> str:
    """Inverse of parse_rational."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class TruncSeries:
    """Element of Q[[t]] known modulo t^(cap+1)."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("a series needs at least the t^0 coefficient")

    # -- construction ------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs, cap: int | None = None) -> TruncSeries:
        """Build from an iterable of scalars, padding with zeros to cap."""
        items = [_as_fraction(c) for c in coeffs]
        if cap is not None:
            if len(items) > cap + 1:
                raise ValueError(f"{len(items)} coefficients exceed cap {cap}")
            items += [ZERO] * (cap + 1 - len(items))
        return cls(tuple(items))

    @classmethod
    def zero(cls, cap: int) -> TruncSeries:
        return cls.from_coeffs([], cap=cap)

    @classmethod
    def one(cls, cap: int) -> TruncSeries:
        return cls.from_coeffs([ONE], cap=cap)

    @classmethod
    def constant(cls, value, cap: int) -> TruncSeries:
        return cls.from_coeffs([_as_fraction(value)], cap=cap)

    @classmethod
    def monomial(cls, power: int, cap: int, coeff=ONE) -> TruncSeries:
        """coeff * t^power at the given cap."""
        if not 0 <= power <= cap:
            raise ValueError(f"monomial power {power} outside 0..{cap}")
        return cls.from_coeffs([ZERO] * power + [_as_fraction(coeff)], cap=cap)

    # -- predicates ---------------------------------------------------

    @property
    def cap(self) -> int:
        return len(self.coeffs) - 1

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, None if zero at cap."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        """Zero at this precision (not proven zero)."""
        return all(c == 0 for c in self.coeffs)

    def is_unit(self) -> bool:
        return self.coeffs[0] != 0

    def in_maximal_ideal(self) -> bool:
        return self.coeffs[0] == 0

    # -- precision ----------------------------------------------------

    def truncate(self, cap: int) -> TruncSeries:
        if cap > self.cap:
            raise PrecisionExhausted(
                f"cannot extend a cap-{self.cap} series to cap {cap}"
            )
        return TruncSeries(self.coeffs[: cap + 1])

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: TruncSeries) -> TruncSeries:
        cap = min(self.cap, other.cap)
        return TruncSeries(
            tuple(self.coeffs[i] + other.coeffs[i] for i in range(cap + 1))
        )

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        cap = min(self.cap, other.cap)
        return TruncSeries(
            tuple(self.coeffs[i] - other.coeffs[i] for i in range(cap + 1))
        )

    def __neg__(self) -> TruncSeries:
        return TruncSeries(tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> TruncSeries:
        if isinstance(other, TruncSeries):
            cap = min(self.cap, other.cap)
            out = [ZERO] * (cap + 1)
            for i, a in enumerate(self.coeffs[: cap + 1]):
                if not a:
                    continue
                for j in range(cap + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
            return TruncSeries(tuple(out))
        return self.scale(other)

    def __rmul__(self, other) -> TruncSeries:
        return self.scale(other)

    def scale(self, scalar) -> TruncSeries:
        s = _as_fraction(scalar)
        return TruncSeries(tuple(s * c for c in self.coeffs))

    def invert(self) -> TruncSeries:
        """Multiplicative inverse up to t^cap; the constant term must be a unit."""
        if not self.is_unit():
            raise NotAUnit("series with zero constant term has no inverse")
        a0 = self.coeffs[0]
        out = [ONE / a0] + [ZERO] * self.cap
        for k in range(1, self.cap + 1):
            acc = ZERO
            for i in range(1, k + 1):
                ai = self.coeffs[i]
                if ai:
                    acc += ai * out[k - i]
            out[k] = -acc / a0
        return TruncSeries(tuple(out))

    def div_exact(self, other: TruncSeries) -> TruncSeries:
        """Exact quotient self/other inside Q[[t]].

        The result cap is min(cap, other.cap) - valuation(other): dividing
        by t^v costs v known coefficients.
        """
        v = other.valuation()
        if v is None:
            raise ZeroDivisor("divisor is zero at its cap")
        cap = min(self.cap, other.cap) - v
        if cap < 0:
            raise PrecisionExhausted(
                f"division by valuation-{v} series leaves cap {cap}"
            )
        mine = self.valuation()
        if mine is None:
            return TruncSeries.zero(cap)
        if mine < v:
            raise NotDivisible(
                f"valuation {mine} numerator not divisible by valuation {v}"
            )
        num = TruncSeries(self.coeffs[v : v + cap + 1])
        den = TruncSeries(other.coeffs[v : v + cap + 1])
        return num * den.invert()

    # -- display ------------------------------------------------------

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(rational_str(c))
            elif i == 1:
                terms.append(f"{rational_str(c)}*t" if c != 1 else "t")
            else:
                terms.append(f"{rational_str(c)}*t^{i}" if c != 1 else f"t^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(t^{self.cap + 1})"


@dataclass(frozen=True)
class SeriesVector:
    """Vector of truncated series sharing one cap."""

    components: tuple[TruncSeries, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("empty series vector")
        caps = {s.cap for s in self.components}
        if len(caps) != 1:
            raise ValueError(f"components carry mixed caps {sorted(caps)}")

    @classmethod
    def zero(cls, dim: int, cap: int) -> SeriesVector:
        return cls(tuple(TruncSeries.zero(cap) for _ in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.components)

    @property
    def cap(self) -> int:
        return self.components[0].cap

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.components)

    def in_maximal_ideal(self) -> bool:
        return all(s.in_maximal_ideal() for s in self.components)

    def truncate(self, cap: int) -> SeriesVector:
        return SeriesVector(tuple(s.truncate(cap) for s in self.components))

    def __add__(self, other: SeriesVector) -> SeriesVector:
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return SeriesVector(
            tuple(a + b for a, b in zip(self.components, other.components))
        )

    def __sub__(self, other: SeriesVector) -> SeriesVector:
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return SeriesVector(
            tuple(a - b for a, b in zip(self.components, other.components))
        )

    def scale(self, factor) -> SeriesVector:
        """Multiply every component by a series or scalar."""
        return SeriesVector(tuple(s * factor for s in self.components))
