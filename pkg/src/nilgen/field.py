"""Exact scalars: rationals (via ``fractions.Fraction``) and prime fields.

Rational scalars are plain ``Fraction`` objects, which are already kept in
lowest terms with a positive denominator.  Prime-field scalars are ``Fp``
values carrying their modulus so that mixing fields is caught at the
operator level.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import DivisionByZero, FieldMismatch

Scalar = Union[Fraction, "Fp"]


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


class Fp:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        raise FieldMismatch(f"cannot combine F_{self.p} element with {type(other).__name__}")

    def __add__(self, other):
        return Fp(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return Fp(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return Fp(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        d = self._coerce(other) % self.p
        if d == 0:
            raise DivisionByZero(f"division by zero in F_{self.p}")
        return Fp(self.value * pow(d, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Fp(self._coerce(other), self.p) / self

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pow__(self, k: int):
        if k < 0:
            return Fp(1, self.p) / Fp(pow(self.value, -k, self.p), self.p)
        return Fp(pow(self.value, k, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class FieldKind(enum.Enum):
    RATIONALS = "rationals"
    PRIME = "prime"


@dataclass(frozen=True)
class FieldSpec:
    kind: FieldKind
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.kind is FieldKind.PRIME:
            if self.modulus is None or not is_prime(self.modulus):
                raise ValueError(f"modulus must be prime, got {self.modulus}")
        elif self.modulus is not None:
            raise ValueError("the rational field takes no modulus")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(FieldKind.PRIME, p)

    @classmethod
    def from_tag(cls, tag: str) -> "FieldSpec":
        """Parse ``"q"`` or ``"fp:<p>"``."""
        tag = tag.strip().lower()
        if tag == "q":
            return cls.rationals()
        if tag.startswith("fp:"):
            try:
                p = int(tag[3:])
            except ValueError:
                raise ValueError(f"bad field tag {tag!r}") from None
            return cls.prime(p)
        raise ValueError(f"bad field tag {tag!r}")

    @property
    def tag(self) -> str:
        return "q" if self.kind is FieldKind.RATIONALS else f"fp:{self.modulus}"

    @property
    def is_infinite(self) -> bool:
        return self.kind is FieldKind.RATIONALS

    def characteristic(self) -> int:
        return 0 if self.kind is FieldKind.RATIONALS else self.modulus

    def __call__(self, x) -> Scalar:
        """Coerce ``x`` (int, Fraction, Fp or scalar string) into this field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.kind is FieldKind.RATIONALS:
            if isinstance(x, Fp):
                raise FieldMismatch("prime-field element given to Q")
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise FieldMismatch(f"cannot coerce {type(x).__name__} into Q")
        if isinstance(x, Fp):
            if x.p != self.modulus:
                raise FieldMismatch(f"F_{x.p} element given to F_{self.modulus}")
            return x
        if isinstance(x, int):
            return Fp(x, self.modulus)
        if isinstance(x, Fraction):
            return Fp(x.numerator, self.modulus) / Fp(x.denominator, self.modulus)
        raise FieldMismatch(f"cannot coerce {type(x).__name__} into F_{self.modulus}")

    def zero(self) -> Scalar:
        return self(0)

    def one(self) -> Scalar:
        return self(1)

    def contains(self, x) -> bool:
        if self.kind is FieldKind.RATIONALS:
            return isinstance(x, Fraction)
        return isinstance(x, Fp) and x.p == self.modulus

    def parse(self, s: str) -> Scalar:
        s = s.strip()
        if self.kind is FieldKind.RATIONALS:
            num, sep, den = s.partition("/")
            try:
                if sep:
                    return Fraction(int(num), int(den))
                return Fraction(int(num))
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"bad rational {s!r}") from None
        try:
            return Fp(int(s), self.modulus)
        except ValueError:
            raise ValueError(f"bad residue {s!r}") from None

    def format(self, x: Scalar) -> str:
        x = self(x)
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return str(x.numerator)
            return f"{x.numerator}/{x.denominator}"
        return str(x.value)

    def random_nonzero(self, rng: random.Random, window: int = 65536) -> Scalar:
        """Uniform integer in [1, window] over Q, uniform nonzero residue mod p."""
        if self.kind is FieldKind.RATIONALS:
            return Fraction(rng.randint(1, window))
        return Fp(rng.randrange(1, self.modulus), self.modulus)

    def random_element(self, rng: random.Random, low: int = -9, high: int = 9) -> Scalar:
        if self.kind is FieldKind.RATIONALS:
            return Fraction(rng.randint(low, high))
        return Fp(rng.randrange(self.modulus), self.modulus)

    def __str__(self):
        return "Q" if self.kind is FieldKind.RATIONALS else f"F_{self.modulus}"


Q = FieldSpec.rationals()


def characteristic(f: FieldSpec) -> int:
    return f.characteristic()


def field_of(x) -> FieldSpec:
    if isinstance(x, Fp):
        return FieldSpec.prime(x.p)
    if isinstance(x, (int, Fraction)):
        return Q
    raise FieldMismatch(f"{type(x).__name__} is not a field element")


_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    fa, fb = field_of(a), field_of(b)
    if fa != fb:
        raise FieldMismatch(f"{fa} vs {fb}")
    if op == "div" and not b:
        raise DivisionByZero("division by zero")
    return fa(_OPS[op](fa(a), fb(b)))
