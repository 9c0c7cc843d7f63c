"""Exact log-scale absolute values.

Every absolute value in this library lives on a logarithmic scale: a
quantity ``|x|`` with ``x`` in ``[0, 1]`` is stored as the rational number
``log|x| <= 0``, and ``log 0`` is the distinguished value ``NEG_INF``.
Working in log scale turns piecewise monomial functions into piecewise
linear ones, and all identities become exact integer/rational checks.

The normalization of the scale is a free choice; by convention
``log|p| = -1`` unless the caller picks another negative rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[int, str, Fraction]


class LogAbs:
    """A log-scale absolute value: an exact rational or ``-inf``.

    Instances are immutable and totally ordered, with ``NEG_INF`` below
    every finite value.  Addition (product of absolute values) absorbs
    ``NEG_INF``; multiplication by an integer is exponentiation.
    """

    __slots__ = ("_value",)

    _value: Fraction | None

    def __init__(self, value: RationalLike):
        object.__setattr__(self, "_value", Fraction(value))

    @classmethod
    def _make_neg_inf(cls) -> "LogAbs":
        obj = object.__new__(cls)
        object.__setattr__(obj, "_value", None)
        return obj

    @property
    def is_neg_inf(self) -> bool:
        return self._value is None

    @property
    def value(self) -> Fraction:
        if self._value is None:
            raise ValueError("NEG_INF has no finite value")
        return self._value

    def __setattr__(self, name, val):  # pragma: no cover - immutability guard
        raise AttributeError("LogAbs is immutable")

    @staticmethod
    def _coerce(other) -> "LogAbs":
        if isinstance(other, LogAbs):
            return other
        if isinstance(other, (int, Fraction)):
            return LogAbs(other)
        return NotImplemented

    def __add__(self, other) -> "LogAbs":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._value is None or other._value is None:
            return NEG_INF
        return LogAbs(self._value + other._value)

    __radd__ = __add__

    def __sub__(self, other) -> "LogAbs":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other._value is None:
            raise ValueError("cannot subtract NEG_INF")
        if self._value is None:
            return NEG_INF
        return LogAbs(self._value - other._value)

    def __mul__(self, k) -> "LogAbs":
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        if self._value is None:
            if k > 0:
                return NEG_INF
            raise ValueError("NEG_INF * k only defined for k > 0")
        return LogAbs(self._value * k)

    __rmul__ = __mul__

    def _cmp_key(self):
        # NEG_INF sorts below every rational.
        return (0,) if self._value is None else (1, self._value)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._value == other._value

    def __hash__(self):
        return hash(("LogAbs", self._value))

    def __lt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp_key() < other._cmp_key()

    def __le__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp_key() <= other._cmp_key()

    def __gt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp_key() > other._cmp_key()

    def __ge__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp_key() >= other._cmp_key()

    def __str__(self) -> str:
        return "-inf" if self._value is None else str(self._value)

    def __repr__(self) -> str:
        return f"LogAbs({self})"

    @classmethod
    def parse(cls, text: str) -> "LogAbs":
        """Parse ``"p/q"`` or ``"-inf"``."""
        text = text.strip()
        if text == "-inf":
            return NEG_INF
        return cls(Fraction(text))


NEG_INF = LogAbs._make_neg_inf()

ZERO = LogAbs(0)


class _PlusInfinity:
    """Positive infinity, used for tail lengths and unbounded domains.

    Compares above every rational; multiplication by a positive number
    and addition of a rational leave it unchanged.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("_PlusInfinity")

    def __mul__(self, k):
        if isinstance(k, _PlusInfinity) or k > 0:
            return self
        raise ValueError("INF * k only defined for k > 0")

    __rmul__ = __mul__

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "inf"

    def __str__(self):
        return "inf"


INF = _PlusInfinity()

#: A finite rational or +infinity (edge lengths, domain endpoints).
ExtendedRational = Union[Fraction, _PlusInfinity]


def parse_length(text: str) -> ExtendedRational:
    text = text.strip()
    if text == "inf":
        return INF
    return Fraction(text)


def format_length(x: ExtendedRational) -> str:
    return "inf" if x is INF else str(x)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class ResidueSetting:
    """Characteristics of the base field and its residue field.

    The admissible pairs ``(char, res_char)`` are ``(0, 0)``
    (equicharacteristic zero), ``(0, p)`` (mixed characteristic, which
    carries the normalization ``log_p = log|p| < 0``) and ``(p, p)``
    (equicharacteristic ``p``).  The setting determines the absolute
    value of every integer via :meth:`int_abs`.
    """

    char: int
    res_char: int
    log_p: LogAbs | None = None

    def __post_init__(self):
        if self.char == 0 and self.res_char == 0:
            if self.log_p is not None:
                raise ValueError("equicharacteristic zero carries no log_p")
        elif self.char == 0 and _is_prime(self.res_char):
            if self.log_p is None:
                raise ValueError("mixed characteristic requires log_p")
            if self.log_p.is_neg_inf or self.log_p.value >= 0:
                raise ValueError("log_p must be a strictly negative rational")
        elif self.char == self.res_char and _is_prime(self.char):
            if self.log_p is not None:
                raise ValueError("equicharacteristic p carries no log_p")
        else:
            raise ValueError(
                f"invalid characteristic pair ({self.char}, {self.res_char})"
            )

    @classmethod
    def equichar_zero(cls) -> "ResidueSetting":
        return cls(0, 0)

    @classmethod
    def equichar(cls, p: int) -> "ResidueSetting":
        return cls(p, p)

    @classmethod
    def mixed(cls, p: int, log_p: RationalLike = Fraction(-1)) -> "ResidueSetting":
        return cls(0, p, LogAbs(log_p))

    @property
    def kind(self) -> str:
        if self.char == 0 and self.res_char == 0:
            return "equichar0"
        if self.char == 0:
            return "mixed"
        return "equicharp"

    def int_abs(self, n: int) -> LogAbs:
        """log|n| for the integer ``n`` under this setting."""
        if n == 0:
            return NEG_INF
        n = abs(n)
        if self.kind == "equichar0":
            return ZERO
        p = self.res_char
        if self.kind == "equicharp":
            return NEG_INF if n % p == 0 else ZERO
        vp = 0
        while n % p == 0:
            n //= p
            vp += 1
        return self.log_p * vp if vp else ZERO

    def describe(self) -> str:
        if self.kind == "equichar0":
            return "equichar0"
        if self.kind == "equicharp":
            return f"equicharP:{self.char}"
        return f"mixed:{self.res_char}:{self.log_p}"

    @classmethod
    def parse(cls, text: str) -> "ResidueSetting":
        """Parse ``equichar0``, ``equicharP:p`` or ``mixed:p:logp``."""
        parts = text.strip().split(":")
        if parts[0] == "equichar0" and len(parts) == 1:
            return cls.equichar_zero()
        if parts[0] == "equicharP" and len(parts) == 2:
            return cls.equichar(int(parts[1]))
        if parts[0] == "mixed" and len(parts) == 3:
            return cls.mixed(int(parts[1]), Fraction(parts[2]))
        raise ValueError(f"cannot parse residue setting {text!r}")


def int_abs(setting: ResidueSetting, n: int) -> LogAbs:
    """Module-level alias for :meth:`ResidueSetting.int_abs`."""
    return setting.int_abs(n)
