"""Exact arithmetic in the cyclotomic field Q(zeta_8) = Q(i, sqrt2).

An element is stored as four rationals ``(a0, a1, a2, a3)`` meaning
``a0 + a1*z + a2*z**2 + a3*z**3`` with ``z**4 == -1``.  Then ``i = z**2`` and
``sqrt2 = z - z**3``.  Complex conjugation sends ``z`` to ``z**7 = -z**3``.

The real subfield Q(sqrt2) gets its own small type, :class:`RealScalar`, whose
sign is decided exactly.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _Q = Fraction

_ZERO = _Q(0)
_ONE = _Q(1)

Number = Union[int, Fraction, "Scalar"]


class ZeroDivision(ZeroDivisionError):
    """Raised when inverting the zero element."""


def _q(x) -> object:
    if isinstance(x, str):
        return _Q(Fraction(x))
    if isinstance(x, Fraction):
        return _Q(x.numerator, x.denominator)
    return _Q(x)


def _qstr(x) -> str:
    f = Fraction(int(x.numerator), int(x.denominator))
    return str(f)


class Scalar:
    """An exact element of Q(zeta_8)."""

    __slots__ = ("c",)

    def __init__(self, a0=0, a1=0, a2=0, a3=0):
        self.c = (_q(a0), _q(a1), _q(a2), _q(a3))

    @classmethod
    def _raw(cls, c) -> Scalar:
        s = object.__new__(cls)
        s.c = c
        return s

    @classmethod
    def coerce(cls, x) -> Scalar:
        if isinstance(x, Scalar):
            return x
        if isinstance(x, RealScalar):
            return x.to_scalar()
        if isinstance(x, str):
            return parse_scalar(x)
        if isinstance(x, complex):
            raise TypeError("floating point complex values are not exact")
        if isinstance(x, float):
            raise TypeError("floats are not exact; use Fraction or a string")
        return cls._raw((_q(x), _ZERO, _ZERO, _ZERO))

    # -- predicates ----------------------------------------------------------
    def is_zero(self) -> bool:
        c = self.c
        return not (c[0] or c[1] or c[2] or c[3])

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_real(self) -> bool:
        c = self.c
        return c[2] == 0 and c[1] == -c[3]

    def is_rational(self) -> bool:
        c = self.c
        return not (c[1] or c[2] or c[3])

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self.c, other.c
        return Scalar._raw((a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]))

    __radd__ = __add__

    def __neg__(self):
        a = self.c
        return Scalar._raw((-a[0], -a[1], -a[2], -a[3]))

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self.c, other.c
        return Scalar._raw((a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self.c, other.c
        # fast paths: most entries are rational or Gaussian rational
        if not (b[1] or b[2] or b[3]):
            k = b[0]
            return Scalar._raw((a[0] * k, a[1] * k, a[2] * k, a[3] * k))
        if not (a[1] or a[2] or a[3]):
            k = a[0]
            return Scalar._raw((b[0] * k, b[1] * k, b[2] * k, b[3] * k))
        a0, a1, a2, a3 = a
        b0, b1, b2, b3 = b
        return Scalar._raw((
            a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
            a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
            a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
            a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
        ))

    __rmul__ = __mul__

    def conj(self) -> Scalar:
        a0, a1, a2, a3 = self.c
        # z -> -z^3, z^2 -> -z^2, z^3 -> -z
        return Scalar._raw((a0, -a3, -a2, -a1))

    def modulus_squared(self) -> RealScalar:
        return (self * self.conj()).real_part()

    def real_part(self) -> RealScalar:
        """Real part ``(x + conj x)/2`` as an element of Q(sqrt2)."""
        a0, a1, _, a3 = self.c
        # (a1 z + a3 z^3) + conj = (a1 - a3)(z - z^3)
        return RealScalar._raw(a0, (a1 - a3) / 2)

    def inv(self) -> Scalar:
        if self.is_zero():
            raise ZeroDivision("inverse of zero in Q(zeta_8)")
        a = self.c
        if not (a[1] or a[2] or a[3]):
            return Scalar._raw((1 / a[0], _ZERO, _ZERO, _ZERO))
        cj = self.conj()
        n = (self * cj).real_part()  # nonzero element of Q(sqrt2)
        return cj * n.inv().to_scalar()

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inv()

    def __pow__(self, n: int) -> Scalar:
        if n < 0:
            return self.inv() ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison / hashing ------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.c == other.c
        try:
            return self.c == Scalar.coerce(other).c
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(Fraction(int(x.numerator), int(x.denominator)) for x in self.c))

    # -- text ----------------------------------------------------------------
    def to_json(self) -> dict:
        return {f"a{k}": _qstr(x) for k, x in enumerate(self.c)}

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)


class RealScalar:
    """``a + b*sqrt2`` with rational ``a``, ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _q(a)
        self.b = _q(b)

    @classmethod
    def _raw(cls, a, b) -> RealScalar:
        s = object.__new__(cls)
        s.a, s.b = a, b
        return s

    def to_scalar(self) -> Scalar:
        return Scalar._raw((self.a, self.b, _ZERO, -self.b))

    def __add__(self, o):
        o = _as_real(o)
        return RealScalar._raw(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return RealScalar._raw(-self.a, -self.b)

    def __sub__(self, o):
        o = _as_real(o)
        return RealScalar._raw(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return _as_real(o) - self

    def __mul__(self, o):
        o = _as_real(o)
        return RealScalar._raw(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inv(self) -> RealScalar:
        d = self.a * self.a - 2 * self.b * self.b
        if d == 0:
            raise ZeroDivision("inverse of zero in Q(sqrt2)")
        return RealScalar._raw(self.a / d, -self.b / d)

    def __truediv__(self, o):
        return self * _as_real(o).inv()

    def sign(self) -> int:
        return real_sign(self)

    def __eq__(self, o) -> bool:
        try:
            o = _as_real(o)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((Fraction(int(self.a.numerator), int(self.a.denominator)),
                     Fraction(int(self.b.numerator), int(self.b.denominator))))

    def __lt__(self, o) -> bool:
        return real_sign(self - o) < 0

    def __le__(self, o) -> bool:
        return real_sign(self - o) <= 0

    def __gt__(self, o) -> bool:
        return real_sign(self - o) > 0

    def __ge__(self, o) -> bool:
        return real_sign(self - o) >= 0

    def to_json(self) -> dict:
        return {"a": _qstr(self.a), "b": _qstr(self.b)}

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * 2 ** 0.5

    def __repr__(self) -> str:
        return f"RealScalar({_qstr(self.a)}, {_qstr(self.b)})"

    def __str__(self) -> str:
        return format_scalar(self.to_scalar())


def _as_real(x) -> RealScalar:
    if isinstance(x, RealScalar):
        return x
    if isinstance(x, Scalar):
        if not x.is_real():
            raise TypeError(f"{x} is not real")
        return x.real_part()
    if isinstance(x, (int, Fraction)) or type(x) is type(_ONE):
        return RealScalar(x, 0)
    raise TypeError(f"cannot treat {x!r} as a real scalar")


def real_sign(x: RealScalar) -> int:
    """Exact sign of ``a + b*sqrt2``."""
    a, b = x.a, x.b
    if a >= 0 and b >= 0:
        return 0 if (a == 0 and b == 0) else 1
    if a <= 0 and b <= 0:
        return -1
    # opposite signs: compare a^2 with 2 b^2
    d = a * a - 2 * b * b
    if d == 0:  # impossible for rationals unless both zero
        return 0
    if a > 0:
        return 1 if d > 0 else -1
    return -1 if d > 0 else 1


ZERO = Scalar()
ONE = Scalar(1)
ZETA = Scalar(0, 1)
I = Scalar(0, 0, 1)
SQRT2 = Scalar(0, 1, 0, -1)


def as_scalar(x) -> Scalar:
    return Scalar.coerce(x)


# -- text forms ---------------------------------------------------------------

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coef>\d+(?:/\d+)?)?\s*\*?\s*
        (?P<unit>i|zeta\^?[0-3]?|sqrt2)?\s*
        (?:\*\s*(?P<mulunit>i|sqrt2))?\s*
        (?:/\s*(?P<den>sqrt2|\d+))?\s*""",
    re.VERBOSE,
)

_UNITS = {"i": I, "sqrt2": SQRT2, "zeta": ZETA, "zeta1": ZETA,
          "zeta^1": ZETA, "zeta2": I, "zeta^2": I, "zeta3": ZETA ** 3, "zeta^3": ZETA ** 3,
          "zeta0": ONE, "zeta^0": ONE}


def parse_scalar(text) -> Scalar:
    """Parse a scalar from JSON or shorthand text.

    Accepts the dict form ``{"a0": "p/q", ...}`` and strings such as ``"1"``,
    ``"-3/2"``, ``"i"``, ``"1/sqrt2"``, ``"i/sqrt2"``, ``"2+3i"``, ``"1+sqrt2"``.
    """
    if isinstance(text, Scalar):
        return text
    if isinstance(text, dict):
        try:
            return Scalar(*(Fraction(str(text.get(f"a{k}", "0"))) for k in range(4)))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad scalar object {text!r}") from exc
    if isinstance(text, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(text, (int, Fraction)):
        return Scalar(text)
    if not isinstance(text, str):
        raise ValueError(f"cannot parse scalar from {text!r}")
    s = text.strip().replace(" ", "").replace("√2", "sqrt2").replace("sqrt(2)", "sqrt2")
    if not s:
        raise ValueError("empty scalar")
    pos, total, nterms = 0, ZERO, 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse scalar {text!r}")
        if nterms and not m.group("sign"):
            raise ValueError(f"cannot parse scalar {text!r}")
        if not (m.group("coef") or m.group("unit")):
            raise ValueError(f"cannot parse scalar {text!r}")
        term = Scalar(Fraction(m.group("coef"))) if m.group("coef") else ONE
        for u in (m.group("unit"), m.group("mulunit")):
            if u:
                term = term * _UNITS[u]
        den = m.group("den")
        if den == "sqrt2":
            term = term / SQRT2
        elif den:
            term = term / Scalar(int(den))
        if m.group("sign") == "-":
            term = -term
        total = total + term
        nterms += 1
        pos = m.end()
    return total


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def format_scalar(x: Scalar) -> str:
    """Human readable text that :func:`parse_scalar` reads back."""
    a0, a1, a2, a3 = (_frac(v) for v in x.c)
    # rewrite a1 z + a3 z^3 = p*sqrt2 + q*i*sqrt2 with z = (1+i)/sqrt2:
    # z = (sqrt2 + i sqrt2)/2, z^3 = (-sqrt2 + i sqrt2)/2
    p = (a1 - a3) / 2
    q = (a1 + a3) / 2
    parts = []
    for coef, unit in ((a0, ""), (a2, "i"), (p, "sqrt2"), (q, "i*sqrt2")):
        if coef == 0:
            continue
        sign = "-" if coef < 0 else "+"
        c = abs(coef)
        if unit == "":
            body = str(c)
        elif c == 1:
            body = unit
        elif c.denominator == 1:
            body = f"{c.numerator}*{unit}"
        elif c.numerator == 1:
            body = f"{unit}/{c.denominator}"
        else:
            body = f"{c.numerator}*{unit}/{c.denominator}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += sign + body
    return out
