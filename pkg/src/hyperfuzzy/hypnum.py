"""Hyperbolic (split-complex) numbers in the idempotent basis.

A hyperbolic number ``a1 + a2*k`` with ``k*k == 1`` is stored as the pair
``(u, v)`` with ``u = a1 + a2`` and ``v = a1 - a2``, i.e. ``u*e1 + v*e2``.
In that basis addition, multiplication, the partial order, the hyperbolic
modulus and max/min are all componentwise.
"""

from __future__ import annotations

import enum
import math
import operator
import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

Real = Union[int, float]


class HypError(ValueError):
    pass


class InvalidNumberError(HypError):
    pass


class IncomparableError(HypError):
    """Raised by strict max/min when the arguments are not ordered."""

    def __init__(self, x: "Hyp", y: "Hyp", where: str = ""):
        self.x = x
        self.y = y
        self.where = where
        msg = f"{x} and {y} are incomparable"
        if where:
            msg = f"{msg} ({where})"
        super().__init__(msg)


class OrderMode(enum.Enum):
    STRICT = "strict"
    LATTICE = "lattice"

    @classmethod
    def parse(cls, value: Union[str, "OrderMode"]) -> "OrderMode":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown order mode {value!r} (expected 'lattice' or 'strict')") from None


class Ordering(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


class Kind(enum.Enum):
    ZERO = "zero"
    ZERO_DIVISOR = "zero-divisor"
    POSITIVE = "positive"  # both idempotent components > 0
    OTHER = "other"


class Hyp(tuple):
    """``u*e1 + v*e2``. Immutable and hashable; unpacks as ``u, v = x``.

    ``<=`` and ``<`` implement the partial order (componentwise), so two
    values can be neither ``<=`` nor ``>=`` each other.
    """

    __slots__ = ()

    def __new__(cls, u: Real, v: Real):
        # + 0.0 folds -0.0 into 0.0 so equality and rendering are stable
        u = float(u) + 0.0
        v = float(v) + 0.0
        if not (math.isfinite(u) and math.isfinite(v)):
            raise InvalidNumberError(f"non-finite hyperbolic component: u={u!r}, v={v!r}")
        return tuple.__new__(cls, (u, v))

    u = property(operator.itemgetter(0), doc="coefficient of e1")
    v = property(operator.itemgetter(1), doc="coefficient of e2")

    def __getnewargs__(self):
        return tuple(self)

    def __eq__(self, other) -> bool:
        return isinstance(other, Hyp) and tuple.__eq__(self, other)

    def __ne__(self, other) -> bool:
        return not self == other

    __hash__ = tuple.__hash__

    # standard form view
    @property
    def a1(self) -> float:
        return (self.u + self.v) / 2

    @property
    def a2(self) -> float:
        return (self.u - self.v) / 2

    def to_standard(self) -> tuple[float, float]:
        return self.a1, self.a2

    def __add__(self, other: "Hyp") -> "Hyp":
        other = _coerce(other)
        return Hyp(self.u + other.u, self.v + other.v)

    __radd__ = __add__

    def __sub__(self, other: "Hyp") -> "Hyp":
        other = _coerce(other)
        return Hyp(self.u - other.u, self.v - other.v)

    def __rsub__(self, other: "Hyp") -> "Hyp":
        return _coerce(other) - self

    def __neg__(self) -> "Hyp":
        return Hyp(-self.u, -self.v)

    def __mul__(self, other: "Hyp") -> "Hyp":
        other = _coerce(other)
        return Hyp(self.u * other.u, self.v * other.v)

    __rmul__ = __mul__

    def __le__(self, other: "Hyp") -> bool:
        return leq(self, other)

    def __lt__(self, other: "Hyp") -> bool:
        return lt(self, other)

    def __ge__(self, other: "Hyp") -> bool:
        return leq(other, self)

    def __gt__(self, other: "Hyp") -> bool:
        return lt(other, self)

    def __abs__(self) -> "Hyp":
        return modulus_k(self)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Hyp({render(self)})"


def _coerce(x) -> Hyp:
    if isinstance(x, Hyp):
        return x
    if isinstance(x, (int, float)):
        return real(x)
    raise TypeError(f"cannot combine Hyp with {type(x).__name__}")


ZERO = Hyp(0.0, 0.0)
ONE = Hyp(1.0, 1.0)
E1 = Hyp(1.0, 0.0)
E2 = Hyp(0.0, 1.0)
K = Hyp(1.0, -1.0)


def real(x: Real) -> Hyp:
    """Embed a real number on the diagonal ``x*e1 + x*e2``."""
    return Hyp(x, x)


def from_standard(a1: Real, a2: Real) -> Hyp:
    if not (math.isfinite(a1) and math.isfinite(a2)):
        raise InvalidNumberError(f"non-finite standard form: a1={a1!r}, a2={a2!r}")
    return Hyp(a1 + a2, a1 - a2)


def to_standard(x: Hyp) -> tuple[float, float]:
    return x.to_standard()


def standard_product(x: Hyp, y: Hyp) -> Hyp:
    """Multiply through the standard form ``(x1 + y1 k)(x2 + y2 k)``."""
    x1, y1 = x.to_standard()
    x2, y2 = y.to_standard()
    return from_standard(x1 * x2 + y1 * y2, x1 * y2 + y1 * x2)


def add(x: Hyp, y: Hyp) -> Hyp:
    return x + y


def sub(x: Hyp, y: Hyp) -> Hyp:
    return x - y


def neg(x: Hyp) -> Hyp:
    return -x


def mul(x: Hyp, y: Hyp) -> Hyp:
    return x * y


def is_zero_divisor(x: Hyp) -> bool:
    return (x.u == 0.0) != (x.v == 0.0)


def classify(x: Hyp) -> Kind:
    if x.u == 0.0 and x.v == 0.0:
        return Kind.ZERO
    if is_zero_divisor(x):
        return Kind.ZERO_DIVISOR
    if x.u > 0.0 and x.v > 0.0:
        return Kind.POSITIVE
    return Kind.OTHER


def leq(x: Hyp, y: Hyp) -> bool:
    return x.u <= y.u and x.v <= y.v


def lt(x: Hyp, y: Hyp) -> bool:
    """Strict order: strictly smaller in both components."""
    return x.u < y.u and x.v < y.v


def compare(x: Hyp, y: Hyp) -> Ordering:
    below = leq(x, y)
    above = leq(y, x)
    if below and above:
        return Ordering.EQUAL
    if below:
        return Ordering.LESS
    if above:
        return Ordering.GREATER
    return Ordering.INCOMPARABLE


def comparable(x: Hyp, y: Hyp) -> bool:
    return leq(x, y) or leq(y, x)


def max_d(x: Hyp, y: Hyp, mode: OrderMode = OrderMode.LATTICE) -> Hyp:
    if mode is OrderMode.STRICT:
        if leq(y, x):
            return x
        if leq(x, y):
            return y
        raise IncomparableError(x, y)
    return Hyp(max(x.u, y.u), max(x.v, y.v))


def min_d(x: Hyp, y: Hyp, mode: OrderMode = OrderMode.LATTICE) -> Hyp:
    if mode is OrderMode.STRICT:
        if leq(x, y):
            return x
        if leq(y, x):
            return y
        raise IncomparableError(x, y)
    return Hyp(min(x.u, y.u), min(x.v, y.v))


def sup_d(values: Iterable[Hyp]) -> Hyp:
    """Componentwise supremum of a nonempty collection."""
    us, vs = zip(*((h.u, h.v) for h in values))
    return Hyp(max(us), max(vs))


def inf_d(values: Iterable[Hyp]) -> Hyp:
    us, vs = zip(*((h.u, h.v) for h in values))
    return Hyp(min(us), min(vs))


def modulus_k(x: Hyp) -> Hyp:
    return Hyp(abs(x.u), abs(x.v))


def d_metric(x: Hyp, y: Hyp) -> Hyp:
    """Hyperbolic-valued distance ``|x - y|_k``."""
    return modulus_k(x - y)


def isclose(x: Hyp, y: Hyp, tol: float = 1e-12) -> bool:
    return abs(x.u - y.u) <= tol and abs(x.v - y.v) <= tol


def point_norm(p: Sequence[Real]) -> Hyp:
    """Euclidean norm of a real point, placed on the diagonal."""
    for c in p:
        if not math.isfinite(c):
            raise InvalidNumberError(f"non-finite coordinate {c!r}")
    return real(math.hypot(*p)) if len(p) else ZERO


class IntervalKind(enum.Enum):
    CLOSED = "closed"
    OPEN = "open"


class Degeneracy(enum.Enum):
    POINT = "point"
    DEGENERATE = "degenerate"
    NONDEGENERATE = "nondegenerate"


@dataclass(frozen=True)
class DInterval:
    lo: Hyp
    hi: Hyp
    kind: IntervalKind = IntervalKind.CLOSED

    def __post_init__(self):
        if self.kind is IntervalKind.OPEN:
            if not lt(self.lo, self.hi):
                raise HypError(f"open interval needs lo < hi in both components, got {self.lo}, {self.hi}")
        elif not leq(self.lo, self.hi):
            raise HypError(f"interval needs lo <= hi componentwise, got {self.lo}, {self.hi}")

    def contains(self, z: Hyp) -> bool:
        if self.kind is IntervalKind.OPEN:
            return lt(self.lo, z) and lt(z, self.hi)
        return leq(self.lo, z) and leq(z, self.hi)

    def length(self) -> Hyp:
        return self.hi - self.lo

    def degeneracy(self) -> Degeneracy:
        d = self.length()
        if d.u == 0.0 and d.v == 0.0:
            return Degeneracy.POINT
        if d.u == 0.0 or d.v == 0.0:
            return Degeneracy.DEGENERATE
        return Degeneracy.NONDEGENERATE


def closed(lo: Hyp, hi: Hyp) -> DInterval:
    return DInterval(lo, hi, IntervalKind.CLOSED)


def open_interval(lo: Hyp, hi: Hyp) -> DInterval:
    return DInterval(lo, hi, IntervalKind.OPEN)


UNIT = closed(ZERO, ONE)


# -- text form --------------------------------------------------------------

SIG_DIGITS = 12


def fmt_real(x: float) -> str:
    s = format(x, f".{SIG_DIGITS}g")
    return "0" if s in ("-0", "0") else s


def _coef(x: float) -> str:
    s = fmt_real(x)
    return f"({s})" if s.startswith("-") else s


def render(x: Hyp, form: str = "idempotent") -> str:
    """``0.3e1+0.7e2`` (idempotent) or ``0.5+(-0.2)k`` (standard)."""
    if form == "idempotent":
        return f"{_coef(x.u)}e1+{_coef(x.v)}e2"
    if form == "standard":
        a1, a2 = x.to_standard()
        return f"{_coef(a1)}+{_coef(a2)}k"
    raise ValueError(f"unknown form {form!r}")


_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
# the unit alternative comes first so "0.3e1" reads as 0.3*e1, not 3.0
_TERM = re.compile(
    rf"\s*([+-]?)\s*(?:(?:\(\s*({_NUM})\s*\)|({_NUM}))?\s*\*?\s*(e1|e2|k)(?![\w.])"
    rf"|\(\s*({_NUM})\s*\)|({_NUM}))\s*"
)


def parse(text: str) -> Hyp:
    """Parse either textual form; terms may appear in any order.

    Accepts ``0.3e1+0.7e2``, ``0.3e1-0.7e2``, ``(-3)e1+2e2``, ``e1``,
    ``0.5+(-0.2)k``, ``5-2k``, ``k`` and plain reals.
    """
    s = text.strip()
    if not s:
        raise InvalidNumberError("empty hyperbolic number")
    coeffs = {"e1": 0.0, "e2": 0.0, "k": 0.0, "": 0.0}
    seen: set[str] = set()
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise InvalidNumberError(f"cannot parse {text!r} at position {pos}")
        sign, paren, bare, unit, paren_r, bare_r = m.groups()
        num = next((g for g in (paren, bare, paren_r, bare_r) if g is not None), None)
        if pos > 0 and not sign:
            raise InvalidNumberError(f"missing '+' or '-' before term at position {pos} in {text!r}")
        value = float(num) if num is not None else 1.0
        if sign == "-":
            value = -value
        key = unit or ""
        if key in seen:
            raise InvalidNumberError(f"repeated {key or 'real'} term in {text!r}")
        seen.add(key)
        coeffs[key] = value
        pos = m.end()
    if seen & {"e1", "e2"} and seen & {"k", ""}:
        raise InvalidNumberError(f"mixed idempotent and standard terms in {text!r}")
    if seen & {"e1", "e2"}:
        return Hyp(coeffs["e1"], coeffs["e2"])
    return from_standard(coeffs[""], coeffs["k"])
