"""Exact Gaussian-rational scalars and small linear algebra over them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence, Union

Scalar = Union[int, Fraction, "QI"]


@dataclass(frozen=True)
class QI:
    """An element ``re + im*i`` of Q(i) with Fraction parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, x) -> "QI":
        if isinstance(x, QI):
            return x
        if isinstance(x, (int, Rational)):
            return cls(Fraction(x), Fraction(0))
        if isinstance(x, complex):
            return cls(Fraction(x.real).limit_denominator(10**12),
                       Fraction(x.imag).limit_denominator(10**12))
        if isinstance(x, float):
            return cls(Fraction(x).limit_denominator(10**12), Fraction(0))
        if isinstance(x, str):
            return parse_qi(x)
        raise TypeError(f"cannot convert {x!r} to a Gaussian rational")

    def __add__(self, other):
        o = QI.of(other)
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __sub__(self, other):
        o = QI.of(other)
        return QI(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return QI.of(other) - self

    def __mul__(self, other):
        o = QI.of(other)
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> "QI":
        return QI(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "QI":
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("QI division by zero")
        return QI(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * QI.of(other).inverse()

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        try:
            o = QI.of(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        if not self.im:
            return f"QI({self.re})"
        return f"QI({self.re}, {self.im})"

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def parse_qi(text: str) -> QI:
    """Parse ``'3'``, ``'1/2'``, ``'2i'``, ``'1/2-3/4i'`` into a QI."""
    s = text.strip().replace(" ", "").replace("j", "i")
    if not s.endswith("i"):
        return QI(Fraction(s))
    body = s[:-1]
    # split at the last sign that is not the leading one
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut <= 0:
        im = body if body not in ("", "+", "-") else body + "1"
        return QI(Fraction(0), Fraction(im))
    re_part, im_part = body[:cut], body[cut:]
    if im_part in ("+", "-"):
        im_part += "1"
    return QI(Fraction(re_part), Fraction(im_part))


def _as_fraction(x) -> Fraction | None:
    if isinstance(x, QI):
        return x.re if not x.im else None
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    return None


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    """Exact rank by Gaussian elimination over Q(i) (over Q when every entry is real)."""
    if not rows:
        return 0
    real = [[_as_fraction(x) for x in row] for row in rows]
    if all(v is not None for row in real for v in row):
        m = real
    else:
        m = [[QI.of(x) for x in row] for row in rows]
    n_cols = len(m[0])
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c] if isinstance(m[r][c], Fraction) else m[r][c].inverse()
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def det(rows: Sequence[Sequence[Scalar]]) -> QI:
    """Exact determinant of a square matrix over Q(i)."""
    m = [[QI.of(x) for x in row] for row in rows]
    n = len(m)
    result = QI(Fraction(1))
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c]), None)
        if pivot is None:
            return QI()
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            result = -result
        result = result * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result
