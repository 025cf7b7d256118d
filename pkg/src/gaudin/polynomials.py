"""Dense univariate polynomials over an abstract coefficient ring.

Coefficients may be exact scalars, complex floats, or exact matrices; the
ring only needs ``+``, ``-``, ``*`` and a zero test.  Multiplication keeps
the written order of coefficient products, so matrix-valued polynomials are
safe.  Division-based operations (gcd, divmod) require scalar field
coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .scalars import iszero


class Poly:
    """Polynomial c_0 + c_1 u + ... + c_d u^d, stored in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and iszero(coeffs[-1]):
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @staticmethod
    def constant(c):
        return Poly([c])

    @staticmethod
    def x(one=Fraction(1)):
        return Poly([one * 0, one])

    @staticmethod
    def from_roots(roots, one=Fraction(1)):
        """Monic polynomial with the given roots."""
        p = Poly([one])
        for r in roots:
            p = p * Poly([-r * one, one])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self._zero()

    def _zero(self):
        if self.coeffs:
            return self.coeffs[0] * 0
        return Fraction(0)

    @property
    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if isinstance(other, Poly):
            if len(self.coeffs) != len(other.coeffs):
                return False
            return all(a == b for a, b in zip(self.coeffs, other.coeffs))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a:
            return other
        if not b:
            return self
        n = max(len(a), len(b))
        out = []
        for k in range(n):
            if k < len(a) and k < len(b):
                out.append(a[k] + b[k])
            elif k < len(a):
                out.append(a[k])
            else:
                out.append(b[k])
        return Poly(out)

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [None] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if iszero(ca):
                continue
            for j, cb in enumerate(b):
                term = ca * cb
                out[i + j] = term if out[i + j] is None else out[i + j] + term
        zero = a[0] * 0 * b[0]
        return Poly([zero if c is None else c for c in out])

    def scale(self, c, right=False):
        """Multiply every coefficient by c (on the right if requested)."""
        if right:
            return Poly([a * c for a in self.coeffs])
        return Poly([c * a for a in self.coeffs])

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        one = Fraction(1) if not self.coeffs else self.coeffs[0] ** 0
        out = Poly([one])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x):
        if not self.coeffs:
            return x * 0
        out = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            out = out * x + c
        return out

    def derivative(self):
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def shifted(self, b):
        """Return p(u + b) by repeated synthetic division by (u - b)."""
        work = list(self.coeffs)
        out = []
        while work:
            carry = work[-1]
            stages = [carry]
            for c in reversed(work[:-1]):
                carry = c + carry * b
                stages.append(carry)
            out.append(stages.pop())
            work = list(reversed(stages))
        return Poly(out)

    def taylor_at(self, b, count=None):
        """Coefficients of the expansion of p in powers of (u - b)."""
        shifted = self.shifted(b)
        coeffs = list(shifted.coeffs)
        if count is not None:
            zero = self._zero()
            coeffs += [zero] * (count - len(coeffs))
            coeffs = coeffs[:count]
        return coeffs

    def divmod(self, other):
        """Quotient and remainder; requires invertible leading coefficient."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        num = list(self.coeffs)
        d = other.degree
        lead = other.leading
        if len(num) <= d:
            return Poly(), self
        quot = [self._zero()] * (len(num) - d)
        for k in reversed(range(len(quot))):
            c = num[k + d] / lead
            quot[k] = c
            if iszero(c):
                continue
            for j, oc in enumerate(other.coeffs):
                num[k + j] = num[k + j] - c * oc
        return Poly(quot), Poly(num[:d])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def monic(self):
        if not self.coeffs:
            return self
        lead = self.leading
        return Poly([c / lead for c in self.coeffs])

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.leading == 1

    def map(self, fn):
        return Poly([fn(c) for c in self.coeffs])

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        return format_poly(self)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over a scalar field (exact coefficients only)."""
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    """Monic lcm over a scalar field (exact coefficients only)."""
    if a.is_zero() or b.is_zero():
        return Poly()
    g = poly_gcd(a, b)
    return (a * b.exact_div(g)).monic()


def format_poly(p: Poly, var: str = "u") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in reversed(range(len(p.coeffs))):
        c = p.coeffs[k]
        if iszero(c):
            continue
        if k == 0:
            body = f"{c}"
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = power if c == 1 else (f"-{power}" if c == -1 else f"{c}*{power}")
        parts.append(body)
    out = parts[0]
    for body in parts[1:]:
        out += f" - {body[1:]}" if body.startswith("-") else f" + {body}"
    return out


def newton_interpolate(points, values) -> Poly:
    """Polynomial of degree < len(points) through the samples (exact or float)."""
    n = len(points)
    if n == 0:
        return Poly()
    coeffs = list(values)
    for j in range(1, n):
        for i in reversed(range(j, n)):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (points[i] - points[i - j])
    poly = Poly([coeffs[-1]])
    for k in reversed(range(n - 1)):
        poly = poly * Poly([-points[k], points[k] * 0 + 1]) + Poly([coeffs[k]])
    return poly


def poly_det(rows) -> Poly:
    """Determinant of a square matrix of polynomials by cofactor expansion.

    Commutative coefficients only; fine for the Wronskian-sized matrices
    (dimension at most 6) used here.
    """
    n = len(rows)
    if n == 0:
        raise ValueError("empty determinant")
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        entry = rows[0][j]
        if entry.is_zero():
            continue
        minor = [[rows[i][c] for c in range(n) if c != j] for i in range(1, n)]
        term = entry * poly_det(minor)
        if j % 2 == 1:
            term = -term
        total = term if total is None else total + term
    return Poly() if total is None else total


def falling_product(alpha_count: int, one=Fraction(1)) -> Poly:
    """The polynomial a(a-1)...(a-alpha_count+1) in the variable a."""
    p = Poly([one])
    for j in range(alpha_count):
        p = p * Poly([-j * one, one])
    return p


def binomial(n: int, k: int) -> int:
    return comb(n, k)
