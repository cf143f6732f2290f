"""Sparse multivariate (Laurent) polynomials over Q.

Used for flow maps in an adapted chart: variables are indexed 0..n-1 and
exponents are arbitrary integers (negative exponents are permitted in any
variable, which makes the first variable usable as a chart coordinate that
never vanishes).
"""

from __future__ import annotations

from fractions import Fraction


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


class MPoly:
    """Laurent polynomial in ``nvars`` variables, keyed by exponent tuples."""

    __slots__ = ("nvars", "c")

    def __init__(self, nvars: int, coeffs=None):
        self.nvars = nvars
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = _frac(v)
                if v:
                    c[tuple(k)] = v
        self.c = c

    @classmethod
    def const(cls, nvars: int, v) -> "MPoly":
        return cls(nvars, {(0,) * nvars: _frac(v)})

    @classmethod
    def var(cls, nvars: int, i: int, e: int = 1) -> "MPoly":
        k = [0] * nvars
        k[i] = e
        return cls(nvars, {tuple(k): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.c

    def __eq__(self, other) -> bool:
        return isinstance(other, MPoly) and self.nvars == other.nvars and self.c == other.c

    def __add__(self, other: "MPoly") -> "MPoly":
        c = dict(self.c)
        for k, v in other.c.items():
            w = c.get(k, Fraction(0)) + v
            if w:
                c[k] = w
            else:
                c.pop(k, None)
        r = MPoly(self.nvars)
        r.c = c
        return r

    def __neg__(self) -> "MPoly":
        r = MPoly(self.nvars)
        r.c = {k: -v for k, v in self.c.items()}
        return r

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other: "MPoly") -> "MPoly":
        c: dict = {}
        for k1, v1 in self.c.items():
            for k2, v2 in other.c.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                w = c.get(k, Fraction(0)) + v1 * v2
                if w:
                    c[k] = w
                else:
                    del c[k]
        r = MPoly(self.nvars)
        r.c = c
        return r

    def scale(self, v) -> "MPoly":
        v = _frac(v)
        r = MPoly(self.nvars)
        r.c = {} if not v else {k: w * v for k, w in self.c.items()}
        return r

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("use monomial inversion for negative powers")
        result = MPoly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def diff(self, i: int) -> "MPoly":
        c = {}
        for k, v in self.c.items():
            e = k[i]
            if e:
                kk = list(k)
                kk[i] = e - 1
                c[tuple(kk)] = v * e
        r = MPoly(self.nvars)
        r.c = c
        return r

    def is_monomial(self) -> bool:
        return len(self.c) == 1

    def inverse_monomial(self) -> "MPoly":
        if len(self.c) != 1:
            raise ValueError("only monomials are invertible")
        ((k, v),) = self.c.items()
        return MPoly(self.nvars, {tuple(-e for e in k): 1 / v})

    def subs(self, values: dict) -> "MPoly":
        """Substitute MPoly values for some variables (exponents must be >= 0
        for substituted variables unless the value is an invertible monomial)."""
        result = MPoly(self.nvars)
        inv_cache = {}
        for k, v in self.c.items():
            term = MPoly.const(self.nvars, v)
            for i, e in enumerate(k):
                if i in values:
                    val = values[i]
                    if e >= 0:
                        term = term * val**e
                    else:
                        if i not in inv_cache:
                            inv_cache[i] = val.inverse_monomial()
                        term = term * inv_cache[i] ** (-e)
                elif e:
                    term = term * MPoly.var(self.nvars, i, e)
            result = result + term
        return result

    def coeff_of_var_power(self, i: int, e: int) -> "MPoly":
        """Coefficient of (var_i)^e, as an MPoly with var_i exponent zero."""
        c = {}
        for k, v in self.c.items():
            if k[i] == e:
                kk = list(k)
                kk[i] = 0
                c[tuple(kk)] = v
        r = MPoly(self.nvars)
        r.c = c
        return r

    def max_exponent(self, i: int):
        return max((k[i] for k in self.c), default=None)

    def __repr__(self):
        return f"MPoly({self.nvars}, {self.c!r})"
