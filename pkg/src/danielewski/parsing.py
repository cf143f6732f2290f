"""Parsing and printing for polynomial expressions, vector-field literals,
automorphism words and certificate files.

Polynomial grammar (terms over x, y, z):

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := '-'* atom ('^' exponent)?
    atom     := RATIONAL | 'x' | 'y' | 'z' | '(' expr ')'
    exponent := INT | '(' '-'? INT ')'     (negative exponents are rejected)
    RATIONAL := INT ('/' INT)?

Field literals: SFx(i), SFy(i), HF(poly), or a triple [ex; ey; ez] of
polynomial expressions.  Automorphism words: generators Dx(f), Dy(f),
H(l), I, Sym(a,b) joined by ';' in application order (leftmost acts
first).
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import membership
from .automorphisms import (
    Generator,
    Hyperbolic,
    Involution,
    PolynomialAutomorphism,
    Symmetry,
    XShear,
    YShear,
)
from .errors import NegativeExponent, ParseError
from .fields import AlgebraicVectorField, hyperbolic, shear_x, shear_y
from .ring import (
    SurfaceConfig,
    SurfacePolynomial,
    UniPoly,
    formal_add,
    formal_mul,
    formal_scale,
    reduce,
)

# -- tokenizer -----------------------------------------------------------------


class _Tokens:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip_ws()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def take(self) -> str:
        c = self.peek()
        self.pos += 1
        return c

    def expect(self, c: str):
        got = self.peek()
        if got != c:
            raise ParseError(f"expected {c!r}, found {got or 'end of input'!r}", self.pos)
        self.pos += 1

    def integer(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an integer", start)
        return int(self.src[start : self.pos])

    def rational(self) -> Fraction:
        num = self.integer()
        if self.peek() == "/":
            self.pos += 1
            den = self.integer()
            if den == 0:
                raise ParseError("zero denominator", self.pos)
            return Fraction(num, den)
        return Fraction(num)

    def done(self) -> bool:
        return self.peek() == ""


# -- polynomial expressions ----------------------------------------------------

_VARS = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}


def _parse_exponent(t: _Tokens) -> int:
    if t.peek() == "(":
        t.take()
        neg = False
        if t.peek() == "-":
            t.take()
            neg = True
        n = t.integer()
        t.expect(")")
        if neg:
            raise NegativeExponent("exponents must be non-negative integers", t.pos)
        return n
    if t.peek() == "-":
        raise NegativeExponent("exponents must be non-negative integers", t.pos)
    return t.integer()


def _parse_atom(t: _Tokens) -> dict:
    c = t.peek()
    if c == "(":
        t.take()
        e = _parse_sum(t)
        t.expect(")")
        return e
    if c in _VARS:
        t.take()
        return {_VARS[c]: Fraction(1)}
    if c.isdigit():
        return {(0, 0, 0): t.rational()}
    raise ParseError(f"unexpected {c or 'end of input'!r}", t.pos)


def _parse_factor(t: _Tokens) -> dict:
    sign = 1
    while t.peek() == "-":
        t.take()
        sign = -sign
    e = _parse_atom(t)
    if t.peek() == "^":
        t.take()
        n = _parse_exponent(t)
        acc = {(0, 0, 0): Fraction(1)}
        for _ in range(n):
            acc = formal_mul(acc, e)
        e = acc
    return formal_scale(e, sign) if sign < 0 else e


def _parse_term(t: _Tokens) -> dict:
    e = _parse_factor(t)
    while t.peek() == "*":
        t.take()
        e = formal_mul(e, _parse_factor(t))
    return e


def _parse_sum(t: _Tokens) -> dict:
    e = _parse_term(t)
    while t.peek() in ("+", "-"):
        op = t.take()
        rhs = _parse_term(t)
        e = formal_add(e, formal_scale(rhs, -1) if op == "-" else rhs)
    return e


def parse_formal(src: str) -> dict:
    """Parse to a formal term map (x-power, y-power, z-power) -> Fraction."""
    t = _Tokens(src)
    e = _parse_sum(t)
    if not t.done():
        raise ParseError(f"trailing input {t.peek()!r}", t.pos)
    return e


def parse_expression(surface: SurfaceConfig, src: str) -> SurfacePolynomial:
    return reduce(surface, parse_formal(src))


def parse_unipoly(src: str) -> UniPoly:
    """Parse a univariate polynomial (any one of x, y, z as the variable)."""
    formal = parse_formal(src)
    out: dict[int, Fraction] = {}
    for (a, b, c), v in formal.items():
        if sum(1 for e in (a, b, c) if e) > 1:
            raise ParseError("expected a polynomial in one variable")
        e = a or b or c
        out[e] = out.get(e, Fraction(0)) + v
    return UniPoly(out)


# -- printers -------------------------------------------------------------------


def _coeff_prefix(v: Fraction, head: str) -> str:
    if head == "" and v == 1:
        return "1"
    if v == 1:
        return head
    if v == -1 and head:
        return f"-{head}"
    return f"{v}*{head}" if head else str(v)


def _monomial(v: Fraction, parts: list[str]) -> str:
    return _coeff_prefix(v, "*".join(parts))


def _join(terms: list[str]) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for s in terms[1:]:
        out += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
    return out


def _var_power(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def format_unipoly(q: UniPoly, var: str = "z") -> str:
    terms = []
    for e in sorted(q.c):
        parts = [] if e == 0 else [_var_power(var, e)]
        terms.append(_monomial(q.c[e], parts))
    return _join(terms)


def format_surface_polynomial(f: SurfacePolynomial) -> str:
    terms = []
    for name, part in (("x", f.xpart), ("y", f.ypart)):
        for (i, j), v in sorted(part.items()):
            parts = [_var_power(name, i)]
            if j:
                parts.append(_var_power("z", j))
            terms.append(_monomial(v, parts))
    for e in sorted(f.zpart.c):
        parts = [] if e == 0 else [_var_power("z", e)]
        terms.append(_monomial(f.zpart.c[e], parts))
    return _join(terms)


def format_field(theta: AlgebraicVectorField) -> str:
    return "[{}; {}; {}]".format(
        format_surface_polynomial(theta.img_x),
        format_surface_polynomial(theta.img_y),
        format_surface_polynomial(theta.img_z),
    )


# -- field literals --------------------------------------------------------------


def parse_field(surface: SurfaceConfig, src: str) -> AlgebraicVectorField:
    s = src.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise ParseError("expected ']' to close the field triple")
        comps = s[1:-1].split(";")
        if len(comps) != 3:
            raise ParseError("field triple must have three ';'-separated components")
        ex, ey, ez = (parse_expression(surface, c) for c in comps)
        return AlgebraicVectorField(ex, ey, ez)
    if s.startswith("SFx(") and s.endswith(")"):
        return shear_x(surface, _parse_index(s[4:-1]))
    if s.startswith("SFy(") and s.endswith(")"):
        return shear_y(surface, _parse_index(s[4:-1]))
    if s.startswith("HF(") and s.endswith(")"):
        return hyperbolic(surface, parse_unipoly(s[3:-1]))
    raise ParseError(f"not a field literal: {src!r}")


def _parse_index(s: str) -> int:
    try:
        n = int(s.strip())
    except ValueError:
        raise ParseError(f"expected an integer index, found {s!r}")
    if n < 0:
        raise ParseError("shear index must be >= 0")
    return n


def _parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a rational number, found {s!r}")


# -- automorphism words -----------------------------------------------------------


def parse_generator(src: str) -> Generator:
    s = src.strip()
    if s == "I":
        return Involution()
    if s.startswith("Dx(") and s.endswith(")"):
        return XShear(parse_unipoly(s[3:-1]))
    if s.startswith("Dy(") and s.endswith(")"):
        return YShear(parse_unipoly(s[3:-1]))
    if s.startswith("H(") and s.endswith(")"):
        return Hyperbolic(_parse_rational(s[2:-1]))
    if s.startswith("Sym(") and s.endswith(")"):
        args = s[4:-1].split(",")
        if len(args) != 2:
            raise ParseError("Sym takes two arguments: Sym(a, b)")
        return Symmetry(_parse_rational(args[0]), _parse_rational(args[1]))
    raise ParseError(f"not an automorphism generator: {src!r}")


def parse_word(surface: SurfaceConfig, src: str) -> PolynomialAutomorphism:
    """';'-separated generators, leftmost applied first."""
    s = src.strip()
    word = [] if not s or s == "id" else [parse_generator(g) for g in s.split(";")]
    return PolynomialAutomorphism(surface, word)


def format_generator(g: Generator) -> str:
    if isinstance(g, XShear):
        return f"Dx({format_unipoly(g.f, 'x')})"
    if isinstance(g, YShear):
        return f"Dy({format_unipoly(g.f, 'y')})"
    if isinstance(g, Hyperbolic):
        return f"H({g.lam})"
    if isinstance(g, Involution):
        return "I"
    return f"Sym({g.c}, {g.b})"


def format_word(phi: PolynomialAutomorphism) -> str:
    return ";".join(format_generator(g) for g in phi.word) if phi.word else "id"


# -- certificate files -------------------------------------------------------------


def cert_to_obj(expr) -> dict:
    if isinstance(expr, membership.Leaf):
        if expr.kind == "HF":
            return {"leaf": {"kind": "HF", "poly": format_unipoly(expr.poly)}}
        return {"leaf": {"kind": expr.kind, "i": expr.i}}
    if isinstance(expr, membership.Sum):
        return {"sum": [[str(w), cert_to_obj(t)] for w, t in expr.terms]}
    return {"bracket": [cert_to_obj(expr.left), cert_to_obj(expr.right)]}


def cert_from_obj(obj) -> "membership.BracketExpression":
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ParseError("certificate node must have exactly one of leaf/sum/bracket")
    if "leaf" in obj:
        leaf = obj["leaf"]
        kind = leaf.get("kind")
        if kind == "HF":
            return membership.Leaf("HF", poly=parse_unipoly(leaf["poly"]))
        if kind in ("SFx", "SFy"):
            return membership.Leaf(kind, int(leaf["i"]))
        raise ParseError(f"unknown leaf kind {kind!r}")
    if "sum" in obj:
        return membership.Sum(
            tuple((_parse_rational(w), cert_from_obj(t)) for w, t in obj["sum"])
        )
    if "bracket" in obj:
        left, right = obj["bracket"]
        return membership.Bracket(cert_from_obj(left), cert_from_obj(right))
    raise ParseError("certificate node must have one of leaf/sum/bracket")


def certificate_file_obj(
    surface: SurfaceConfig, claimed: SurfacePolynomial, expr
) -> dict:
    return {
        "p": format_unipoly(surface.p),
        "claimed": format_surface_polynomial(claimed),
        "certificate": cert_to_obj(expr),
    }


def load_certificate_file(text: str):
    """Returns (surface, claimed, expression)."""
    from .ring import make_surface

    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid certificate file: {exc}")
    for key in ("p", "claimed", "certificate"):
        if key not in obj:
            raise ParseError(f"certificate file is missing {key!r}")
    surface = make_surface(parse_unipoly(obj["p"]))
    claimed = parse_expression(surface, obj["claimed"])
    return surface, claimed, cert_from_obj(obj["certificate"])
