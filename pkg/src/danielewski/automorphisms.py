"""Algebraic automorphisms of the surface x*y = p(z) as words in generators.

Generators: x-shears Dx_f (x, y, z) -> (x, p(z + x f(x))/x, z + x f(x)),
y-shears Dy_f, hyperbolic rotations H_lam (x, y, z) -> (lam x, y/lam, z),
the involution I (x, y, z) -> (y, x, z), and affine symmetries of p,
(x, y, z) -> (x, a0 y, c z + b) with p(c z + b) = a0 p(z).

A word is a list in application order: [a1, ..., an] is the point map
an o ... o a1 (a1 acts first).  Words are normalized to the shape
[alternating shears..., symmetry?, hyperbolic?, involution?] using the
commutation relations of the group; normalization never changes the ring
action.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegreeGate,
    InternalInvariantViolation,
    InvalidGenerator,
    NotNilpotent,
)
from .fields import (
    AlgebraicVectorField,
    apply_field,
    bracket,
    lnd_check,
    shear_x,
    shear_y,
)
from .multipoly import MPoly
from .ring import (
    ChartElement,
    SurfaceConfig,
    SurfacePolynomial,
    UniPoly,
    chart_constant_quotient,
    chart_eval_unipoly,
    from_chart,
    to_chart,
)

# -- generators ----------------------------------------------------------------


@dataclass(frozen=True)
class XShear:
    f: UniPoly


@dataclass(frozen=True)
class YShear:
    f: UniPoly


@dataclass(frozen=True)
class Hyperbolic:
    lam: Fraction

    def __post_init__(self):
        if not self.lam:
            raise InvalidGenerator("hyperbolic parameter must be nonzero")


@dataclass(frozen=True)
class Involution:
    pass


@dataclass(frozen=True)
class Symmetry:
    """(x, y, z) -> (x, a0*y, c*z + b) where p(c*z + b) = a0*p(z), a0 in {1,-1}."""

    c: Fraction
    b: Fraction

    def __post_init__(self):
        if self.c not in (1, -1):
            raise InvalidGenerator("symmetry slope must be 1 or -1")

    def factor(self, surface: SurfaceConfig) -> Fraction:
        gamma = UniPoly({1: self.c, 0: self.b})
        q = surface.p.compose(gamma)
        if q == surface.p:
            return Fraction(1)
        if q == surface.p.scale(-1):
            return Fraction(-1)
        raise InvalidGenerator(
            f"z -> {self.c}*z + {self.b} is not a symmetry of p (p(c z + b) != +-p(z))"
        )


Generator = XShear | YShear | Hyperbolic | Involution | Symmetry


def _is_identity_gen(g: Generator) -> bool:
    if isinstance(g, (XShear, YShear)):
        return g.f.is_zero()
    if isinstance(g, Hyperbolic):
        return g.lam == 1
    if isinstance(g, Symmetry):
        return g.c == 1 and g.b == 0
    return False


def _gen_images(surface: SurfaceConfig, g: Generator):
    """Coordinate images (pullbacks of x, y, z) of a single generator."""
    s = surface
    if isinstance(g, XShear):
        img_z = SurfacePolynomial(
            s, {(e + 1, 0): v for e, v in g.f.c.items()}, {}, UniPoly.var()
        )
        img_y = from_chart(chart_eval_unipoly(s.p, to_chart(img_z)).shift(-1))
        return s.x(), img_y, img_z
    if isinstance(g, YShear):
        img_z = SurfacePolynomial(
            s, {}, {(e + 1, 0): v for e, v in g.f.c.items()}, UniPoly.var()
        )
        xi, yi, zi = _gen_images(s, XShear(g.f))
        return yi.swap_xy(), s.y(), img_z
    if isinstance(g, Hyperbolic):
        return s.x(v=g.lam), s.y(v=1 / g.lam), s.z()
    if isinstance(g, Involution):
        return s.y(), s.x(), s.z()
    if isinstance(g, Symmetry):
        a0 = g.factor(s)
        return s.x(), s.y(v=a0), s.from_unipoly(UniPoly({1: g.c, 0: g.b}))
    raise InvalidGenerator(f"unknown generator {g!r}")


def substitute(
    e: SurfacePolynomial,
    img_x: SurfacePolynomial,
    img_y: SurfacePolynomial,
    img_z: SurfacePolynomial,
) -> SurfacePolynomial:
    """e(img_x, img_y, img_z), reduced to normal form."""
    s = e.surface
    acc = s.zero()
    for (i, j), v in e.xpart.items():
        acc = acc + (img_x**i * img_z**j).scale(v)
    for (i, j), v in e.ypart.items():
        acc = acc + (img_y**i * img_z**j).scale(v)
    for j, v in e.zpart.c.items():
        acc = acc + (img_z**j).scale(v)
    return acc


# -- word normalization --------------------------------------------------------


def _rewrite_pair(a: Generator, b: Generator, s: SurfaceConfig):
    """Rewrite the adjacent subword [a, b] (a applied first) or return None."""
    # merges
    if isinstance(a, XShear) and isinstance(b, XShear):
        return [XShear(a.f + b.f)]
    if isinstance(a, YShear) and isinstance(b, YShear):
        return [YShear(a.f + b.f)]
    if isinstance(a, Hyperbolic) and isinstance(b, Hyperbolic):
        return [Hyperbolic(a.lam * b.lam)]
    if isinstance(a, Involution) and isinstance(b, Involution):
        return []
    if isinstance(a, Symmetry) and isinstance(b, Symmetry):
        return [Symmetry(b.c * a.c, b.c * a.b + b.b)]
    # push symmetry / hyperbolic / involution to the right of shears
    if isinstance(a, Hyperbolic):
        lam = a.lam
        if isinstance(b, XShear):
            scaled = UniPoly({e: v * lam ** (e + 1) for e, v in b.f.c.items()})
            return [XShear(scaled), a]
        if isinstance(b, YShear):
            scaled = UniPoly({e: v * lam ** (-(e + 1)) for e, v in b.f.c.items()})
            return [YShear(scaled), a]
    if isinstance(a, Involution):
        if isinstance(b, XShear):
            return [YShear(b.f), a]
        if isinstance(b, YShear):
            return [XShear(b.f), a]
        if isinstance(b, Hyperbolic):
            return [Hyperbolic(1 / b.lam), a]
        if isinstance(b, Symmetry):
            return [b, Hyperbolic(b.factor(s)), a]
    if isinstance(a, Symmetry):
        a0 = a.factor(s)
        if isinstance(b, XShear):
            return [XShear(b.f.scale(a.c)), a]
        if isinstance(b, YShear):
            f = b.f
            scaled = UniPoly({e: v * a.c * a0 ** (e + 1) for e, v in f.c.items()})
            return [YShear(scaled), a]
    if isinstance(a, Hyperbolic) and isinstance(b, Symmetry):
        return [b, a]
    return None


def normalize_word(surface: SurfaceConfig, word: list) -> list:
    word = [g for g in word if not _is_identity_gen(g)]
    changed = True
    while changed:
        changed = False
        i = 0
        while i + 1 < len(word):
            r = _rewrite_pair(word[i], word[i + 1], surface)
            if r is not None:
                word[i : i + 2] = [g for g in r if not _is_identity_gen(g)]
                changed = True
                i = max(i - 1, 0)
            else:
                i += 1
    return word


class PolynomialAutomorphism:
    """Normalized word of generators with its cached ring action."""

    __slots__ = ("surface", "word", "img_x", "img_y", "img_z")

    def __init__(self, surface: SurfaceConfig, word: list, _normalize: bool = True):
        self.surface = surface
        self.word = normalize_word(surface, list(word)) if _normalize else list(word)
        # Pullback along an o ... o a1 is subst_a1 o ... o subst_an.
        x, y, z = surface.x(), surface.y(), surface.z()
        for g in reversed(self.word):
            gx, gy, gz = _gen_images(surface, g)
            x = substitute(x, gx, gy, gz)
            y = substitute(y, gx, gy, gz)
            z = substitute(z, gx, gy, gz)
        self.img_x, self.img_y, self.img_z = x, y, z
        relation = x * y - substitute(surface.from_unipoly(surface.p), x, y, z)
        if not relation.is_zero():
            raise InternalInvariantViolation("automorphism breaks the surface relation")

    def is_identity(self) -> bool:
        return not self.word

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolynomialAutomorphism)
            and self.surface == other.surface
            and self.img_x == other.img_x
            and self.img_y == other.img_y
            and self.img_z == other.img_z
        )

    def __repr__(self):
        return f"Automorphism({self.word!r})"


def identity_auto(surface: SurfaceConfig) -> PolynomialAutomorphism:
    return PolynomialAutomorphism(surface, [])


def apply_auto(phi: PolynomialAutomorphism, e: SurfacePolynomial) -> SurfacePolynomial:
    """Pullback e o phi (substitute phi's coordinate images)."""
    return substitute(e, phi.img_x, phi.img_y, phi.img_z)


def compose(
    phi: PolynomialAutomorphism, psi: PolynomialAutomorphism
) -> PolynomialAutomorphism:
    """phi o psi (psi acts first)."""
    return PolynomialAutomorphism(phi.surface, psi.word + phi.word)


def _invert_gen(g: Generator) -> Generator:
    if isinstance(g, XShear):
        return XShear(-g.f)
    if isinstance(g, YShear):
        return YShear(-g.f)
    if isinstance(g, Hyperbolic):
        return Hyperbolic(1 / g.lam)
    if isinstance(g, Involution):
        return g
    if isinstance(g, Symmetry):
        return Symmetry(g.c, -g.c * g.b)
    raise InvalidGenerator(f"unknown generator {g!r}")


def invert(phi: PolynomialAutomorphism) -> PolynomialAutomorphism:
    return PolynomialAutomorphism(
        phi.surface, [_invert_gen(g) for g in reversed(phi.word)]
    )


@dataclass(frozen=True)
class ZDegreeVerdict:
    degree: int
    identity_word: bool


def z_x_degree(phi: PolynomialAutomorphism) -> ZDegreeVerdict:
    """Largest x- or y-power in the normal form of the word's z-component.

    Positive for every nontrivial shear word when deg(p) >= 3: the
    z-coordinate of such a word is never of the form a*z + b.
    """
    if phi.surface.degree < 3:
        raise DegreeGate("z-degree lemma requires deg(p) >= 3")
    for g in phi.word:
        if not isinstance(g, (XShear, YShear)):
            raise InvalidGenerator("z_x_degree expects a word of shears only")
    if not phi.word:
        return ZDegreeVerdict(0, True)
    img = phi.img_z
    d = max((i for (i, _) in list(img.xpart) + list(img.ypart)), default=0)
    return ZDegreeVerdict(int(d), False)


def conjugate_field(
    phi: PolynomialAutomorphism, theta: AlgebraicVectorField
) -> AlgebraicVectorField:
    """(phi_* Theta)(g) = Theta(g o phi^-1) o phi."""
    phi_inv = invert(phi)
    s = phi.surface
    images = []
    for g in (s.x(), s.y(), s.z()):
        images.append(apply_auto(phi, apply_field(theta, apply_auto(phi_inv, g))))
    return AlgebraicVectorField(*images)


def volume_factor(phi: PolynomialAutomorphism) -> Fraction:
    """The constant J with phi^* omega = J * omega, for omega = dx/x ^ dz."""
    c_x = to_chart(phi.img_x)
    c_z = to_chart(phi.img_z)
    num = (c_x.diff_x() * c_z.diff_z() - c_x.diff_z() * c_z.diff_x()).shift(1)
    return chart_constant_quotient(num, c_x)


# -- flows of shear fields -----------------------------------------------------
#
# In the chart adapted to the shear kind (u = x for x-shears, u = y for
# y-shears), the flow of SF_i is (u, z) -> (u, z + t u^(i+1)).  Flow maps are
# Laurent polynomials in u with polynomial dependence on z and t (MPoly
# variables 0 = u, 1 = z, 2 = t).

U, Z, T = 0, 1, 2


def _surface_to_adapted_mpoly(e: SurfacePolynomial, kind: str, nvars: int = 3) -> MPoly:
    """Normal-form element as a Laurent polynomial in the adapted chart."""
    s = e.surface
    p_mp = MPoly(nvars, {tuple(ee if k == Z else 0 for k in range(nvars)): v
                         for ee, v in s.p.c.items()})
    own, other = ("x", "y") if kind == "x" else ("y", "x")
    parts = {"x": e.xpart, "y": e.ypart}
    r = MPoly(nvars)
    for (i, j), v in parts[own].items():
        key = [0] * nvars
        key[U], key[Z] = i, j
        r = r + MPoly(nvars, {tuple(key): v})
    for (i, j), v in parts[other].items():
        key = [0] * nvars
        key[U], key[Z] = -i, j
        r = r + MPoly(nvars, {tuple(key): v}) * p_mp**i
    for j, v in e.zpart.c.items():
        key = [0] * nvars
        key[Z] = j
        r = r + MPoly(nvars, {tuple(key): v})
    return r


class FlowMap:
    """Symbolic flow over Q[t] of a shear field SF_i (x- or y-kind)."""

    __slots__ = ("surface", "kind", "i", "img_u", "img_z", "img_other")

    def __init__(self, surface: SurfaceConfig, kind: str, i: int):
        if kind not in ("x", "y"):
            raise ValueError("flow kind must be 'x' or 'y'")
        if i < 0:
            raise ValueError("shear index must be >= 0")
        self.surface = surface
        self.kind = kind
        self.i = i
        u = MPoly.var(3, U)
        t_mono = MPoly(3, {(i + 1, 0, 1): 1})
        self.img_u = u
        self.img_z = MPoly.var(3, Z) + t_mono
        p_of_z = _surface_to_adapted_mpoly(
            surface.from_unipoly(surface.p), kind
        ).subs({Z: self.img_z})
        self.img_other = p_of_z * u.inverse_monomial()
        # relation u * img_other = p(img_z) identically in t
        if not (self.img_u * self.img_other - p_of_z).is_zero():
            raise InternalInvariantViolation("flow map breaks the surface relation")

    def at(self, t) -> PolynomialAutomorphism:
        """The time-t automorphism: a single shear with parameter t*u^i."""
        f = UniPoly.monomial(self.i, t)
        gen = XShear(f) if self.kind == "x" else YShear(f)
        return PolynomialAutomorphism(self.surface, [gen])

    def generator_field(self) -> AlgebraicVectorField:
        return (shear_x if self.kind == "x" else shear_y)(self.surface, self.i)


def flow_of_shear(surface: SurfaceConfig, kind: str, i: int) -> FlowMap:
    return FlowMap(surface, kind, i)


def flow_group_law(flow: FlowMap) -> bool:
    """F(t) o F(s) = F(t+s) identically in two formal parameters.

    Variables: 0 = u, 1 = z, 2 = t, 3 = s.
    """
    i = flow.i
    z = MPoly.var(4, 1)
    step_t = z + MPoly(4, {(i + 1, 0, 1, 0): 1})
    step_s = z + MPoly(4, {(i + 1, 0, 0, 1): 1})
    composed = step_s.subs({1: step_t})
    both = z + MPoly(4, {(i + 1, 0, 1, 0): 1}) + MPoly(4, {(i + 1, 0, 0, 1): 1})
    return composed == both


# -- polynomial Taylor expansion of flow conjugation ----------------------------


def taylor_conjugation(
    theta: AlgebraicVectorField,
    psi: AlgebraicVectorField,
    max_terms: int = 64,
) -> list[AlgebraicVectorField]:
    """The fields ad_theta^k(psi)/k! until zero; theta must be an LND."""
    verdict = lnd_check(theta)
    if not verdict.nilpotent:
        raise NotNilpotent("flow generator failed the nilpotency check")
    terms = [psi]
    k = 0
    while not terms[-1].is_zero():
        if k >= max_terms:
            raise NotNilpotent("bracket iteration did not terminate within the bound")
        k += 1
        terms.append(bracket(theta, terms[-1]).scale(Fraction(1, k)))
    return terms[:-1] if len(terms) > 1 else terms


def taylor_flow_identity(flow: FlowMap, psi: AlgebraicVectorField) -> bool:
    """(F_t)_* psi = sum_k t^k ad^k(psi)/k!, identically in t.

    Verified in the adapted chart on both coordinate functions u and z,
    with the conjugated field computed as psi(g o F_{-t}) o F_t.
    """
    terms = taylor_conjugation(flow.generator_field(), psi)
    i = flow.i
    kind = flow.kind
    u_img = "img_x" if kind == "x" else "img_y"
    psi_u = _surface_to_adapted_mpoly(getattr(psi, u_img), kind)
    psi_z = _surface_to_adapted_mpoly(psi.img_z, kind)
    fwd = MPoly.var(3, Z) + MPoly(3, {(i + 1, 0, 1): 1})
    back = MPoly.var(3, Z) - MPoly(3, {(i + 1, 0, 1): 1})
    for coord in ("u", "z"):
        if coord == "u":
            pre = MPoly.var(3, U)  # u o F_{-t} = u
        else:
            pre = back  # z o F_{-t} = z - t u^(i+1)
        lhs = (psi_u * pre.diff(U) + psi_z * pre.diff(Z)).subs({Z: fwd})
        rhs = MPoly(3)
        for k, field in enumerate(terms):
            img = getattr(field, u_img) if coord == "u" else field.img_z
            t_k = MPoly(3, {(0, 0, k): 1})
            rhs = rhs + _surface_to_adapted_mpoly(img, kind) * t_k
        if lhs != rhs:
            return False
    return True
