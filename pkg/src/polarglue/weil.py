"""Weil polynomial data for abelian surfaces and elliptic curves over F_q.

A surface is stored as the coefficient pair (a1, a2) of
f(t) = t^4 + a1*t^3 + a2*t^2 + q*a1*t + q^2, an elliptic curve as the
trace b of f(t) = t^2 - b*t + q.  Validation, the real (degree-halved)
companion polynomial, base change, p-rank classification and the
geometric-simplicity test all use exact integer arithmetic only.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum
from math import isqrt

from . import polys


class ValidationError(ValueError):
    pass


class OutOfWeilBounds(ValidationError):
    """Raised when coefficients violate the root-location bounds.

    Carries every violated inequality, not just the first one.
    """

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(violations))


class ReducibleInput(ValidationError):
    pass


@dataclass(frozen=True)
class FieldParam:
    """A finite field F_q with q = p^a."""

    q: int
    p: int
    a: int

    def __post_init__(self):
        if self.a < 1 or self.p < 2 or _smallest_prime_factor(self.p) != self.p:
            raise ValueError(f"invalid field parameters p={self.p}, a={self.a}")
        if self.p ** self.a != self.q:
            raise ValueError(f"q={self.q} is not p^a for p={self.p}, a={self.a}")

    @property
    def is_square(self) -> bool:
        return self.a % 2 == 0

    @property
    def sqrt_q(self) -> int:
        """Integer square root of q; only meaningful when q is a square."""
        return self.p ** (self.a // 2)


def field_param(q: int) -> FieldParam:
    """Build a FieldParam from a prime-power cardinality."""
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    p = _smallest_prime_factor(q)
    a = 0
    n = q
    while n % p == 0:
        n //= p
        a += 1
    if n != 1:
        raise ValueError(f"q={q} is not a prime power")
    return FieldParam(q=q, p=p, a=a)


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return d
        d += 2
    return n


class PRank(Enum):
    ORDINARY = "ordinary"
    MIXED = "mixed"
    SUPERSINGULAR = "supersingular"


@dataclass(frozen=True)
class WeilSurface:
    """Validated quartic Weil polynomial t^4 + a1 t^3 + a2 t^2 + q a1 t + q^2."""

    field: FieldParam
    a1: int
    a2: int

    @property
    def q(self) -> int:
        return self.field.q

    def coefficients(self) -> list[int]:
        q = self.q
        return [q * q, q * self.a1, self.a2, self.a1, 1]

    def real_discriminant(self) -> int:
        """Discriminant a1^2 - 4*a2 + 8*q of the real companion polynomial."""
        return self.a1 * self.a1 - 4 * self.a2 + 8 * self.q


@dataclass(frozen=True)
class WeilElliptic:
    """Validated quadratic Weil polynomial t^2 - b t + q."""

    field: FieldParam
    b: int
    irreducible: bool

    @property
    def q(self) -> int:
        return self.field.q

    def coefficients(self) -> list[int]:
        return [self.q, -self.b, 1]

    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.q


@dataclass(frozen=True)
class RealWeilPolynomial:
    """Monic h(t) whose roots are x + q/x over the Weil numbers x.

    coefficients are listed by increasing power; degree is 1 or 2 here.
    """

    coefficients: tuple[int, ...]
    field: FieldParam

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def discriminant(self) -> int:
        if self.degree != 2:
            raise ValueError("discriminant defined for quadratic h only")
        c0, c1, _ = self.coefficients
        return c1 * c1 - 4 * c0


def sqrt_ge_zero(u: int, v: int, q: int) -> bool:
    """Exact test of u + v*sqrt(q) >= 0 by sign analysis and squaring."""
    if v >= 0:
        return u >= 0 or v * v * q >= u * u
    return u >= 0 and u * u >= v * v * q


def make_surface(field: FieldParam, a1: int, a2: int) -> WeilSurface:
    """Validate (a1, a2) as an abelian-surface Weil polynomial over F_q.

    The real companion t^2 + a1 t + (a2 - 2q) must have two real roots in
    [-2*sqrt(q), 2*sqrt(q)]; all conditions are checked without floats.
    """
    q = field.q
    violations = []
    if a1 * a1 > 16 * q:
        violations.append(f"a1^2 = {a1 * a1} exceeds 16q = {16 * q}")
    disc = a1 * a1 - 4 * a2 + 8 * q
    if disc < 0:
        violations.append(f"real companion has complex roots: a1^2 - 4 a2 + 8q = {disc} < 0")
    # h(2 sqrt q) = (a2 + 2q) + 2 a1 sqrt q, h(-2 sqrt q) = (a2 + 2q) - 2 a1 sqrt q
    if not sqrt_ge_zero(a2 + 2 * q, 2 * a1, q):
        violations.append("real companion negative at 2*sqrt(q): a2 < -2 a1 sqrt(q) - 2q")
    if not sqrt_ge_zero(a2 + 2 * q, -2 * a1, q):
        violations.append("real companion negative at -2*sqrt(q): a2 < 2 a1 sqrt(q) - 2q")
    if violations:
        raise OutOfWeilBounds(violations)
    return WeilSurface(field=field, a1=a1, a2=a2)


def make_elliptic(field: FieldParam, b: int) -> WeilElliptic:
    """Validate a trace b with b^2 <= 4q; irreducible means b^2 < 4q."""
    q = field.q
    if b * b > 4 * q:
        raise OutOfWeilBounds([f"b^2 = {b * b} exceeds 4q = {4 * q}"])
    return WeilElliptic(field=field, b=b, irreducible=b * b < 4 * q)


def real_weil(f: WeilSurface | WeilElliptic) -> RealWeilPolynomial:
    """Degree-halved totally real companion of a Weil polynomial."""
    if isinstance(f, WeilSurface):
        return RealWeilPolynomial(
            coefficients=(f.a2 - 2 * f.q, f.a1, 1), field=f.field
        )
    if isinstance(f, WeilElliptic):
        return RealWeilPolynomial(coefficients=(-f.b, 1), field=f.field)
    raise TypeError(f"expected WeilSurface or WeilElliptic, got {type(f).__name__}")


def eval_real(h: RealWeilPolynomial, r: int) -> int:
    return polys.evaluate(list(h.coefficients), r)


def power_sums(coeffs: list[int], count: int) -> list[int]:
    """Power sums p_1..p_count of the roots of a monic integer polynomial.

    Newton's identities for k <= deg, then the linear recurrence from the
    coefficients; returns a list with p_k at index k-1.
    """
    c = polys.normalize(coeffs)
    n = len(c) - 1
    if n < 1 or c[-1] != 1:
        raise ValueError("polynomial must be monic of positive degree")
    p: list[int] = []
    for k in range(1, count + 1):
        if k <= n:
            s = -k * c[n - k]
            for i in range(1, k):
                s -= c[n - i] * p[k - i - 1]
        else:
            s = 0
            for i in range(1, n + 1):
                s -= c[n - i] * p[k - i - 1]
        p.append(s)
    return p


def _elementary_from_power_sums(p: list[int], n: int) -> list[int]:
    """First n elementary symmetric functions from power sums p_1..p_n."""
    e = [1]
    for k in range(1, n + 1):
        s = 0
        for i in range(1, k + 1):
            s += (-1) ** (i - 1) * e[k - i] * p[i - 1]
        if s % k != 0:
            raise ArithmeticError("power sums do not come from an integral root system")
        e.append(s // k)
    return e[1:]


def _base_change_coeffs(coeffs: list[int], m: int) -> list[int]:
    """Monic polynomial whose roots are the m-th powers of the input roots."""
    n = polys.degree(coeffs)
    p = power_sums(coeffs, n * m)
    pm = [p[m * k - 1] for k in range(1, n + 1)]
    e = _elementary_from_power_sums(pm, n)
    out = [0] * (n + 1)
    out[n] = 1
    for k in range(1, n + 1):
        out[n - k] = (-1) ** k * e[k - 1]
    return out


def base_change(f: WeilSurface | WeilElliptic, m: int) -> WeilSurface | WeilElliptic:
    """Weil polynomial of the same variety over F_{q^m}."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return f
    ext = FieldParam(q=f.field.q ** m, p=f.field.p, a=f.field.a * m)
    c = _base_change_coeffs(f.coefficients(), m)
    if isinstance(f, WeilSurface):
        a1, a2 = c[3], c[2]
        if c[1] != ext.q * a1 or c[0] != ext.q * ext.q:
            raise ArithmeticError("base change lost the functional equation")
        return make_surface(ext, a1, a2)
    b = -c[1]
    if c[0] != ext.q:
        raise ArithmeticError("base change lost the functional equation")
    return make_elliptic(ext, b)


def classify_p_rank(f: WeilSurface | WeilElliptic) -> PRank:
    """Ordinary / mixed / supersingular from p-adic valuations of the coefficients."""
    p = f.field.p
    if isinstance(f, WeilElliptic):
        return PRank.SUPERSINGULAR if f.b % p == 0 else PRank.ORDINARY
    a = f.field.a
    if f.a2 % p != 0:
        return PRank.ORDINARY
    # all Newton slopes are 1/2 iff v_p(a1) >= a/2 and v_p(a2) >= a
    if _vp_at_least(f.a1, p, (a + 1) // 2) and _vp_at_least(f.a2, p, a):
        return PRank.SUPERSINGULAR
    return PRank.MIXED


def _vp_at_least(n: int, p: int, k: int) -> bool:
    if n == 0:
        return True
    return n % p ** k == 0


def squarefree_part(n: int) -> int:
    """Squarefree integer d0 with n = d0 * (square); sign preserved."""
    if n == 0:
        raise ValueError("n must be nonzero")
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            if e % 2:
                out *= d
        d = 3 if d == 2 else d + 2
    return sign * out * n


def fundamental_discriminant_of(d: int) -> int:
    """Fundamental discriminant of Q(sqrt(d)); 1 when d is a square."""
    d0 = squarefree_part(d)
    return d0 if d0 % 4 == 1 else 4 * d0


def fundamental_discriminant(B: WeilElliptic) -> int:
    """Discriminant of the imaginary quadratic endomorphism algebra of B."""
    if not B.irreducible:
        raise ReducibleInput(f"b^2 = 4q: t^2 - {B.b} t + {B.q} is a square")
    return fundamental_discriminant_of(B.discriminant())


def _weil_quartic_reducible(c3: int, c2: int, qm: int) -> bool:
    """Reducibility over Q of a quartic all of whose roots have |.| = sqrt(qm).

    Any rational root is then +-sqrt(qm) and any monic quadratic factor has
    constant term +-qm, so only finitely many factor shapes need checking.
    """
    s = isqrt(qm)
    if s * s == qm:
        # f(+-s) with c1 = qm*c3, c0 = qm^2
        for r in (s, -s):
            if r ** 4 + c3 * r ** 3 + c2 * r * r + qm * c3 * r + qm * qm == 0:
                return True
    # (t^2 + x t + qm)(t^2 + y t + qm): x + y = c3, x y = c2 - 2 qm
    d = c3 * c3 - 4 * (c2 - 2 * qm)
    if d >= 0 and isqrt(d) ** 2 == d:
        return True
    # (t^2 + x t - qm)(t^2 - x t - qm): forces c3 = 0, x^2 = -(c2 + 2 qm)
    if c3 == 0:
        e = -(c2 + 2 * qm)
        if e >= 0 and isqrt(e) ** 2 == e:
            return True
    return False


def is_irreducible(f: WeilSurface) -> bool:
    """Irreducibility of the quartic over Q, by the finite factor-shape search."""
    return not _weil_quartic_reducible(f.a1, f.a2, f.q)


GEOM_SIMPLE_SCAN_BOUND = 60


def is_geometrically_simple(
    f: WeilSurface, bound: int = GEOM_SIMPLE_SCAN_BOUND
) -> tuple[bool, int | None]:
    """Scan base changes for reducibility over Q.

    Returns (False, m) with the smallest m <= bound whose base change is
    reducible over the rationals (m = 1 means f itself), else (True, None).
    """
    return _geom_simple_cached(f.field.p, f.field.a, f.a1, f.a2, bound)


@functools.lru_cache(maxsize=None)
def _geom_simple_cached(
    p: int, a: int, a1: int, a2: int, bound: int
) -> tuple[bool, int | None]:
    q = p ** a
    if _weil_quartic_reducible(a1, a2, q):
        return (False, 1)
    ps = power_sums([q * q, q * a1, a2, a1, 1], 4 * bound)
    for m in range(2, bound + 1):
        pm = [ps[m * k - 1] for k in range(1, 5)]
        e = _elementary_from_power_sums(pm, 4)
        c3, c2 = -e[0], e[1]
        qm = q ** m
        if e[2] != qm * e[0] or e[3] != qm * qm:
            raise ArithmeticError("base change lost the functional equation")
        if _weil_quartic_reducible(c3, c2, qm):
            return (False, m)
    return (True, None)
