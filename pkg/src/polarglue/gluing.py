"""The verdict engine: gluing exponents, obstruction tests for
ordinary x supersingular products, the twisting-prime search, and the
three-way decision on whether the isogeny class of (surface x elliptic)
contains an abelian threefold with an irreducible principal polarization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from . import oracle, polys
from .localalg import (
    CharacteristicPrime,
    DoubleRoot,
    SplittingType,
    double_root_condition,
    is_exceptional,
)
from .weil import (
    PRank,
    WeilElliptic,
    WeilSurface,
    classify_p_rank,
    eval_real,
    fundamental_discriminant,
    is_geometrically_simple,
    is_irreducible,
    real_weil,
)


class InseparableInput(ValueError):
    pass


class NotASquare(ValueError):
    pass


class NotOrdinary(ValueError):
    pass


class SquareField(ValueError):
    pass


class SmallPrime(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


class NotGeometricallySimple(ValueError):
    pass


class ReducibleEllipticInput(ValueError):
    pass


@dataclass(frozen=True)
class GluingExponentReport:
    """Prime-to-p part of the gluing exponent, with the p-part bounded.

    The prime-to-p part is exact; the p-part is only an upper bound unless
    the ordinary x supersingular case pins it to zero.
    """

    prime_to_p_part: int
    p_part_upper_bound: int
    exact: bool


def gluing_exponent(A: WeilSurface, B: WeilElliptic) -> GluingExponentReport:
    """e(A, B) = |h(b)| up to a power of p, for separable inputs."""
    if not B.irreducible:
        raise InseparableInput("elliptic trace satisfies b^2 = 4q")
    if not is_irreducible(A):
        raise InseparableInput("surface Weil polynomial is reducible over Q")
    hb = eval_real(real_weil(A), B.b)
    if hb == 0:
        raise InseparableInput("h(b) = 0: the inputs share a Weil number")
    p = A.field.p
    n = abs(hb)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    exact = v == 0 or (
        classify_p_rank(A) is PRank.ORDINARY
        and classify_p_rank(B) is PRank.SUPERSINGULAR
    )
    return GluingExponentReport(
        prime_to_p_part=n, p_part_upper_bound=0 if exact else v, exact=exact
    )


def _check_separable_surface(A: WeilSurface, s: int):
    h = real_weil(A)
    if (
        A.real_discriminant() == 0
        or eval_real(h, 2 * s) == 0
        or eval_real(h, -2 * s) == 0
    ):
        raise InseparableInput("surface Weil polynomial has a repeated root")


def ss_quadratic_gluing_valuation(A: WeilSurface, s: int, ell: int) -> int:
    """Largest n with ell^(2n) | f(s) and ell^n | f'(s), for square q = s^2.

    This is the ell-adic gluing depth against the supersingular curve with
    Weil polynomial (t - s)^2.
    """
    q = A.q
    if s * s != q:
        raise NotASquare(f"s^2 = {s * s} differs from q = {q}")
    if ell == A.field.p:
        raise CharacteristicPrime(f"ell = {ell} is the characteristic")
    _check_separable_surface(A, s)
    f = A.coefficients()
    f_s = polys.evaluate(f, s)
    fprime_s = polys.evaluate(polys.derivative(f), s)
    n = 0
    while f_s % ell ** (2 * (n + 1)) == 0 and fprime_s % ell ** (n + 1) == 0:
        n += 1
    return n


class Obstruction(Enum):
    OBSTRUCTED = "obstructed"
    NO_CONCLUSION = "no_conclusion"


def hl_obstruction(A: WeilSurface, s: int, n: int) -> Obstruction:
    """Squarefree h(2s) blocks any irreducible principal polarization on
    (ordinary A) x (supersingular elliptic with trace 2s)^n, q a square."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not A.field.is_square or s * s != A.q:
        raise NotASquare(f"q = {A.q} is not the square of s = {s}")
    if classify_p_rank(A) is not PRank.ORDINARY:
        raise NotOrdinary("the surface must be ordinary")
    h2s = eval_real(real_weil(A), 2 * s)
    if oracle.is_squarefree(h2s):
        return Obstruction.OBSTRUCTED
    return Obstruction.NO_CONCLUSION


@dataclass(frozen=True)
class LambdaDivisibility:
    """Divisibility of h(2 sqrt q) = u + v sqrt(q) by ell in Z_ell[t]/(t^2 - q).

    When t^2 - q splits mod ell divisibility means ell | u + v*s' for one of
    the two roots s'; when it is inert it means ell | u and ell | v.
    divides_square is the same test mod ell^2 (with Hensel-lifted roots).
    """

    ell: int
    u: int
    v: int
    divides: bool
    divides_square: bool
    splitting: SplittingType


def divides_in_lambda(A: WeilSurface, ell: int) -> LambdaDivisibility:
    """Lambda_ell divisibility data for h(2s) = (a2 + 2q) + 2*a1*sqrt(q)."""
    if A.field.is_square:
        raise SquareField("q must not be a square")
    if ell == 2:
        raise SmallPrime("ell = 2 ramifies in Z[t]/(t^2 - q)")
    if ell == A.field.p:
        raise CharacteristicPrime(f"ell = {ell} is the characteristic")
    q = A.q
    u = A.a2 + 2 * q
    v = 2 * A.a1
    ell2 = ell * ell
    symbol = oracle.kronecker_symbol(q, ell)
    if symbol == 1:
        root = next(r for r in range(1, ell) if r * r % ell == q % ell)
        divides = (u + v * root) % ell == 0 or (u - v * root) % ell == 0
        divides_square = False
        for r0 in (root, ell - root):
            lift = (r0 + ell * ((q - r0 * r0) // ell * pow(2 * r0, -1, ell))) % ell2
            if (q - lift * lift) % ell2 != 0:
                raise ArithmeticError("Hensel lift failed")
            if (u + v * lift) % ell2 == 0:
                divides_square = True
        return LambdaDivisibility(
            ell=ell, u=u, v=v, divides=divides,
            divides_square=divides and divides_square,
            splitting=SplittingType.SPLIT,
        )
    if symbol == -1:
        return LambdaDivisibility(
            ell=ell, u=u, v=v,
            divides=u % ell == 0 and v % ell == 0,
            divides_square=u % ell2 == 0 and v % ell2 == 0,
            splitting=SplittingType.INERT,
        )
    raise ArithmeticError(f"t^2 - q ramifies at {ell} although ell != p")


def hl2_obstruction(A: WeilSurface, strict: bool = False) -> Obstruction:
    """Obstruction against (ordinary A) x (simple supersingular surface),
    q not a square.

    Obstructed when every prime dividing h(2s) in the Lambda_ell sense is odd
    and does so to the first power only.  With strict=True the test refuses
    to conclude whenever any prime divisor exists at all.
    """
    if A.field.is_square:
        raise SquareField("q must not be a square")
    if classify_p_rank(A) is not PRank.ORDINARY:
        raise NotOrdinary("the surface must be ordinary")
    q = A.q
    u = A.a2 + 2 * q
    v = 2 * A.a1
    norm = u * u - q * v * v
    if norm == 0:
        raise ArithmeticError("norm of h(2s) vanishes for an ordinary surface")
    factors = oracle.factor_integer(norm)
    if strict and factors.factors:
        return Obstruction.NO_CONCLUSION
    for ell in factors.primes:
        if ell == 2:
            return Obstruction.NO_CONCLUSION
        if ell == A.field.p:
            raise ArithmeticError("p divides the norm for an ordinary surface")
        lam = divides_in_lambda(A, ell)
        if not lam.divides:
            raise ArithmeticError(f"{ell} divides the norm but not h(2s) in Lambda")
        if lam.divides_square:
            return Obstruction.NO_CONCLUSION
    return Obstruction.OBSTRUCTED


def _is_square_mod_prime_power(r: int, ell: int, n: int) -> bool:
    if ell == 2:
        if n == 1:
            return True
        if n == 2:
            return r % 4 == 1
        return r % 8 == 1
    return oracle.kronecker_symbol(r, ell) == 1


def find_twisting_prime(
    delta: int, ell: int, n: int = 1, bound: int = 1_000_000
) -> int | None:
    """Smallest prime r' coprime to ell*delta that splits in the imaginary
    quadratic field of discriminant delta and is not a square mod ell^n.

    Returns None if no such prime appears below the search bound.
    """
    if delta >= 0 or delta % 4 not in (0, 1):
        raise ValueError(f"delta = {delta} is not an imaginary quadratic discriminant")
    if delta == -ell:
        raise HypothesisViolated(f"discriminant equals -ell = {-ell}")
    if ell == 2 and n < 2:
        raise HypothesisViolated("n > 1 is required when ell = 2")
    r = 2
    while r <= bound:
        if (
            (ell * delta) % r != 0
            and oracle.kronecker_symbol(delta, r) == 1
            and not _is_square_mod_prime_power(r, ell, n)
        ):
            return r
        r += 1
        while r <= bound and not oracle.is_probable_prime(r):
            r += 1
    return None


class VerdictKind(Enum):
    IRREDUCIBLE_PP_EXISTS = "irreducible_pp_exists"
    NO_IRREDUCIBLE_PP = "no_irreducible_pp"
    INCONCLUSIVE = "inconclusive"


class Branch(Enum):
    GENERIC = "generic"
    REDUCIBLE_MOD_L = "reducible_mod_l"
    EXCEPTIONAL = "exceptional"
    P_BRANCH = "p_branch"


class NoPPReason(Enum):
    HB_UNIT = "hb_unit"
    HL_OBSTRUCTION = "hl_obstruction"
    HL2_OBSTRUCTION = "hl2_obstruction"


@dataclass(frozen=True)
class PrimeFailure:
    ell: int
    reasons: tuple[str, ...]


@dataclass(frozen=True)
class GluingVerdict:
    kind: VerdictKind
    witness_ell: int | None = None
    branch: Branch | None = None
    reason: NoPPReason | None = None
    failures: tuple[PrimeFailure, ...] = field(default_factory=tuple)
    jacobian_text: str = ""


def _jacobian_text(ell: int) -> str:
    return (
        "the isogeny class contains an abelian threefold with an irreducible "
        f"principal polarization (glued at ell = {ell}); that threefold or its "
        "quadratic twist is the Jacobian of a smooth curve of genus 3"
    )


def decide(A: WeilSurface, B: WeilElliptic) -> GluingVerdict:
    """Three-way verdict for the isogeny class of A x B.

    Iterates over the prime divisors of h(b) in increasing order and returns
    the first prime satisfying all gluing conditions; primes away from p need
    Delta_B != -ell, a non-failing double-root test, and ordinarity whenever
    ell is exceptional, while ell = p follows the ordinary / supersingular
    case split.  If no prime qualifies the verdict is Inconclusive with a
    per-prime failure log.

    A surface that fails the geometric-simplicity scan is rejected whenever
    the verdict would assert anything; an Inconclusive outcome asserts
    nothing, so it is returned as is.
    """
    if not B.irreducible:
        raise ReducibleEllipticInput("f_B must be irreducible: b^2 < 4q")
    simple, witness_m = is_geometrically_simple(A)

    def require_simple():
        if not simple:
            raise NotGeometricallySimple(
                f"surface splits after base change to F_(q^{witness_m})"
            )

    p = A.field.p
    hb = eval_real(real_weil(A), B.b)
    if hb == 0:
        require_simple()
        raise ArithmeticError("h(b) = 0 for a geometrically simple surface")
    if abs(hb) == 1:
        require_simple()
        return GluingVerdict(kind=VerdictKind.NO_IRREDUCIBLE_PP, reason=NoPPReason.HB_UNIT)
    delta_b = fundamental_discriminant(B)
    a_rank = classify_p_rank(A)
    b_rank = classify_p_rank(B)
    failures: list[PrimeFailure] = []
    for ell in oracle.factor_integer(hb).primes:
        reasons: list[str] = []
        branch: Branch | None = None
        if ell == p:
            if b_rank is PRank.ORDINARY or a_rank is PRank.MIXED:
                branch = Branch.P_BRANCH
            else:
                reasons.append(
                    "p-branch needs an ordinary elliptic curve, or a "
                    "supersingular one against a mixed surface"
                )
        else:
            if delta_b == -ell:
                reasons.append(f"Delta_B = {delta_b} equals -ell")
            status, t1 = double_root_condition(B, ell)
            if status is DoubleRoot.FAILS:
                value = t1 * t1 - B.b * t1 + B.q
                reasons.append(
                    f"double root t1 = {t1}: {ell}^2 does not divide f_B(t1) = {value}"
                )
            exceptional, _ = is_exceptional(A, ell)
            if exceptional and a_rank is not PRank.ORDINARY:
                reasons.append(
                    f"{ell} is exceptional but the surface is {a_rank.value}"
                )
            if not reasons:
                if exceptional:
                    branch = Branch.EXCEPTIONAL
                elif status is DoubleRoot.SATISFIED:
                    branch = Branch.REDUCIBLE_MOD_L
                else:
                    branch = Branch.GENERIC
        if branch is not None:
            require_simple()
            return GluingVerdict(
                kind=VerdictKind.IRREDUCIBLE_PP_EXISTS,
                witness_ell=ell,
                branch=branch,
                jacobian_text=_jacobian_text(ell),
            )
        failures.append(PrimeFailure(ell=ell, reasons=tuple(reasons)))
    return GluingVerdict(kind=VerdictKind.INCONCLUSIVE, failures=tuple(failures))
