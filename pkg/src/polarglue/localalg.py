"""Mod-ell and mod-ell^2 analysis of Weil polynomials.

Factorization patterns over F_ell, the Dedekind maximality test for
Z_ell[t]/f, splitting of ell in the real quadratic subfield, the
double-root divisibility condition, exceptional primes, and the
symmetric / generating classification of the prime ideals of Z[F, V]
lying over ell != p.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isqrt
from typing import Sequence

from . import polys
from .oracle import kronecker_symbol
from .weil import (
    RealWeilPolynomial,
    WeilElliptic,
    WeilSurface,
    fundamental_discriminant_of,
    real_weil,
)


class CharacteristicPrime(ValueError):
    """ell equals the field characteristic, where F is not invertible."""


class ReducibleField(ValueError):
    """The real companion polynomial is reducible, so K+ is not a field."""


Factor = tuple[int, ...]


@dataclass(frozen=True)
class FactorPattern:
    """Irreducible factorization mod ell: (monic factor, multiplicity) pairs."""

    ell: int
    factors: tuple[tuple[Factor, int], ...]

    def expand(self) -> list[int]:
        out = [1]
        for g, mult in self.factors:
            for _ in range(mult):
                out = polys.mul_mod(out, list(g), self.ell)
        return out

    @property
    def is_squarefree(self) -> bool:
        return all(mult == 1 for _, mult in self.factors)


def factor_mod_prime(f: Sequence[int], ell: int) -> FactorPattern:
    """Factor a monic integer polynomial of degree <= 4 into irreducibles mod ell.

    Roots are found by exhaustive search; a rootless quartic is split (or not)
    by exhaustive monic quadratic trial division.
    """
    g = polys.monic_mod(list(f), ell)
    if polys.degree(g) > 4:
        raise ValueError("degree must be <= 4")
    counts: dict[Factor, int] = {}

    def record(factor: list[int], mult: int = 1):
        key = tuple(factor)
        counts[key] = counts.get(key, 0) + mult

    for r in range(ell):
        while polys.degree(g) >= 1 and polys.eval_mod(g, r, ell) == 0:
            g, rem = polys.divmod_monic_mod(g, [-r, 1], ell)
            if rem:
                raise ArithmeticError("root division left a remainder")
            record([(-r) % ell, 1])
    d = polys.degree(g)
    if d in (2, 3):
        record(g)
    elif d == 4:
        split = None
        for u in range(ell):
            for v in range(ell):
                quot, rem = polys.divmod_monic_mod(g, [v, u, 1], ell)
                if not rem:
                    split = ([v, u, 1], quot)
                    break
            if split:
                break
        if split:
            cand, cof = split
            if cand == cof:
                record(cand, 2)
            else:
                record(cand)
                record(cof)
        else:
            record(g)
    elif d == 1:
        raise ArithmeticError("a linear factor survived the root search")
    out = tuple(sorted(counts.items(), key=lambda kv: (len(kv[0]), kv[0])))
    return FactorPattern(ell=ell, factors=out)


def _dedekind_defect(f: Sequence[int], ell: int) -> dict[Factor, bool]:
    """Per repeated factor: True iff Z_ell[t]/f is maximal at that factor.

    Radical form of the Dedekind criterion: with f = rad * cof mod ell,
    T = (lift(rad) lift(cof) - f)/ell, the order is maximal at a repeated
    factor g exactly when g does not divide T mod ell.
    """
    f = polys.normalize(list(f))
    if not f or f[-1] != 1:
        raise ValueError("f must be monic")
    pattern = factor_mod_prime(f, ell)
    verdicts: dict[Factor, bool] = {}
    repeated = [(g, m) for g, m in pattern.factors if m >= 2]
    for g, _ in pattern.factors:
        verdicts[g] = True
    if not repeated:
        return verdicts
    rad = [1]
    cof = [1]
    for g, m in pattern.factors:
        rad = polys.mul(rad, list(g))
        for _ in range(m - 1):
            cof = polys.mul(cof, list(g))
    diff = polys.sub(polys.mul(rad, cof), list(f))
    if any(c % ell for c in diff):
        raise ArithmeticError("lifted factorization does not agree with f mod ell")
    t_bar = polys.reduce_mod([c // ell for c in diff], ell)
    for g, _ in repeated:
        _, rem = polys.divmod_monic_mod(t_bar, list(g), ell)
        verdicts[g] = bool(rem)
    return verdicts


def dedekind_is_maximal(f: Sequence[int], ell: int) -> bool:
    """True iff Z_ell[t]/f is the maximal order at ell (Dedekind criterion)."""
    return all(_dedekind_defect(f, ell).values())


class SplittingType(Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


def splitting_in_real_subfield(h: RealWeilPolynomial, ell: int) -> SplittingType:
    """Splitting of ell in the maximal order of K+ = Q[t]/h (h quadratic).

    This is the splitting in the ring of integers, read off the Kronecker
    symbol of the fundamental discriminant; the order Z[t]/h itself may be
    smaller at ell.
    """
    if h.degree != 2:
        raise ValueError("h must be quadratic")
    disc = h.discriminant()
    if disc >= 0 and isqrt(disc) ** 2 == disc:
        raise ReducibleField(f"disc(h) = {disc} is a perfect square")
    symbol = kronecker_symbol(fundamental_discriminant_of(disc), ell)
    if symbol == 1:
        return SplittingType.SPLIT
    if symbol == -1:
        return SplittingType.INERT
    return SplittingType.RAMIFIED


def is_exceptional(f: WeilSurface, ell: int) -> tuple[bool, Factor | None]:
    """Test whether f is congruent to the square of an irreducible quadratic
    mod ell^2 while ell stays inert in the real subfield.

    Returns the square root t^2 - s t + q (coefficients mod ell^2) as witness.
    A surface whose real companion is reducible over Q has no quadratic real
    subfield and is never exceptional.
    """
    if ell == f.field.p:
        raise CharacteristicPrime(f"ell = {ell} is the characteristic")
    disc = f.real_discriminant()
    if disc % (ell * ell) != 0:
        return (False, None)
    if isqrt(disc) ** 2 == disc:
        return (False, None)
    h = real_weil(f)
    if splitting_in_real_subfield(h, ell) is not SplittingType.INERT:
        return (False, None)
    q = f.q
    ell2 = ell * ell
    if ell == 2:
        # squares mod 4 only depend on the residue mod 2, so f is a square
        # mod 4 iff it matches (t^2 + t + 1)^2 coefficientwise
        if [c % 4 for c in f.coefficients()] != [1, 2, 3, 2, 1]:
            return (False, None)
        s = 1
    else:
        s = (-f.a1 * pow(2, -1, ell2)) % ell2
        if kronecker_symbol(s * s - 4 * q, ell) != -1:
            return (False, None)
    witness = ((q % ell2), (-s) % ell2, 1)
    square = polys.mul_mod(list(witness), list(witness), ell2)
    if square != polys.reduce_mod(f.coefficients(), ell2):
        raise ArithmeticError("witness square does not reproduce f mod ell^2")
    return (True, witness)


class DoubleRoot(Enum):
    NO_DOUBLE_ROOT = "no_double_root"
    SATISFIED = "satisfied"
    FAILS = "fails"


def double_root_condition(B: WeilElliptic, ell: int) -> tuple[DoubleRoot, int | None]:
    """If f_B is a square (t - t1)^2 mod ell, test whether ell^2 | f_B(t1).

    The answer does not depend on the lift of t1 since f_B'(t1) = 0 mod ell.
    """
    if ell == B.field.p:
        raise CharacteristicPrime(f"ell = {ell} is the characteristic")
    b, q = B.b, B.q
    if ell == 2:
        if b % 2 != 0:
            return (DoubleRoot.NO_DOUBLE_ROOT, None)
        t1 = q % 2
    else:
        if (b * b - 4 * q) % ell != 0:
            return (DoubleRoot.NO_DOUBLE_ROOT, None)
        t1 = b * pow(2, -1, ell) % ell
    value = t1 * t1 - b * t1 + q
    if value % (ell * ell) == 0:
        return (DoubleRoot.SATISFIED, t1)
    return (DoubleRoot.FAILS, t1)


def q_reciprocal(g: Factor, q: int, ell: int) -> Factor:
    """Monic image of g under x -> q/x on roots: t^deg g * g(q/t) / g(0)."""
    d = len(g) - 1
    flipped = [g[d - j] * pow(q, d - j, ell) % ell for j in range(d + 1)]
    return tuple(polys.monic_mod(flipped, ell))


def _trace_minpoly_degree(g: Factor, q: int, ell: int) -> int:
    """Degree over F_ell of beta = x + q/x in the field F_ell[x]/(g)."""
    d = len(g) - 1
    if d == 1:
        return 1
    g_list = list(g)
    inv_g0 = pow(g[0], -1, ell)
    # x^{-1} = -g0^{-1} (g1 + g2 x + ... + x^{d-1})
    x_inv = [(-inv_g0 * g_list[i + 1]) % ell for i in range(d)]
    beta = [(q * c) % ell for c in x_inv]
    beta[1] = (beta[1] + 1) % ell
    basis: list[list[int]] = []

    def reduce_vec(vec: list[int]) -> list[int]:
        v = list(vec)
        for w in basis:
            piv = next(i for i, c in enumerate(w) if c)
            if v[piv]:
                c = v[piv] * pow(w[piv], -1, ell) % ell
                v = [(a - c * b) % ell for a, b in zip(v, w)]
        return v

    power = [1] + [0] * (d - 1)
    for k in range(d + 1):
        vred = reduce_vec(power)
        if not any(vred):
            return k
        basis.append(vred)
        prod = polys.mul_mod(power, beta, ell)
        _, power = polys.divmod_monic_mod(prod, g_list, ell)
        power = (power + [0] * d)[:d]
    return d


@dataclass(frozen=True)
class IdealRecord:
    """Classification of one maximal ideal of Z[F, V] over ell != p."""

    factor: Factor
    multiplicity: int
    symmetric: bool
    generating: bool
    maximal_at: bool
    exceptional: bool
    conjugate_partner: Factor | None


@dataclass(frozen=True)
class LocalPrimeReport:
    ell: int
    factor_pattern: FactorPattern
    h_pattern: FactorPattern
    ideals: tuple[IdealRecord, ...]


def classify_prime_ideals(f: WeilSurface, ell: int) -> LocalPrimeReport:
    """Full per-ideal report at ell != p.

    Away from p the Frobenius order is Z_ell[t]/f, so maximal ideals
    correspond to irreducible factors of f mod ell; the involution pairs a
    factor with its q-reciprocal, and a symmetric factor is generating when
    its degree doubles the degree of x + q/x below it.
    """
    if ell == f.field.p:
        raise CharacteristicPrime(f"ell = {ell} is the characteristic")
    q = f.q
    pattern = factor_mod_prime(f.coefficients(), ell)
    h_pattern = factor_mod_prime(list(real_weil(f).coefficients), ell)
    maximality = _dedekind_defect(f.coefficients(), ell)
    exceptional, witness = is_exceptional(f, ell)
    witness_mod_ell = tuple(c % ell for c in witness) if witness else None
    records = []
    for g, mult in pattern.factors:
        partner = q_reciprocal(g, q, ell)
        symmetric = partner == g
        generating = symmetric and (len(g) - 1) == 2 * _trace_minpoly_degree(g, q, ell)
        records.append(
            IdealRecord(
                factor=g,
                multiplicity=mult,
                symmetric=symmetric,
                generating=generating,
                maximal_at=maximality[g],
                exceptional=exceptional and g == witness_mod_ell,
                conjugate_partner=None if symmetric else partner,
            )
        )
    return LocalPrimeReport(
        ell=ell, factor_pattern=pattern, h_pattern=h_pattern, ideals=tuple(records)
    )
