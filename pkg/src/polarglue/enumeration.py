"""Exhaustive generation of admissible Weil data over a fixed F_q and
batch application of the verdict engine."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import isqrt

from .gluing import GluingVerdict, decide
from .localalg import is_exceptional
from .oracle import FactorizationTimeout, factor_integer
from .weil import (
    FieldParam,
    PRank,
    WeilElliptic,
    WeilSurface,
    classify_p_rank,
    eval_real,
    is_geometrically_simple,
    make_elliptic,
    make_surface,
    real_weil,
)


def enumerate_surfaces(
    field: FieldParam,
    ordinary: bool | None = None,
    geometrically_simple: bool | None = None,
) -> list[WeilSurface]:
    """All (a1, a2) passing the root-location bounds, in lexicographic order.

    Filters are tri-state: None keeps everything, True/False select the
    matching class.  Every candidate goes back through make_surface.
    """
    q = field.q
    out = []
    bound1 = isqrt(16 * q)
    for a1 in range(-bound1, bound1 + 1):
        # 2|a1|sqrt(q) - 2q <= a2 <= a1^2/4 + 2q, with an exact ceiling
        m = isqrt(4 * a1 * a1 * q)
        low = (m if m * m == 4 * a1 * a1 * q else m + 1) - 2 * q
        high = a1 * a1 // 4 + 2 * q
        for a2 in range(low, high + 1):
            f = make_surface(field, a1, a2)
            if ordinary is not None:
                if (classify_p_rank(f) is PRank.ORDINARY) != ordinary:
                    continue
            if geometrically_simple is not None:
                if is_geometrically_simple(f)[0] != geometrically_simple:
                    continue
            out.append(f)
    return out


def trace_occurs(field: FieldParam, b: int) -> bool:
    """Classical occurrence conditions for elliptic traces over F_q.

    This is standard Honda-Tate / Waterhouse data, not something derived
    here: traces prime to p always occur, and the p-divisible ones occur
    exactly in the listed square / non-square configurations.
    """
    q, p, a = field.q, field.p, field.a
    if b * b > 4 * q:
        return False
    if b % p != 0:
        return True
    if a % 2 == 0:
        s = field.sqrt_q
        if b in (2 * s, -2 * s):
            return True
        if b in (s, -s) and p % 3 != 1:
            return True
        if b == 0 and p % 4 != 1:
            return True
        return False
    if b == 0:
        return True
    if p in (2, 3) and b * b == p ** (a + 1):
        return True
    return False


def enumerate_elliptics(
    field: FieldParam,
    irreducible: bool | None = None,
    admissible: bool | None = None,
) -> list[WeilElliptic]:
    """All traces b with b^2 <= 4q, optionally filtered, in increasing order."""
    q = field.q
    out = []
    for b in range(-isqrt(4 * q), isqrt(4 * q) + 1):
        e = make_elliptic(field, b)
        if irreducible is not None and e.irreducible != irreducible:
            continue
        if admissible is not None and trace_occurs(field, b) != admissible:
            continue
        out.append(e)
    return out


@dataclass(frozen=True)
class ScanRow:
    surface: WeilSurface
    elliptic: WeilElliptic
    h_b: int
    verdict: GluingVerdict | None
    surface_p_rank: PRank
    elliptic_p_rank: PRank
    geometrically_simple: bool
    exceptional_primes: tuple[int, ...]
    error: str | None = None


def _decide_row(pair: tuple[WeilSurface, WeilElliptic]) -> ScanRow:
    A, B = pair
    h_b = eval_real(real_weil(A), B.b)
    verdict = None
    error = None
    exceptional: tuple[int, ...] = ()
    try:
        verdict = decide(A, B)
        exceptional = tuple(
            ell
            for ell in factor_integer(h_b).primes
            if ell != A.field.p and is_exceptional(A, ell)[0]
        )
    except FactorizationTimeout as exc:
        error = str(exc)
    return ScanRow(
        surface=A,
        elliptic=B,
        h_b=h_b,
        verdict=verdict,
        surface_p_rank=classify_p_rank(A),
        elliptic_p_rank=classify_p_rank(B),
        geometrically_simple=True,
        exceptional_primes=exceptional,
        error=error,
    )


def scan_pairs(field: FieldParam, jobs: int = 1) -> list[ScanRow]:
    """Decide every (geometrically simple surface) x (irreducible elliptic)
    pair over F_q; rows come back in lexicographic (a1, a2, b) order
    regardless of the degree of parallelism."""
    surfaces = enumerate_surfaces(field, geometrically_simple=True)
    elliptics = enumerate_elliptics(field, irreducible=True)
    pairs = [(A, B) for A in surfaces for B in elliptics]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_decide_row, pairs))
    else:
        rows = [_decide_row(pair) for pair in pairs]
    return rows
