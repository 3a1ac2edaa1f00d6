import math

from hypothesis import assume, strategies as st

import polarglue as pg

PRIME_POWERS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27)
FIELDS = tuple(pg.field_param(q) for q in PRIME_POWERS)
SMALL_FIELDS = tuple(pg.field_param(q) for q in (2, 3, 4, 5, 7, 9))


@st.composite
def surfaces(draw, fields=FIELDS):
    """A valid WeilSurface drawn uniformly inside the exact coefficient bounds."""
    field = draw(st.sampled_from(fields))
    q = field.q
    bound = math.isqrt(16 * q)
    a1 = draw(st.integers(min_value=-bound, max_value=bound))
    m = math.isqrt(4 * a1 * a1 * q)
    low = (m if m * m == 4 * a1 * a1 * q else m + 1) - 2 * q
    high = a1 * a1 // 4 + 2 * q
    assume(low <= high)
    a2 = draw(st.integers(min_value=low, max_value=high))
    return pg.make_surface(field, a1, a2)


@st.composite
def elliptics(draw, fields=FIELDS, irreducible_only=False):
    field = draw(st.sampled_from(fields))
    bound = math.isqrt(4 * field.q)
    b = draw(st.integers(min_value=-bound, max_value=bound))
    e = pg.make_elliptic(field, b)
    if irreducible_only:
        assume(e.irreducible)
    return e


ODD_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23)
PRIMES = (2,) + ODD_PRIMES
