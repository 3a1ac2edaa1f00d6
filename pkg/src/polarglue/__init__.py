"""polarglue: decide, from Weil polynomial data alone, whether the isogeny
class of (geometrically simple abelian surface) x (elliptic curve) over a
finite field contains an abelian threefold with an irreducible principal
polarization, hence a genus-3 Jacobian up to quadratic twist."""

__version__ = "0.1.0"

from .enumeration import ScanRow, enumerate_elliptics, enumerate_surfaces, scan_pairs, trace_occurs
from .gluing import (
    Branch,
    GluingExponentReport,
    GluingVerdict,
    LambdaDivisibility,
    NoPPReason,
    Obstruction,
    PrimeFailure,
    VerdictKind,
    decide,
    divides_in_lambda,
    find_twisting_prime,
    gluing_exponent,
    hl2_obstruction,
    hl_obstruction,
    ss_quadratic_gluing_valuation,
)
from .localalg import (
    DoubleRoot,
    FactorPattern,
    IdealRecord,
    LocalPrimeReport,
    SplittingType,
    classify_prime_ideals,
    dedekind_is_maximal,
    double_root_condition,
    factor_mod_prime,
    is_exceptional,
    splitting_in_real_subfield,
)
from .weil import (
    FieldParam,
    OutOfWeilBounds,
    PRank,
    RealWeilPolynomial,
    ValidationError,
    WeilElliptic,
    WeilSurface,
    base_change,
    classify_p_rank,
    eval_real,
    field_param,
    fundamental_discriminant,
    is_geometrically_simple,
    make_elliptic,
    make_surface,
    real_weil,
)
