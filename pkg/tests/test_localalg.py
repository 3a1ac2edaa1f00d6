import pytest
from hypothesis import given, settings, strategies as st

import polarglue as pg
from polarglue import polys
from polarglue.localalg import (
    CharacteristicPrime,
    DoubleRoot,
    ReducibleField,
    SplittingType,
    _dedekind_defect,
    classify_prime_ideals,
    dedekind_is_maximal,
    double_root_condition,
    factor_mod_prime,
    is_exceptional,
    q_reciprocal,
    splitting_in_real_subfield,
)
from polarglue.weil import fundamental_discriminant_of

from conftest import ODD_PRIMES, PRIMES, surfaces, elliptics

F2 = pg.field_param(2)
F7 = pg.field_param(7)
F11 = pg.field_param(11)
F13 = pg.field_param(13)


def test_factor_mod_prime_examples():
    # t^4 + t^3 + t^2 + 2t + 4 = (t-1)(t+1)(t^2+t+2) mod 3
    pat = factor_mod_prime([4, 2, 1, 1, 1], 3)
    assert pat.factors == (((1, 1), 1), ((2, 1), 1), ((2, 1, 1), 1))
    assert factor_mod_prime([2, 0, 1], 3).factors == (((1, 1), 1), ((2, 1), 1))
    assert factor_mod_prime([13, -4, 1], 3).factors == (((1, 1), 2),)


def test_factor_mod_prime_irreducible_quartic():
    pat = factor_mod_prime([4, 2, 1, 1, 1], 5)
    assert pat.factors == (((4, 2, 1, 1, 1), 1),)


def test_factor_mod_prime_quadratic_square():
    # (t^2 + 1)^2 mod 3
    f = polys.mul([1, 0, 1], [1, 0, 1])
    assert factor_mod_prime(f, 3).factors == (((1, 0, 1), 2),)


@given(surfaces(), st.sampled_from(PRIMES))
@settings(max_examples=200)
def test_factorization_multiplies_back(f, ell):
    pat = factor_mod_prime(f.coefficients(), ell)
    assert pat.expand() == polys.reduce_mod(f.coefficients(), ell)
    assert sum((len(g) - 1) * m for g, m in pat.factors) == 4


def test_dedekind_examples():
    assert dedekind_is_maximal([3, 0, 1], 3) is True
    assert dedekind_is_maximal([-18, 0, 1], 3) is False
    assert dedekind_is_maximal([2, 1, 1], 3) is True


def test_dedekind_two_distinct_repeated_factors():
    # two repeated linear factors mod 3: +9 keeps the order singular, +3 not
    base = polys.mul(polys.mul([-1, 1], [-1, 1]), polys.mul([1, 1], [1, 1]))
    assert dedekind_is_maximal(polys.add(base, [9]), 3) is False
    assert dedekind_is_maximal(polys.add(base, [3]), 3) is True


def _quadratic_maximal_by_discriminant(c: int, d: int, ell: int) -> bool:
    """Independent oracle: index^2 = disc / fundamental-disc, test v_ell."""
    disc = c * c - 4 * d
    if disc == 0:
        return False
    index_sq = disc // fundamental_discriminant_of(disc)
    index = 1
    while index * index < index_sq:
        index += 1
    assert index * index == index_sq
    return index % ell != 0


@given(st.integers(min_value=-50, max_value=50),
       st.integers(min_value=-50, max_value=50),
       st.sampled_from((2, 3, 5, 7, 11, 13)))
@settings(max_examples=300)
def test_dedekind_matches_discriminant_oracle(c, d, ell):
    assert dedekind_is_maximal([d, c, 1], ell) == _quadratic_maximal_by_discriminant(c, d, ell)


def test_splitting_examples():
    h18 = pg.RealWeilPolynomial((-18, 0, 1), F2)
    h13 = pg.RealWeilPolynomial((-3, 1, 1), F2)
    assert splitting_in_real_subfield(h18, 3) is SplittingType.INERT
    assert splitting_in_real_subfield(h13, 3) is SplittingType.SPLIT
    assert splitting_in_real_subfield(h18, 2) is SplittingType.RAMIFIED
    with pytest.raises(ReducibleField):
        splitting_in_real_subfield(pg.RealWeilPolynomial((0, 0, 1), F2), 3)


def test_double_root_examples():
    assert double_root_condition(pg.make_elliptic(F13, 4), 3) == (DoubleRoot.SATISFIED, 2)
    assert double_root_condition(pg.make_elliptic(F7, 5), 3) == (DoubleRoot.FAILS, 1)
    assert double_root_condition(pg.make_elliptic(F2, 0), 3) == (DoubleRoot.NO_DOUBLE_ROOT, None)
    with pytest.raises(CharacteristicPrime):
        double_root_condition(pg.make_elliptic(F2, 0), 2)


@given(elliptics(irreducible_only=True), st.sampled_from(PRIMES),
       st.integers(min_value=-8, max_value=8))
@settings(max_examples=200)
def test_double_root_well_defined_over_lifts(B, ell, k):
    """The ell^2-divisibility of f_B(t1) cannot depend on the lift of t1."""
    if ell == B.field.p:
        return
    status, t1 = double_root_condition(B, ell)
    if status is DoubleRoot.NO_DOUBLE_ROOT:
        return
    lifted = t1 + ell * k
    v0 = (t1 * t1 - B.b * t1 + B.q) % (ell * ell)
    v1 = (lifted * lifted - B.b * lifted + B.q) % (ell * ell)
    assert v0 == v1


def test_is_exceptional_examples():
    A11 = pg.make_surface(F11, -2, 5)
    flag, witness = is_exceptional(A11, 3)
    assert flag
    assert witness == (11 % 9, (-1) % 9, 1)  # t^2 - t + 11 mod 9
    A2 = pg.make_surface(F2, 1, 1)
    assert is_exceptional(A2, 3) == (False, None)
    assert is_exceptional(A2, 5) == (False, None)
    with pytest.raises(CharacteristicPrime):
        is_exceptional(A2, 2)


def test_is_exceptional_at_two():
    A9 = pg.make_surface(pg.field_param(9), 2, -1)
    flag, witness = is_exceptional(A9, 2)
    assert flag
    square = polys.mul_mod(list(witness), list(witness), 4)
    assert square == polys.reduce_mod(A9.coefficients(), 4)


@given(surfaces(), st.sampled_from(ODD_PRIMES))
@settings(max_examples=200)
def test_exceptional_implies_square_discriminant_divisor(f, ell):
    if ell == f.field.p:
        return
    flag, witness = is_exceptional(f, ell)
    if not flag:
        return
    assert f.real_discriminant() % (ell * ell) == 0
    assert splitting_in_real_subfield(pg.real_weil(f), ell) is SplittingType.INERT
    # the witness really is a square root of f mod ell^2 with constant q
    assert witness[0] == f.q % (ell * ell)
    square = polys.mul_mod(list(witness), list(witness), ell * ell)
    assert square == polys.reduce_mod(f.coefficients(), ell * ell)


def test_classify_prime_ideals_examples():
    rep = classify_prime_ideals(pg.make_surface(F2, 1, 1), 3)
    by_factor = {r.factor: r for r in rep.ideals}
    assert by_factor[(1, 1)].conjugate_partner == (2, 1)
    assert by_factor[(2, 1)].conjugate_partner == (1, 1)
    quad = by_factor[(2, 1, 1)]
    assert quad.symmetric and quad.generating and quad.maximal_at
    assert not quad.exceptional
    assert rep.h_pattern.factors == (((0, 1), 1), ((1, 1), 1))

    rep11 = classify_prime_ideals(pg.make_surface(F11, -2, 5), 3)
    assert len(rep11.ideals) == 1
    ideal = rep11.ideals[0]
    assert ideal.factor == (2, 2, 1) and ideal.multiplicity == 2
    assert ideal.symmetric and ideal.generating and ideal.exceptional
    assert not ideal.maximal_at

    rep5 = classify_prime_ideals(pg.make_surface(F2, 1, 1), 5)
    assert len(rep5.ideals) == 1
    ideal5 = rep5.ideals[0]
    assert len(ideal5.factor) == 5
    assert ideal5.symmetric and ideal5.generating and ideal5.maximal_at
    assert not ideal5.exceptional


def test_classify_rejects_characteristic():
    with pytest.raises(CharacteristicPrime):
        classify_prime_ideals(pg.make_surface(F2, 1, 1), 2)


@given(surfaces(), st.sampled_from(PRIMES))
@settings(max_examples=200)
def test_involution_pairs_factors(f, ell):
    if ell == f.field.p:
        return
    rep = classify_prime_ideals(f, ell)
    factors = {r.factor for r in rep.ideals}
    for r in rep.ideals:
        # applying the q-reciprocal twice is the identity
        assert q_reciprocal(q_reciprocal(r.factor, f.q, ell), f.q, ell) == r.factor
        if r.symmetric:
            assert r.conjugate_partner is None
        else:
            assert r.conjugate_partner in factors
            partner = next(x for x in rep.ideals if x.factor == r.conjugate_partner)
            assert partner.conjugate_partner == r.factor
            assert partner.multiplicity == r.multiplicity


@given(surfaces(), st.sampled_from(PRIMES))
@settings(max_examples=200)
def test_generating_needs_degree_doubling(f, ell):
    if ell == f.field.p:
        return
    for r in classify_prime_ideals(f, ell).ideals:
        if r.generating:
            assert r.symmetric
            assert len(r.factor) - 1 in (2, 4)
        if len(r.factor) - 1 == 1:
            assert not r.generating


@given(surfaces(), st.sampled_from(PRIMES))
@settings(max_examples=200)
def test_generating_matches_direct_rules(f, ell):
    """The minimal-polynomial computation behind the generating flag agrees
    with the closed-form rules for degrees 1, 2 and 4."""
    if ell == f.field.p:
        return
    q = f.q
    for r in classify_prime_ideals(f, ell).ideals:
        d = len(r.factor) - 1
        if d == 1:
            assert not r.generating
        elif d == 2:
            # residue field doubles over the real one iff constant term is q
            assert r.generating == (r.factor[0] == q % ell)
        elif d == 4 and r.symmetric:
            assert r.generating


@given(surfaces(), st.sampled_from(PRIMES))
@settings(max_examples=150)
def test_dedekind_defect_covers_all_factors(f, ell):
    verdicts = _dedekind_defect(f.coefficients(), ell)
    pat = factor_mod_prime(f.coefficients(), ell)
    assert set(verdicts) == {g for g, _ in pat.factors}
    for g, mult in pat.factors:
        if mult == 1:
            assert verdicts[g]
