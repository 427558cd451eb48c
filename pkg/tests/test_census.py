import numpy as np
import pytest

from fatpoints.census import (
    CENSUS_PRIMES,
    FiberCensus,
    RationalMap,
    census_for_doubles,
    classify,
    fiber_census,
    identifiability_verdict,
    map_from_system,
    next_odd_prime,
    projective_count,
    quadric_rank,
)
from fatpoints.census import _projective_chunks
from fatpoints.grammar import parse_spec
from fatpoints.monomials import monomial_basis


def test_projective_count():
    assert projective_count(1, 499) == 500
    assert projective_count(2, 5) == 31
    assert projective_count(3, 2) == 15


def test_projective_chunks_enumerate_canonical_reps():
    pts = np.vstack(list(_projective_chunks(2, 7, chunk=10)))
    assert len(pts) == projective_count(2, 7) == 57
    for row in pts:
        nz = np.nonzero(row)[0]
        assert row[nz[0]] == 1
    keys = {tuple(r) for r in pts}
    assert len(keys) == 57


def test_map_from_system():
    m = map_from_system(parse_spec("L(5,2;2^3)"), 32003, 0)
    assert m.coeffs.shape == (6, 21)
    assert m.source == "L(5,2;2^3)"
    assert len(m.basis) == 21
    with pytest.raises(ValueError):
        map_from_system(parse_spec("L(2,4;2^5)"), 32003, 0)


def test_identity_map_census_is_birational():
    m = RationalMap(1, 1, 13, 0, np.eye(2, dtype=np.int64), "id")
    c = fiber_census(m)
    assert c.domain_size == 14
    assert c.base_points == 0
    assert c.image_size == 14
    assert c.histogram == {1: 14}
    assert c.fraction_unique == 1.0
    assert c.verdict == "birational"


def test_constant_deficient_map_is_fiber_type():
    coeffs = np.array([[1, 0], [1, 0]], dtype=np.int64)  # both forms equal x0
    c = fiber_census(RationalMap(1, 1, 13, 0, coeffs, "const"))
    assert c.base_points == 1  # the single zero of x0
    assert c.image_size == 1
    assert c.verdict == "fiber-type"


def test_squaring_cover_census():
    basis = monomial_basis(1, 2)
    coeffs = np.zeros((2, len(basis)), dtype=np.int64)
    coeffs[0, basis.index_of((2, 0))] = 1
    coeffs[1, basis.index_of((0, 2))] = 1
    c = fiber_census(RationalMap(1, 2, 13, 0, coeffs, "sq"))
    assert c.base_points == 0
    assert c.histogram == {1: 2, 2: 6}
    assert c.verdict == "finite(2)"


def test_fiber_conservation():
    # every domain point is either a base point or lands in some fiber bucket
    for text, p in [("L(1,3;2)", 13), ("L(2,2;2)", 7)]:
        c = fiber_census(map_from_system(parse_spec(text), p, 0))
        assert sum(s * cnt for s, cnt in c.histogram.items()) + c.base_points == c.domain_size


def test_rescaling_rows_leaves_census_unchanged():
    basis = monomial_basis(1, 2)
    coeffs = np.zeros((2, len(basis)), dtype=np.int64)
    coeffs[0, basis.index_of((2, 0))] = 1
    coeffs[1, basis.index_of((0, 2))] = 1
    a = fiber_census(RationalMap(1, 2, 13, 0, coeffs, ""))
    scaled = coeffs.copy()
    scaled[0] = scaled[0] * 5 % 13
    scaled[1] = scaled[1] * 7 % 13
    b = fiber_census(RationalMap(1, 2, 13, 0, scaled, ""))
    assert a.histogram == b.histogram
    assert a.image_size == b.image_size
    assert a.base_points == b.base_points


def test_budget_guard():
    m = RationalMap(1, 1, 499, 0, np.eye(2, dtype=np.int64), "")
    with pytest.raises(ValueError) as ei:
        fiber_census(m, budget=100)
    assert "affordable prime" in str(ei.value)


def test_next_odd_prime():
    assert next_odd_prime(3) == 5
    assert next_odd_prime(13) == 17
    assert next_odd_prime(31) == 37


def test_classify_thresholds():
    def mk(frac, image, hist, domain=1000, base=0):
        return FiberCensus(13, domain, base, image, hist, frac)

    assert classify(mk(0.95, 900, {1: 900})) == "birational"
    assert classify(mk(0.0, 10, {100: 10})) == "fiber-type"
    assert classify(mk(0.1, 400, {1: 100, 3: 300})) == "finite(3)"
    assert classify(mk(0.4, 600, {1: 400, 2: 100, 4: 100})) == "inconclusive"


def test_census_for_doubles_cached_and_sane():
    a = census_for_doubles(2, 5, 6, 499)
    b = census_for_doubles(2, 5, 6, 499)
    assert a is b  # cached
    assert a.base_points >= 6
    assert a.verdict == "birational"
    assert a.fraction_unique > 0.95


def test_identifiability_statuses():
    assert identifiability_verdict(2, 3, corroborate=False).status == "non-perfect"
    v = identifiability_verdict(1, 5, corroborate=False)
    assert (v.status, v.s) == ("identifiable", 3)
    v = identifiability_verdict(3, 3, corroborate=False)
    assert (v.status, v.s) == ("identifiable", 5)
    v = identifiability_verdict(2, 4, corroborate=False)
    assert (v.status, v.s) == ("not-identifiable", 5)
    v = identifiability_verdict(5, 4, corroborate=False)
    assert (v.status, v.s) == ("not-identifiable", 21)
    assert v.censuses == ()
    with pytest.raises(ValueError):
        identifiability_verdict(0, 3)


def test_identifiability_respects_budget():
    v = identifiability_verdict(2, 5, budget=10)
    assert v.status == "identifiable"
    assert v.censuses == ()  # all runs over budget are skipped
    d = v.as_dict()
    assert set(d) == {"n", "d", "status", "s", "censuses"}


def test_census_primes_table():
    assert set(CENSUS_PRIMES) == {1, 2, 3, 4, 5}
    for pair in CENSUS_PRIMES.values():
        assert len(pair) == 2 and pair[0] != pair[1]


def test_quadric_rank():
    b3 = monomial_basis(3, 2)
    coeffs = np.zeros(len(b3), dtype=np.int64)
    for i in range(4):
        e = tuple(2 if j == i else 0 for j in range(4))
        coeffs[b3.index_of(e)] = 1
    assert quadric_rank(coeffs, b3, 32003) == 4

    b1 = monomial_basis(1, 2)
    c = np.zeros(len(b1), dtype=np.int64)
    c[b1.index_of((1, 1))] = 1
    assert quadric_rank(c, b1, 13) == 2

    b2 = monomial_basis(2, 2)
    c = np.zeros(len(b2), dtype=np.int64)
    c[b2.index_of((2, 0, 0))] = 1
    assert quadric_rank(c, b2, 13) == 1

    with pytest.raises(ValueError):
        quadric_rank(np.zeros(4, dtype=np.int64), monomial_basis(1, 3), 13)
    with pytest.raises(ValueError):
        quadric_rank(c, b2, 2)
