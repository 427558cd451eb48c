"""Rational maps from n-dimensional linear systems and their exhaustive
fiber census over P^n(F_p).

The census enumerates every point of P^n(F_p) in canonical representatives
(first nonzero coordinate 1), evaluates all n+1 forms, drops base points,
and buckets the normalized images. Generic fiber size 1 across two primes is
the working notion of birationality; a small image signals fiber type.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

from .ffield import FieldMatrix, is_prime, kernel_basis, rank
from .formulas import is_perfect, k
from .monomials import MonomialBasis, evaluate_basis, monomial_basis
from .schemes import SchemeSpec, condition_matrix, double_points

DEFAULT_BUDGET = 1e10
TAU_BIRATIONAL = 0.7
TAU_FIBER = 3.0
TAU_FINITE = 0.6

# per-dimension census primes; n <= 4 fixed, the pairs give cross-prime checks
CENSUS_PRIMES = {1: (499, 251), 2: (499, 251), 3: (127, 131), 4: (31, 61), 5: (31, 17)}

_CHUNK = 1 << 18


@dataclass(frozen=True)
class RationalMap:
    """n+1 forms of degree d: a basis of a dimension-n linear system."""

    n: int
    d: int
    prime: int
    seed: int
    coeffs: np.ndarray = field(repr=False)  # (n+1, |basis|) reduced mod p
    source: str = ""

    @property
    def basis(self) -> MonomialBasis:
        return monomial_basis(self.n, self.d)


def projective_count(n: int, p: int) -> int:
    return (p ** (n + 1) - 1) // (p - 1)


def map_from_system(spec: SchemeSpec, prime: int, seed: int) -> RationalMap:
    """Kernel basis of the condition matrix, when its size is exactly n+1."""
    mat = condition_matrix(spec, prime, seed)
    forms = kernel_basis(mat)
    if len(forms) != spec.n + 1:
        raise ValueError(
            f"system has dimension {len(forms) - 1} at p={prime}, not n={spec.n}; "
            "no candidate self-map"
        )
    coeffs = np.vstack(forms)
    coeffs.setflags(write=False)
    from .grammar import print_spec

    try:
        source = print_spec(spec)
    except ValueError:
        source = f"<spec n={spec.n} d={spec.d} ({len(spec.points)} points)>"
    return RationalMap(spec.n, spec.d, prime, seed, coeffs, source)


@dataclass(frozen=True)
class FiberCensus:
    prime: int
    domain_size: int
    base_points: int
    image_size: int
    histogram: dict[int, int]  # fiber size -> number of image points
    fraction_unique: float
    verdict: str = ""

    def as_dict(self) -> dict:
        return {
            "prime": self.prime,
            "domain_size": self.domain_size,
            "base_points": self.base_points,
            "image_size": self.image_size,
            "histogram": {str(s): c for s, c in sorted(self.histogram.items())},
            "fraction_unique": round(self.fraction_unique, 6),
            "verdict": self.verdict,
        }


def _projective_chunks(n: int, p: int, chunk: int = _CHUNK):
    """Canonical representatives of P^n(F_p): lead coordinate 1, zeros before."""
    for lead in range(n + 1):
        free = n - lead
        total = p**free
        start = 0
        while start < total:
            count = min(chunk, total - start)
            idx = np.arange(start, start + count, dtype=np.int64)
            pts = np.zeros((count, n + 1), dtype=np.int64)
            pts[:, lead] = 1
            for j in range(n, lead, -1):
                idx, digit = np.divmod(idx, p)
                pts[:, j] = digit
            yield pts
            start += count


def _normalize_rows(vals: np.ndarray, p: int, inv_table: np.ndarray) -> np.ndarray:
    lead_idx = np.argmax(vals != 0, axis=1)
    lead = vals[np.arange(len(vals)), lead_idx]
    return vals * inv_table[lead][:, None] % p


def fiber_census(m: RationalMap, budget: float = DEFAULT_BUDGET) -> FiberCensus:
    """Image bucket counts for the whole rational point set of the source."""
    n, p = m.n, m.prime
    domain = projective_count(n, p)
    cost = domain * len(m.basis)
    if cost > budget:
        smaller = _suggest_prime(n, len(m.basis), budget)
        raise ValueError(
            f"census cost {cost:.2e} exceeds budget {budget:.0e}; "
            f"largest affordable prime is ~{smaller}"
        )
    inv_table = np.zeros(p, dtype=np.int64)
    inv_table[1:] = np.array([pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    weights = (p ** np.arange(n, -1, -1)).astype(np.int64)

    base = 0
    key_chunks: list[np.ndarray] = []
    coeffs_t = m.coeffs.T.copy()
    for pts in _projective_chunks(n, p):
        vals = evaluate_basis(m.basis, pts, p)
        imgs = vals @ coeffs_t % p
        nonbase = imgs.any(axis=1)
        base += int(len(imgs) - nonbase.sum())
        imgs = imgs[nonbase]
        if len(imgs):
            imgs = _normalize_rows(imgs, p, inv_table)
            key_chunks.append(imgs @ weights)
    if key_chunks:
        keys = np.concatenate(key_chunks)
        _, counts = np.unique(keys, return_counts=True)
        sizes, freq = np.unique(counts, return_counts=True)
        histogram = {int(s): int(f) for s, f in zip(sizes, freq)}
        image_size = int(counts.size)
        unique_mass = int(counts[counts == 1].size)
        fraction_unique = unique_mass / float(keys.size)
    else:
        histogram, image_size, fraction_unique = {}, 0, 0.0
    census = FiberCensus(
        prime=p,
        domain_size=domain,
        base_points=base,
        image_size=image_size,
        histogram=histogram,
        fraction_unique=fraction_unique,
    )
    return FiberCensus(**{**census.__dict__, "verdict": classify(census)})


def _suggest_prime(n: int, basis_size: int, budget: float) -> int:
    p = 3
    best = 3
    while projective_count(n, p) * basis_size <= budget:
        best = p
        p = next_odd_prime(p)
    return best


def next_odd_prime(p: int) -> int:
    q = p + 2
    while not is_prime(q):
        q += 2
    return q


def classify(
    c: FiberCensus,
    tau_b: float = TAU_BIRATIONAL,
    tau_f: float = TAU_FIBER,
    tau_k: float = TAU_FINITE,
) -> str:
    """Threshold decision on the census statistics.

    Order matters: a clear generic-degree-1 signal wins; a provably small
    image (at most tau_f/p of the domain, i.e. positive-codimension) is fiber
    type; concentrated fiber size k >= 2 is a finite cover; otherwise the
    census is inconclusive.
    """
    if c.fraction_unique >= tau_b:
        return "birational"
    if c.image_size <= c.domain_size * tau_f / c.prime:
        return "fiber-type"
    total = c.domain_size - c.base_points
    if total > 0:
        by_mass = {s: s * cnt / total for s, cnt in c.histogram.items() if s >= 2}
        if by_mass:
            s, mass = max(by_mass.items(), key=lambda kv: kv[1])
            if mass >= tau_k:
                return f"finite({s})"
    return "inconclusive"


def census_for_doubles(
    n: int, d: int, h: int, prime: int, seed: int = 0, budget: float = DEFAULT_BUDGET
) -> FiberCensus:
    """Census of the map of L_{n,d}(2^h); cached, the heavy runs are shared."""
    return _census_cached(n, d, h, prime, seed, float(budget))


@lru_cache(maxsize=None)
def _census_cached(n: int, d: int, h: int, prime: int, seed: int, budget: float) -> FiberCensus:
    spec = double_points(n, d, h)
    m = map_from_system(spec, prime, seed)
    census = fiber_census(m, budget)
    if h and census.base_points < h:
        raise AssertionError(
            f"sanity: {h} assigned double points must be rational base points, "
            f"census found {census.base_points}"
        )
    return census


@dataclass(frozen=True)
class IdentifiabilityVerdict:
    n: int
    d: int
    status: str  # "identifiable" | "not-identifiable" | "non-perfect"
    s: int | None = None
    censuses: tuple[FiberCensus, ...] = ()

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "status": self.status,
            "s": self.s,
            "censuses": [c.as_dict() for c in self.censuses],
        }


# the complete list of identifiable perfect pairs: (1, 2k-1) for all k, plus
IDENTIFIABLE_SPORADIC = {(3, 3): 5, (2, 5): 7}


def identifiability_verdict(
    n: int, d: int, corroborate: bool = True, budget: float = DEFAULT_BUDGET
) -> IdentifiabilityVerdict:
    """Uniqueness of the generic rank-s decomposition in the perfect case.

    Identifiable exactly for (1, 2k-1) with s = k and the two sporadic pairs
    (3,3) s=5 and (2,5) s=7. When corroborate is set and the cost fits the
    budget, attaches the census of L_{n,d}(2^{s-1}) at the per-dimension
    primes: birational verdicts back the identifiable cases.
    """
    if n < 1 or d < 1:
        raise ValueError(f"need n, d >= 1, got ({n},{d})")
    if not is_perfect(n, d):
        return IdentifiabilityVerdict(n, d, "non-perfect")
    s = int(k(n, d))
    if n == 1 and d % 2 == 1:
        status = "identifiable"
    elif (n, d) in IDENTIFIABLE_SPORADIC:
        status = "identifiable"
        assert IDENTIFIABLE_SPORADIC[(n, d)] == s
    else:
        status = "not-identifiable"
    censuses: tuple[FiberCensus, ...] = ()
    if corroborate and n in CENSUS_PRIMES:
        runs = []
        for p in CENSUS_PRIMES[n]:
            if projective_count(n, p) * comb(n + d, n) <= budget:
                runs.append(census_for_doubles(n, d, s - 1, p, budget=budget))
        censuses = tuple(runs)
    return IdentifiabilityVerdict(n, d, status, s, censuses)


def quadric_rank(coeffs, basis: MonomialBasis, p: int) -> int:
    """Rank of the symmetric matrix of a quadratic form; needs odd p."""
    if basis.d != 2:
        raise ValueError(f"quadric rank needs degree 2, got {basis.d}")
    if p == 2:
        raise ValueError("quadric rank undefined at p = 2")
    coeffs = np.asarray(coeffs, dtype=np.int64) % p
    n = basis.n
    inv2 = pow(2, -1, p)
    sym = np.zeros((n + 1, n + 1), dtype=np.int64)
    for idx, beta in enumerate(basis.exponents):
        c = int(coeffs[idx])
        if c == 0:
            continue
        nz = [i for i, e in enumerate(beta) if e]
        if len(nz) == 1:
            sym[nz[0], nz[0]] = c
        else:
            i, j = nz
            sym[i, j] = sym[j, i] = c * inv2 % p
    return rank(FieldMatrix(sym, p))
