"""Von Neumann dimension of the kernel of right multiplication by an RW-matrix.

An m x n matrix M over RW acts on row vectors of L^2_q W by x -> xM. Writing each entry as
y1(z) + y2(z)s reduces the kernel to three pieces:

* on K+ (resp. K-), the 1-dimensional eigenspaces of st, every entry acts by a scalar, so the
  multiplicity a (resp. b) is the nullity of a rational m x m matrix;
* on K_empty the action is the 2m x 2n Laurent block matrix [[M1, M2], [bar M2, bar M1]], whose
  co-rank over Q(z) gives c.

Then dim = a dim K+ + b dim K- + (c/2) dim K_empty, an element of the group generated by
1, 1/(1+q_s) and 1/(1+q_t).
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy
from loguru import logger

from .dihedral import OPEN_REGIONS, Cmp, Params, Region, Word
from .hecke import Basis, BasisMismatchError, HeckeElem, convert_basis, random_element, special_element
from .laurent import LaurentMatrix, LaurentPoly, rank_fraction_field, rational_rank
from .utils.misc import format_fraction, fraction_to_json, parallel_map, to_fraction

Cert = Tuple[int, int, int]


class NonRepresentableError(ValueError):
    pass


class ConstancyViolationError(RuntimeError):
    pass


@dataclass(frozen=True)
class GWElem:
    """y1(z) + y2(z) s with z = st."""
    y1: LaurentPoly
    y2: LaurentPoly

    @classmethod
    def from_hecke(cls, x: HeckeElem) -> 'GWElem':
        if x.basis is not Basis.GROUP:
            raise BasisMismatchError('GWElem.from_hecke expects a group-basis element')
        y1, y2 = {}, {}
        for w, c in x.coeffs.items():
            (y2 if w.refl else y1)[w.n] = c
        return cls(LaurentPoly(y1), LaurentPoly(y2))

    def to_hecke(self) -> HeckeElem:
        c = {Word(k, False): v for k, v in self.y1.coeffs.items()}
        c.update({Word(k, True): v for k, v in self.y2.coeffs.items()})
        return HeckeElem(c, Basis.GROUP)

    def __mul__(self, other: 'GWElem') -> 'GWElem':
        # f(z) s = s f(1/z)
        return GWElem(self.y1 * other.y1 + self.y2 * other.y2.bar(),
                      self.y1 * other.y2 + self.y2 * other.y1.bar())

    def __add__(self, other: 'GWElem') -> 'GWElem':
        return GWElem(self.y1 + other.y1, self.y2 + other.y2)


@dataclass(frozen=True)
class RWMatrix:
    entries: Tuple[Tuple[GWElem, ...], ...]
    n_cols: int
    basis: Basis = Basis.GROUP
    params: Optional[Params] = None  # set when the entries came from the tau basis

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.entries), self.n_cols


def split_gw(entries: Sequence[Sequence[HeckeElem]], p: Optional[Params] = None) -> RWMatrix:
    rows = [list(r) for r in entries]
    n_cols = len(rows[0]) if rows else 0
    basis = rows[0][0].basis if rows and rows[0] else Basis.GROUP
    if any(len(r) != n_cols for r in rows):
        raise ValueError('ragged RW-matrix')
    if any(x.basis is not basis for r in rows for x in r):
        raise BasisMismatchError('all entries of an RW-matrix must share one basis')
    if basis is Basis.TAU and p is None:
        raise BasisMismatchError('tau-basis entries need Params to be converted to the group basis')
    out = tuple(tuple(GWElem.from_hecke(convert_basis(x, Basis.GROUP, p)) for x in r) for r in rows)
    return RWMatrix(out, n_cols, basis, p if basis is Basis.TAU else None)


@dataclass
class ComponentMatrices:
    a_plus: np.ndarray
    a_minus: np.ndarray
    m_empty: LaurentMatrix
    plus_relevant: bool = True
    minus_relevant: bool = True


def component_matrices(M: RWMatrix, region: Region) -> ComponentMatrices:
    sigma1 = region.sigma_plus or 1
    sigma2 = region.sigma_minus or 1
    m, n = M.shape
    a_plus = np.empty((m, n), dtype=object)
    a_minus = np.empty((m, n), dtype=object)
    for i, row in enumerate(M.entries):
        for j, e in enumerate(row):
            a_plus[i, j] = e.y1.eval(1) + sigma1 * e.y2.eval(1)
            a_minus[i, j] = e.y1.eval(-1) + sigma2 * e.y2.eval(-1)
    top = [[e.y1 for e in row] + [e.y2 for e in row] for row in M.entries]
    bottom = [[e.y2.bar() for e in row] + [e.y1.bar() for e in row] for row in M.entries]
    m_empty = LaurentMatrix.from_rows(top + bottom, 2 * n)
    return ComponentMatrices(a_plus, a_minus, m_empty,
                             plus_relevant=region.sigma_plus is not None,
                             minus_relevant=region.sigma_minus is not None)


def dims_of_K(p: Params) -> Tuple[Fraction, Fraction, Fraction]:
    c = p.c_norm
    d_plus = abs(1 - p.q_s * p.q_t) / c
    d_minus = abs(p.q_t - p.q_s) / c
    if p.q_s * p.q_t <= 1:
        d_empty = 2 * p.q_s / (1 + p.q_s) if p.q_s <= p.q_t else 2 * p.q_t / (1 + p.q_t)
    else:
        d_empty = 2 / (1 + p.q_t) if p.q_s <= p.q_t else 2 / (1 + p.q_s)
    return d_plus, d_minus, d_empty


# integer coordinates on the basis (1, 1/(1+q_s), 1/(1+q_t))

def _cert_plus(region: Region) -> Cert:
    return {Cmp.LT: (-1, 1, 1), Cmp.GT: (1, -1, -1), Cmp.EQ: (0, 0, 0)}[region.cmp_prod]


def _cert_minus(region: Region) -> Cert:
    return {Cmp.LT: (0, 1, -1), Cmp.GT: (0, -1, 1), Cmp.EQ: (0, 0, 0)}[region.cmp_pair]


def _cert_half_empty(region: Region) -> Cert:
    below = region.cmp_prod is not Cmp.GT
    if below:
        return (1, -1, 0) if region.cmp_pair is not Cmp.GT else (1, 0, -1)
    return (0, 0, 1) if region.cmp_pair is not Cmp.GT else (0, 1, 0)


def cert_value(cert: Cert, p: Params) -> Fraction:
    alpha, beta, gamma = cert
    return alpha + Fraction(beta) / (1 + p.q_s) + Fraction(gamma) / (1 + p.q_t)


def cert_from_counts(a: int, b: int, c: int, region: Region) -> Cert:
    parts = [(a, _cert_plus(region)), (b, _cert_minus(region)), (c, _cert_half_empty(region))]
    return tuple(sum(k * v[i] for k, v in parts) for i in range(3))


def _triples_by_l1(bound: int):
    cands = [t for t in product(range(-bound, bound + 1), repeat=3) if sum(map(abs, t)) <= bound]
    return sorted(cands, key=lambda t: (sum(map(abs, t)), [-x for x in t]))


def lambda_certificate(dim, p: Params, counts: Optional[Tuple[int, int, int]] = None,
                       search_bound: int = 4) -> Cert:
    """Integer (alpha, beta, gamma) with dim = alpha + beta/(1+q_s) + gamma/(1+q_t).

    With counts=(a, b, c) the triple is assembled from the region-wise forms of the component
    dimensions; without, the smallest triple in L1 norm (up to `search_bound`) is returned.
    """
    dim = to_fraction(dim)
    if counts is not None:
        cert = cert_from_counts(*counts, p.region)
        if cert_value(cert, p) != dim:
            raise NonRepresentableError(f'counts {counts} give {cert_value(cert, p)}, not {dim}, at {p}')
        return cert
    for cert in _triples_by_l1(search_bound):
        if cert_value(cert, p) == dim:
            return cert
    raise NonRepresentableError(f'{dim} has no certificate of L1 norm <= {search_bound} at {p}')


@dataclass
class DimResult:
    a: int
    b: int
    c: int
    region: Region
    dim: Fraction
    cert: Cert
    dim_plus: Fraction
    dim_minus: Fraction
    dim_empty: Fraction
    m: int
    ranks: Tuple[int, int, int] = (0, 0, 0)

    @property
    def counts(self) -> Tuple[int, int, int]:
        return self.a, self.b, self.c

    def to_dict(self) -> dict:
        return {'a': self.a, 'b': self.b, 'c': self.c,
                'dim': fraction_to_json(self.dim),
                'cert': list(self.cert),
                'region': self.region.label,
                'components': {'plus': fraction_to_json(self.dim_plus),
                               'minus': fraction_to_json(self.dim_minus),
                               'empty': fraction_to_json(self.dim_empty)}}

    def __str__(self):
        alpha, beta, gamma = self.cert
        return (f'dim = {format_fraction(self.dim)}  (a, b, c) = ({self.a}, {self.b}, {self.c})  '
                f'cert = {alpha} + {beta}/(1+qs) + {gamma}/(1+qt)  region {self.region}')


def dim_ker(M: RWMatrix, p: Params) -> DimResult:
    if M.basis is Basis.TAU and M.params != p:
        raise BasisMismatchError(f'matrix was converted from the tau basis at {M.params}, not {p}')
    m, _ = M.shape
    region = p.region
    comps = component_matrices(M, region)
    r_plus, r_minus = rational_rank(comps.a_plus), rational_rank(comps.a_minus)
    r_empty = rank_fraction_field(comps.m_empty)
    a, b, c = m - r_plus, m - r_minus, 2 * m - r_empty
    d_plus, d_minus, d_empty = dims_of_K(p)
    parts = (a * d_plus, b * d_minus, c * d_empty / 2)
    dim = sum(parts, Fraction(0))
    cert = lambda_certificate(dim, p, counts=(a, b, c))
    logger.debug(f'dim_ker at {p}: ranks {(r_plus, r_minus, r_empty)} counts {(a, b, c)} dim {dim}')
    return DimResult(a, b, c, region, dim, cert, *parts, m=m, ranks=(r_plus, r_minus, r_empty))


def kernel_dimension(entries: Sequence[Sequence[HeckeElem]], p: Params) -> DimResult:
    return dim_ker(split_gw(entries, p), p)


# --- piecewise mode ---

@dataclass
class RegionPiece:
    region: Region
    counts: Tuple[int, int, int]
    cert: Cert
    samples: List[Params]

    def evaluate(self, p: Params) -> Fraction:
        return cert_value(self.cert, p)

    def closed_form(self) -> str:
        alpha, beta, gamma = self.cert
        return f'{alpha} + {beta}/(1+qs) + {gamma}/(1+qt)'

    def to_dict(self) -> dict:
        return {'region': self.region.label, 'counts': list(self.counts), 'cert': list(self.cert),
                'closed_form': self.closed_form(),
                'samples': [[format_fraction(s.q_s), format_fraction(s.q_t)] for s in self.samples]}


@dataclass
class BoundaryValue:
    params: Params
    dim: Fraction
    cert: Cert
    mismatches: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {'params': [format_fraction(self.params.q_s), format_fraction(self.params.q_t)],
                'region': self.params.region.label, 'dim': fraction_to_json(self.dim),
                'cert': list(self.cert), 'continuous': not self.mismatches}


@dataclass
class PiecewiseDim:
    pieces: Dict[Region, RegionPiece]
    boundary: List[BoundaryValue]

    @property
    def continuous(self) -> bool:
        return all(not bv.mismatches for bv in self.boundary)

    def evaluate(self, p: Params) -> Fraction:
        region = p.region
        # on a boundary any adjacent piece works once continuity holds
        return self.pieces[region.closure_regions()[0]].evaluate(p)

    def is_constant(self) -> bool:
        certs = {piece.cert for piece in self.pieces.values()}
        return len(certs) == 1 and next(iter(certs))[1:] == (0, 0)

    def to_dict(self) -> dict:
        return {'regions': [self.pieces[r].to_dict() for r in OPEN_REGIONS],
                'boundary': [bv.to_dict() for bv in self.boundary],
                'continuous': self.continuous}


def _counts_at(rw: RWMatrix, p: Params) -> Tuple[int, int, int]:
    return dim_ker(rw, p).counts


def _sample_region(rw: RWMatrix, region: Region, primary: Params, pool: Sequence[Params],
                   extra: int, attempts: int, seed: int) -> RegionPiece:
    """Counts at the primary point and `extra` pool points; a resample redraws every point."""
    rng = np.random.default_rng(seed)
    candidates = [q for q in pool if q.region == region and q != primary]

    def draw(k: int) -> List[Params]:
        k = min(k, len(candidates))
        return [candidates[i] for i in rng.choice(len(candidates), size=k, replace=False)] if k else []

    for attempt in range(attempts + 1):
        samples = ([primary] + draw(extra)) if attempt == 0 else (draw(extra + 1) or [primary])
        seen = [_counts_at(rw, q) for q in samples]
        if all(cnt == seen[0] for cnt in seen):
            cert = cert_from_counts(*seen[0], region)
            return RegionPiece(region, seen[0], cert, samples)
        logger.warning(f'piecewise: counts in {region} vary {seen}, resampling ({attempt + 1}/{attempts})')
    raise ConstancyViolationError(f'(a, b, c) not constant on {region}: {seen}')


def boundary_points(r_values: Sequence) -> List[Params]:
    """Points (r, r) on q_s = q_t, (r, 1/r) on q_s q_t = 1, and the corner (1, 1)."""
    pts = [Params(Fraction(1), Fraction(1))]
    for r in map(to_fraction, r_values):
        if r != 1:
            pts.append(Params(r, r))
            pts.append(Params(r, 1 / r))
    return pts


def dim_piecewise(entries: Sequence[Sequence[HeckeElem]], cfg, seed: int = 0, n_jobs: int = 1,
                  progress: bool = False) -> PiecewiseDim:
    if any(x.basis is not Basis.GROUP for row in entries for x in row):
        raise BasisMismatchError('piecewise mode takes group-basis matrices only')
    rw = split_gw(entries)
    pc = cfg.PIECEWISE
    primaries = {Params.parse(*qs).region: Params.parse(*qs) for qs in pc.PRIMARY_SAMPLES}
    missing = [r for r in OPEN_REGIONS if r not in primaries]
    if missing:
        raise ValueError(f'PIECEWISE.PRIMARY_SAMPLES misses regions {[str(r) for r in missing]}')
    pool = [Params.parse(a, b) for a in pc.SAMPLE_POOL for b in pc.SAMPLE_POOL]

    logger.info(f'piecewise: sampling {len(OPEN_REGIONS)} regions')
    jobs = [(r, primaries[r], seed + i) for i, r in enumerate(OPEN_REGIONS)]
    work = partial(_sample_job, rw, pool, pc.EXTRA_SAMPLES, pc.RESAMPLE_ATTEMPTS)
    pieces = dict(zip(OPEN_REGIONS, parallel_map(work, jobs, n_jobs=n_jobs,
                                                 desc='Sampling regions', progress=progress)))

    boundary = []
    for bp in boundary_points(pc.BOUNDARY_SAMPLES):
        res = dim_ker(rw, bp)
        bv = BoundaryValue(bp, res.dim, res.cert)
        for r in bp.region.closure_regions():
            val = pieces[r].evaluate(bp)
            if val != res.dim:
                bv.mismatches.append(f'{r}: {val} != {res.dim}')
        if bv.mismatches:
            logger.error(f'piecewise: discontinuity at {bp}: {bv.mismatches}')
        boundary.append(bv)
    return PiecewiseDim(pieces, boundary)


def _sample_job(rw, pool, extra, attempts, job):
    region, primary, seed = job
    return _sample_region(rw, region, primary, pool, extra, attempts, seed)


# --- realizations and random inputs ---

def realization_matrices() -> Dict[str, List[List[HeckeElem]]]:
    """1x1 group-basis matrices realizing 1, dim K+, dim K- and the idempotent dims q_g/(1+q_g)."""
    one = HeckeElem.one(Basis.GROUP)
    st = HeckeElem.word('st', Basis.GROUP)
    return {'0': [[HeckeElem.zero(Basis.GROUP)]],
            'a_s': [[special_element('a_s', Basis.GROUP)]],
            'a_t': [[special_element('a_t', Basis.GROUP)]],
            '1-st': [[one - st]],
            '1+st': [[one + st]]}


def lambda_basis_determinant(p: Params) -> int:
    """Determinant of the certificates of [0], [a_s], [a_t]; +-1 means kernel dims span the whole group."""
    mats = realization_matrices()
    rows = [list(kernel_dimension(mats[name], p).cert) for name in ('0', 'a_s', 'a_t')]
    return int(sympy.Matrix(rows).det())


def random_hecke_matrix(rng: np.random.Generator, m: int, n: int, max_length: int,
                        basis: Basis = Basis.GROUP) -> List[List[HeckeElem]]:
    return [[random_element(rng, basis, max_length) for _ in range(n)] for _ in range(m)]
