"""The selftest suite: exact property checks at desk scale.

Every item returns a list of CheckResults; sizes come from cfg.SELFTEST and the named grids in
configs/grids.yml. Items are independent and run through `parallel_map`, so the report is in
item order for any n_jobs.
"""
from fractions import Fraction
from functools import partial
from typing import Callable, List, Sequence, Tuple

import numpy as np
from loguru import logger

from .config.grids import load_grid
from .dihedral import Params
from .hecke import (Basis, HeckeElem, adjoint, convert_basis, group_mul, hecke_mul, inner_product,
                    kappa_projection_coeff, kappa_select, random_element, special_element)
from .kernel_dim import (ConstancyViolationError, NonRepresentableError, cert_value, dim_piecewise,
                         dims_of_K, kernel_dimension, lambda_basis_determinant, random_hecke_matrix,
                         realization_matrices)
from .laurent import random_laurent_matrix, rank_with_redraws
from .spectral import (JORDAN_BLOCK, JORDAN_START, CheckResult, DegenerateParameterError, VerifyReport,
                       divergence_check, eigen_residual, eigenvector, orthogonality_check, recurrence_check)
from .utils.misc import format_fraction, log_on, parallel_map


def _summary(name: str, failures: List[str], total: int) -> CheckResult:
    detail = f'{total - len(failures)}/{total} ok'
    if failures:
        detail += f'; first failure: {failures[0]}'
    return CheckResult(name, not failures, detail=detail)


def _grid(cfg, name: str) -> List[Params]:
    return load_grid(name, cfg.VERIFY.GRID_FILE)


def _param_pool(cfg) -> List[Params]:
    pool = cfg.PIECEWISE.SAMPLE_POOL
    return [Params.parse(a, b) for a in pool for b in pool]


def _draw_params(rng: np.random.Generator, pool: Sequence[Params], k: int) -> List[Params]:
    idx = rng.choice(len(pool), size=min(k, len(pool)), replace=False)
    return [pool[i] for i in idx]


# --- 1. closed-form dimensions ---

def check_closed_form_dims(cfg, seed: int = 0) -> List[CheckResult]:
    out = []
    for p in _grid(cfg, cfg.SELFTEST.GRID):
        d_plus, d_minus, d_empty = dims_of_K(p)
        proj_plus, proj_minus = kappa_projection_coeff('plus', p), kappa_projection_coeff('minus', p)
        passed = (d_plus + d_minus + d_empty == 1 and d_plus == proj_plus and d_minus == proj_minus
                  and min(d_plus, d_minus, d_empty) >= 0)
        out.append(CheckResult('closed_form_dims', passed, p,
                               f'dims ({d_plus}, {d_minus}, {d_empty}) projections ({proj_plus}, {proj_minus})'))
    return out


# --- 2. realization matrices ---

def check_realizations(cfg, seed: int = 0) -> List[CheckResult]:
    mats = realization_matrices()
    out = []
    for p in _grid(cfg, cfg.SELFTEST.GRID):
        d_plus, d_minus, _ = dims_of_K(p)
        got = {name: kernel_dimension(mats[name], p).dim for name in ('0', '1-st', '1+st')}
        passed = got['0'] == 1 and got['1-st'] == d_plus and got['1+st'] == d_minus
        detail = ' '.join(f'[{k}]={format_fraction(v)}' for k, v in got.items())
        if p.region.is_open:
            det = lambda_basis_determinant(p)
            passed = passed and abs(det) == 1
            detail += f' det={det}'
        out.append(CheckResult('realizations', passed, p, detail))
    return out


# --- 3. idempotent oracle ---

def check_idempotents(cfg, seed: int = 0) -> List[CheckResult]:
    out = []
    for p in _grid(cfg, cfg.SELFTEST.GRID):
        one = HeckeElem.one(Basis.GROUP)
        ok, parts = True, []
        for name in ('a_s', 'a_t'):
            expected = 1 - inner_product(special_element(name, Basis.GROUP), one, p)
            for basis in (Basis.GROUP, Basis.TAU):
                got = kernel_dimension([[special_element(name, basis, p)]], p).dim
                ok &= got == expected == p.q(name[-1]) / (1 + p.q(name[-1]))
            parts.append(f'{name}:{format_fraction(expected)}')
        out.append(CheckResult('idempotent_oracle', ok, p, ' '.join(parts)))
    return out


# --- 4. certificates of random matrices ---

def _certificate_job(cfg, pool, job) -> Tuple[int, List[str]]:
    index, seed = job
    st = cfg.SELFTEST
    rng = np.random.default_rng(seed)
    basis = Basis.GROUP if index % 2 == 0 else Basis.TAU
    m, n = (int(x) for x in rng.integers(1, st.MAX_SIZE + 1, size=2))
    entries = random_hecke_matrix(rng, m, n, st.MAX_WORD_LENGTH, basis)
    failures = []
    for p in _draw_params(rng, pool, st.PARAMS_PER_MATRIX):
        try:
            res = kernel_dimension(entries, p)
        except NonRepresentableError as err:
            failures.append(f'matrix {index} at {p}: {err}')
            continue
        if cert_value(res.cert, p) != res.dim or not 0 <= res.dim <= m:
            failures.append(f'matrix {index} ({basis.value}, {m}x{n}) at {p}: dim {res.dim} cert {res.cert}')
    return st.PARAMS_PER_MATRIX, failures


def check_certificates(cfg, seed: int = 0) -> List[CheckResult]:
    jobs = [(i, seed + i) for i in range(cfg.SELFTEST.RANDOM_MATRICES)]
    pool = _param_pool(cfg)
    results = [_certificate_job(cfg, pool, job) for job in jobs]
    failures = [f for _, fs in results for f in fs]
    return [_summary('lambda_certificates', failures, sum(k for k, _ in results))]


# --- 5. continuity of the piecewise closed forms ---

def check_continuity(cfg, seed: int = 0) -> List[CheckResult]:
    st = cfg.SELFTEST
    pcfg = cfg.clone()
    pcfg.defrost()
    pcfg.PIECEWISE.BOUNDARY_SAMPLES = list(st.BOUNDARY_R)
    rng = np.random.default_rng(seed)
    failures = []
    for i in range(st.PIECEWISE_MATRICES):
        m, n = (int(x) for x in rng.integers(1, st.MAX_SIZE + 1, size=2))
        entries = random_hecke_matrix(rng, m, n, st.MAX_WORD_LENGTH)
        try:
            pw = dim_piecewise(entries, pcfg, seed=seed + i)
        except ConstancyViolationError as err:
            failures.append(f'matrix {i}: {err}')
            continue
        if not pw.continuous:
            bad = next(bv for bv in pw.boundary if bv.mismatches)
            failures.append(f'matrix {i} at {bad.params}: {bad.mismatches}')
    return [_summary('piecewise_continuity', failures, st.PIECEWISE_MATRICES)]


# --- 6. rank oracle equivalence ---

def check_rank_oracle(cfg, seed: int = 0) -> List[CheckResult]:
    st, rc = cfg.SELFTEST, cfg.RANK
    rng = np.random.default_rng(seed)
    failures = []
    for i in range(st.RANK_MATRICES):
        m, n = (int(x) for x in rng.integers(1, st.RANK_MAX_SIZE + 1, size=2))
        M = random_laurent_matrix(rng, m, n, st.RANK_MAX_DEGREE)
        try:
            exact, best, used = rank_with_redraws(M, rng, rc.EVAL_POINTS, rc.POINTS_PER_DRAW, rc.DRAWS)
        except RuntimeError as err:
            failures.append(f'matrix {i}: {err}')
            continue
        if exact != best:
            failures.append(f'matrix {i} ({m}x{n}): fraction field {exact}, evaluation {best} after {used} draws')
    return [_summary('rank_oracle', failures, st.RANK_MATRICES)]


# --- 7. eigen residuals ---

def check_eigen_residuals(cfg, seed: int = 0) -> List[CheckResult]:
    depth = cfg.SELFTEST.RESIDUAL_DEPTH
    out = []
    for p in _grid(cfg, cfg.SELFTEST.SQUARE_GRID):
        if not p.region.is_open:
            continue
        for which, lam in (('plus', 1), ('minus', -1)):
            spec = kappa_select(which, p)
            right = eigen_residual(spec, lam, depth, p)
            wrong = eigen_residual(spec, -lam, depth, p)
            out.append(CheckResult(f'eigen_residual_{which}', right == 0 and wrong >= Fraction(1, 2), p,
                                   f'residual {right}, wrong sign {float(wrong):.3g}'))
    return out


# --- 8. recurrence identities and divergence ---

def check_recurrence(cfg, seed: int = 0) -> List[CheckResult]:
    vc = cfg.VERIFY
    iterations = vc.DIVERGENCE_ITERATIONS
    fraction = Fraction(vc.NON_DECAY_FRACTION).limit_denominator(1000)
    out = []
    for qs, qt in cfg.SELFTEST.RECURRENCE_POINTS:
        p = Params.parse(qs, qt)
        for mu in (0, 1, -1):
            try:
                data = recurrence_check(p, mu)
            except DegenerateParameterError as err:
                held = err.data is None or err.data.passed
                out.append(CheckResult(f'recurrence_mu={mu}', held, p, str(err), skipped=True))
                continue
            out.append(CheckResult(f'recurrence_mu={mu}', data.passed, p,
                                   ','.join(k for k, v in data.checks.items() if not v)))
            if not isinstance(data.chi1, Fraction) or abs(data.chi1) == 1:
                continue
            grows = divergence_check(p, mu, trials=3, iterations=iterations, non_decay_fraction=fraction, seed=seed)
            decays = not divergence_check(p, mu, iterations=iterations, non_decay_fraction=fraction,
                                          initial=eigenvector(data.M_rec, data.chi2))
            out.append(CheckResult(f'divergence_mu={mu}', grows and decays, p,
                                   f'chi1={data.chi1} chi2={data.chi2}'))
    p = Params.parse(*cfg.SELFTEST.RECURRENCE_POINTS[0])
    grows = divergence_check(p, 0, iterations=iterations, non_decay_fraction=fraction,
                             initial=JORDAN_START, matrix=JORDAN_BLOCK)
    out.append(CheckResult('divergence_jordan', grows))
    return out


# --- 9. orthogonality ---

def check_orthogonality(cfg, seed: int = 0) -> List[CheckResult]:
    lo, hi = cfg.VERIFY.ORTHOGONALITY_DEPTHS
    out = []
    for p in _grid(cfg, cfg.SELFTEST.GRID):
        rep = orthogonality_check(p, depths=[lo])
        out.append(CheckResult('orthogonality', rep.s_value == 0 and rep.t_value == 0 and rep.dims_sum == 1, p,
                               f's={rep.s_value} t={rep.t_value}'))
    p = Params.parse(*cfg.SELFTEST.ORTHOGONALITY_POINT)
    rep = orthogonality_check(p, depths=range(lo, hi + 1))
    out.append(CheckResult('orthogonality_decay', rep.monotone and rep.final < cfg.VERIFY.ORTHOGONALITY_BOUND, p,
                           f'|<k+,k->| at depth {hi} = {float(rep.final):.3g}'))
    return out


# --- 10. adjointness and algebra relations ---

def _algebra_failures(x: HeckeElem, y: HeckeElem, z: HeckeElem, p: Params) -> List[str]:
    bad = []
    xy = group_mul(x, y)
    if inner_product(xy, z, p) != inner_product(y, group_mul(adjoint(x), z), p):
        bad.append('left adjoint')
    if inner_product(xy, z, p) != inner_product(x, group_mul(z, adjoint(y)), p):
        bad.append('right adjoint')
    tx, ty, tz = (convert_basis(e, Basis.TAU, p) for e in (x, y, z))
    if convert_basis(xy, Basis.TAU, p) != hecke_mul(tx, ty, p):
        bad.append('phi multiplicative')
    if hecke_mul(hecke_mul(tx, ty, p), tz, p) != hecke_mul(tx, hecke_mul(ty, tz, p), p):
        bad.append('associativity')
    if convert_basis(tx, Basis.GROUP, p) != x:
        bad.append('basis roundtrip')
    return bad


def check_algebra(cfg, seed: int = 0) -> List[CheckResult]:
    st = cfg.SELFTEST
    rng = np.random.default_rng(seed)
    pool = _param_pool(cfg)
    failures = []
    for i in range(st.ALGEBRA_TRIPLES):
        p = pool[int(rng.integers(len(pool)))]
        x, y, z = (random_element(rng, Basis.GROUP, st.MAX_WORD_LENGTH) for _ in range(3))
        failures += [f'triple {i} at {p}: {b}' for b in _algebra_failures(x, y, z, p)]
    for p in _grid(cfg, cfg.SELFTEST.GRID):
        for letter in ('s', 't'):
            g = HeckeElem.word(letter, Basis.TAU)
            q = p.q(letter)
            if hecke_mul(g, g, p) != g * (q - 1) + q:
                failures.append(f'quadratic relation for tau_{letter} at {p}')
    return [_summary('algebra_relations', failures, st.ALGEBRA_TRIPLES)]


ACCEPTANCE_ITEMS: List[Tuple[str, Callable]] = [
    ('closed_form_dims', check_closed_form_dims),
    ('realizations', check_realizations),
    ('idempotent_oracle', check_idempotents),
    ('lambda_certificates', check_certificates),
    ('piecewise_continuity', check_continuity),
    ('rank_oracle', check_rank_oracle),
    ('eigen_residuals', check_eigen_residuals),
    ('recurrence', check_recurrence),
    ('orthogonality', check_orthogonality),
    ('algebra_relations', check_algebra),
]


def _run_item(cfg, seed, item) -> List[CheckResult]:
    name, func = item
    logger.info(f'selftest: {name}')
    return func(cfg, seed)


def run_selftest(cfg, seed: int = 0, n_jobs: int = 1, progress: bool = False) -> VerifyReport:
    work = partial(_run_item, cfg, seed)
    per_item = parallel_map(work, ACCEPTANCE_ITEMS, n_jobs=n_jobs, desc='Selftest', progress=progress)
    checks = [c for batch in per_item for c in batch]
    for c in checks:
        log_on(not c.passed, f'selftest: {c}', 'ERROR')
    return VerifyReport(checks)
