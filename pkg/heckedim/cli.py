"""Command-line front end: `hecke-dim {dim,piecewise,verify,selftest}`."""
import argparse
import hashlib
import json
import pprint
import sys
from typing import Optional, Sequence

import numpy as np
from loguru import logger

from .acceptance import run_selftest
from .config import get_cfg_defaults
from .config.grids import load_grid
from .dihedral import InvalidParamsError, Params
from .document import EvaluationError, MatrixDimensionError, MatrixSyntaxError, parse_matrix
from .hecke import Basis, BasisMismatchError
from .kernel_dim import (ConstancyViolationError, NonRepresentableError, component_matrices, dim_ker,
                         dim_piecewise, split_gw)
from .laurent import rank_with_redraws
from .spectral import MIN_VERIFY_DEPTH, verify
from .utils.misc import fraction_to_json, lower_config

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2

INPUT_ERRORS = (MatrixSyntaxError, MatrixDimensionError, EvaluationError, InvalidParamsError,
                BasisMismatchError, OSError, KeyError)


def parse_args(argv: Optional[Sequence[str]] = None):
    parser = argparse.ArgumentParser(
        prog='hecke-dim', formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        description='von Neumann dimensions of kernels of matrices over the Hecke algebra of the infinite dihedral group')
    parser.add_argument(
        'mode', type=str, choices=['dim', 'piecewise', 'verify', 'selftest'])
    parser.add_argument(
        'input', type=str, nargs='?', default=None,
        help='matrix document for dim / piecewise; "-" reads stdin')
    parser.add_argument(
        '--qs', type=str, default=None, help='q_s as a positive rational "p/q" (dim mode)')
    parser.add_argument(
        '--qt', type=str, default=None, help='q_t as a positive rational "p/q" (dim mode)')
    parser.add_argument(
        '--json', action='store_true', help='machine-readable output on stdout')
    parser.add_argument(
        '--seed', type=int, default=None, help='RNG seed for evaluation points and samples; overrides RUNTIME.SEED')
    parser.add_argument(
        '--depth', type=int, default=None, help='truncation depth for verify; overrides VERIFY.DEPTH')
    parser.add_argument(
        '--grid', type=str, default=None,
        help='grid name in the grid file, or inline "qs:qt,qs:qt"; overrides VERIFY.GRID')
    parser.add_argument(
        '--cfg_path', type=str, default=None, help='yacs YAML file merged over the defaults')
    parser.add_argument(
        '--n_jobs', type=int, default=None, help='joblib workers; overrides RUNTIME.N_JOBS')
    parser.add_argument(
        '--log_level', type=str, default='WARNING',
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'])
    parser.add_argument(
        '--opts', type=str, nargs='*', default=[],
        help='KEY VALUE config overrides, e.g. --opts VERIFY.FLOAT_TOL 1e-8')
    return parser.parse_args(argv)


def build_config(args):
    cfg = get_cfg_defaults()
    try:
        if args.cfg_path:
            cfg.merge_from_file(args.cfg_path)
        if args.opts:
            cfg.merge_from_list(args.opts)
    except AssertionError as err:
        # yacs reports unknown keys and odd-length --opts through assertions
        raise InvalidParamsError(f'bad config override: {err}') from err
    if args.seed is not None:
        cfg.RUNTIME.SEED = args.seed
    if args.n_jobs is not None:
        cfg.RUNTIME.N_JOBS = args.n_jobs
    if args.depth is not None:
        cfg.VERIFY.DEPTH = args.depth
    if args.grid is not None:
        cfg.VERIFY.GRID = args.grid
    if cfg.VERIFY.DEPTH < MIN_VERIFY_DEPTH:
        raise InvalidParamsError(f'VERIFY.DEPTH must be >= {MIN_VERIFY_DEPTH}, got {cfg.VERIFY.DEPTH}')
    cfg.freeze()
    return cfg


def _read_input(path: Optional[str]) -> str:
    if path is None:
        raise InvalidParamsError('this mode needs a matrix document (a file path or "-" for stdin)')
    if path == '-':
        return sys.stdin.read()
    with open(path, 'r') as f:
        return f.read()


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _params_json(p: Params) -> dict:
    return {'qs': fraction_to_json(p.q_s), 'qt': fraction_to_json(p.q_t)}


def run_dim(args, cfg, text: str, digest: str) -> int:
    if args.qs is None or args.qt is None:
        raise InvalidParamsError('dim mode requires --qs and --qt')
    p = Params.parse(args.qs, args.qt)
    doc = parse_matrix(text)
    rw = split_gw(doc.evaluate(p), p)
    res = dim_ker(rw, p)

    # cross-check the K_empty co-rank against evaluation at random points
    rng = np.random.default_rng(cfg.RUNTIME.SEED)
    exact, best, used = rank_with_redraws(component_matrices(rw, p.region).m_empty, rng,
                                          cfg.RANK.EVAL_POINTS, cfg.RANK.POINTS_PER_DRAW, cfg.RANK.DRAWS)
    logger.debug(f'K_empty rank {exact}, evaluation rank {best} after {used} draws')

    payload = {'mode': 'dim', 'input_digest': digest, 'params': _params_json(p), 'result': res.to_dict()}
    _emit(args, payload, f'{doc.m}x{doc.n} {doc.basis.value}-basis matrix at {p}\n{res}')
    return EXIT_OK


def run_piecewise(args, cfg, text: str, digest: str) -> int:
    doc = parse_matrix(text)
    if doc.basis is not Basis.GROUP:
        raise BasisMismatchError('piecewise mode takes group-basis matrices only')
    pw = dim_piecewise(doc.evaluate(), cfg, seed=cfg.RUNTIME.SEED, n_jobs=cfg.RUNTIME.N_JOBS,
                       progress=cfg.RUNTIME.PROGRESS)
    payload = {'mode': 'piecewise', 'input_digest': digest, **pw.to_dict()}
    lines = [f'{doc.m}x{doc.n} group-basis matrix']
    for piece in payload['regions']:
        lines.append(f"  {piece['region']:<18} (a, b, c) = {tuple(piece['counts'])}  dim = {piece['closed_form']}")
    for bv in pw.boundary:
        mark = '' if not bv.mismatches else '  DISCONTINUOUS'
        lines.append(f'  boundary {str(bv.params):<14} dim = {bv.dim}{mark}')
    _emit(args, payload, '\n'.join(lines))
    return EXIT_OK if pw.continuous else EXIT_FAILED


def _report(args, mode: str, report, extra: dict) -> int:
    payload = {'mode': mode, 'input_digest': None, **extra, **report.to_dict()}
    failed = len(report.failures)
    lines = [str(c) for c in report.checks]
    lines.append(f'{len(report.checks)} checks, {failed} failed')
    _emit(args, payload, '\n'.join(lines))
    return EXIT_OK if report.passed else EXIT_FAILED


def run_verify(args, cfg) -> int:
    points = load_grid(cfg.VERIFY.GRID, cfg.VERIFY.GRID_FILE)
    report = verify(points, cfg, depth=cfg.VERIFY.DEPTH, seed=cfg.RUNTIME.SEED,
                    n_jobs=cfg.RUNTIME.N_JOBS, progress=cfg.RUNTIME.PROGRESS)
    return _report(args, 'verify', report, {'grid': cfg.VERIFY.GRID, 'depth': cfg.VERIFY.DEPTH})


def run_selftest_mode(args, cfg) -> int:
    report = run_selftest(cfg, seed=cfg.RUNTIME.SEED, n_jobs=cfg.RUNTIME.N_JOBS, progress=cfg.RUNTIME.PROGRESS)
    return _report(args, 'selftest', report, {})


def run(args) -> int:
    logger.remove()
    logger.add(sys.stderr, level=args.log_level)
    try:
        cfg = build_config(args)
        logger.debug(f'config:\n{pprint.pformat(lower_config(cfg))}')
        if args.mode in ('dim', 'piecewise'):
            text = _read_input(args.input)
            digest = hashlib.sha256(text.encode('utf-8')).hexdigest()
            return (run_dim if args.mode == 'dim' else run_piecewise)(args, cfg, text, digest)
        if args.mode == 'verify':
            return run_verify(args, cfg)
        return run_selftest_mode(args, cfg)
    except INPUT_ERRORS as err:
        logger.error(f'{type(err).__name__}: {err}')
        return EXIT_INPUT
    except (ConstancyViolationError, NonRepresentableError) as err:
        logger.error(f'{type(err).__name__}: {err}')
        return EXIT_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(parse_args(argv))


if __name__ == '__main__':
    sys.exit(main())
