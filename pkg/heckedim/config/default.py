from yacs.config import CfgNode as CN
_CN = CN()

##############  Rank oracle  ##############
_CN.RANK = CN()
# evaluation points for rank_by_evaluation, drawn without repetition
_CN.RANK.EVAL_POINTS = ['1', '-1', '2', '-2', '3', '-3', '5', '-5', '7', '-7',
                        '1/2', '-1/2', '1/3', '-1/3']
_CN.RANK.POINTS_PER_DRAW = 5
_CN.RANK.DRAWS = 3  # independent redraws before the fraction-free rank is trusted alone

##############  Piecewise mode  ##############
_CN.PIECEWISE = CN()
# one primary sample per open region: (qs*qt<1, qs>qt), (qs*qt<1, qs<qt), (qs*qt>1, qs<qt), (qs*qt>1, qs>qt)
_CN.PIECEWISE.PRIMARY_SAMPLES = [['1/2', '1/3'], ['1/3', '1/2'], ['2', '3'], ['3', '2']]
_CN.PIECEWISE.EXTRA_SAMPLES = 2
_CN.PIECEWISE.RESAMPLE_ATTEMPTS = 2
_CN.PIECEWISE.SAMPLE_POOL = ['1/5', '1/4', '2/5', '1/2', '2/3', '3/4', '4/5',
                             '5/4', '4/3', '3/2', '2', '5/2', '3', '4', '5']
# r values for boundary points (r, r) and (r, 1/r); the corner (1, 1) is always added
_CN.PIECEWISE.BOUNDARY_SAMPLES = ['1/3', '1/2', '2', '3']

##############  Spectral verification  ##############
_CN.VERIFY = CN()
_CN.VERIFY.DEPTH = 12
_CN.VERIFY.GRID = 'square'  # a name in configs/grids.yml or an inline 'qs:qt,qs:qt' list
_CN.VERIFY.GRID_FILE = 'configs/grids.yml'
_CN.VERIFY.FLOAT_TOL = 1e-9
_CN.VERIFY.DIVERGENCE_ITERATIONS = 50
_CN.VERIFY.NON_DECAY_FRACTION = 0.5  # |M^n m| >= fraction * |m| counts as non-decay
_CN.VERIFY.ORTHOGONALITY_DEPTHS = [4, 16]
_CN.VERIFY.ORTHOGONALITY_BOUND = 1e-4

##############  Certificates  ##############
_CN.CERT = CN()
_CN.CERT.SEARCH_BOUND = 4  # L1 radius of the dim-only certificate search

##############  Runtime  ##############
_CN.RUNTIME = CN()
_CN.RUNTIME.SEED = 0
_CN.RUNTIME.N_JOBS = 1
_CN.RUNTIME.PROGRESS = True

##############  Selftest sizes  ##############
_CN.SELFTEST = CN()
_CN.SELFTEST.GRID = 'rational20'  # items on closed-form dims, realizations and orthogonality
_CN.SELFTEST.SQUARE_GRID = 'square'  # exact residual checks need square-rational parameters
_CN.SELFTEST.RANDOM_MATRICES = 200
_CN.SELFTEST.PARAMS_PER_MATRIX = 5
_CN.SELFTEST.MAX_SIZE = 3
_CN.SELFTEST.MAX_WORD_LENGTH = 2
_CN.SELFTEST.PIECEWISE_MATRICES = 20
_CN.SELFTEST.BOUNDARY_R = ['1/5', '1/4', '1/3', '1/2', '2/3', '3/2', '2', '3', '4', '5']
_CN.SELFTEST.RANK_MATRICES = 100
_CN.SELFTEST.RANK_MAX_SIZE = 4
_CN.SELFTEST.RANK_MAX_DEGREE = 3
_CN.SELFTEST.RESIDUAL_DEPTH = 8
_CN.SELFTEST.RECURRENCE_POINTS = [['1/4', '4/9'], ['9/4', '4/9']]
_CN.SELFTEST.ORTHOGONALITY_POINT = ['1/4', '1/9']
_CN.SELFTEST.ALGEBRA_TRIPLES = 500


def get_cfg_defaults():
    """Get a yacs CfgNode object with default values for heckedim."""
    # Return a clone so that the defaults will not be altered
    return _CN.clone()
