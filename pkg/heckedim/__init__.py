from .dihedral import InvalidParamsError, Params, Word
from .document import format_document, parse_matrix
from .hecke import Basis, HeckeElem, convert_basis, inner_product, mul
from .kernel_dim import DimResult, dim_ker, dim_piecewise, dims_of_K, kernel_dimension, split_gw

__version__ = '0.1.0'
