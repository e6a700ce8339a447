"""Eventual positivity of powers of Laurent polynomials with smooth Newton polytopes"""

from .laurent import LaurentPolynomial, add, mul, power, evaluate, support
from .expr_parser import ExprSource, parse, parse_expression, format_polynomial
from .polytope import LatticePolytope, newton_polytope, lattice_points, is_smooth, facet_presentation
from .fan_group import NormalFan, build_normal_fan, relation_lattice, in_irrelevant_set
from .homogenize import HomogenizedPolynomial, homogenize, evaluate_homog
from .positivity import (analyze, check_pos1, check_pos2, check_pos3, find_k0,
                         is_fully_positive, positive_on_orthant)
from .markov import PolyMatrix, is_irreducible, is_aperiodic, spectral_radius_at, verify_beta_equals
from .config import SamplerConfig, load_config
from .verdicts import Status, Verdict

__all__ = [
    'LaurentPolynomial', 'add', 'mul', 'power', 'evaluate', 'support',
    'ExprSource', 'parse', 'parse_expression', 'format_polynomial',
    'LatticePolytope', 'newton_polytope', 'lattice_points', 'is_smooth', 'facet_presentation',
    'NormalFan', 'build_normal_fan', 'relation_lattice', 'in_irrelevant_set',
    'HomogenizedPolynomial', 'homogenize', 'evaluate_homog',
    'analyze', 'check_pos1', 'check_pos2', 'check_pos3', 'find_k0',
    'is_fully_positive', 'positive_on_orthant',
    'PolyMatrix', 'is_irreducible', 'is_aperiodic', 'spectral_radius_at', 'verify_beta_equals',
    'SamplerConfig', 'load_config',
    'Status', 'Verdict',
]
