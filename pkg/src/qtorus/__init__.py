"""Exact structure computations for q-commutative power and Laurent series
rings k_q[[x_1..x_n]] at roots of unity: PI degree, the central sublattice,
the positive-diagonal criterion for the centers, and truncated skew-series
arithmetic, each cross-checked against brute-force enumeration.
"""

from .coeff import FieldSpec, cyclotomic_polynomial, get_field, root_power
from .commutation import CommutationData, ordering_exponent, sigma_exponent, validate
from .kernels import BACKEND as KERNEL_BACKEND
from .lattice import (
    DiagonalVerdict,
    LatticeBasis,
    SNFResult,
    hermite_normal_form,
    image_cardinality,
    kernel_lattice,
    minimal_axis_multiples,
    pi_degree,
    positive_diagonal_decision,
    smith_normal_form,
)
from .report import (
    Config,
    StructureReport,
    analyze,
    corpus_paths,
    load_config,
    parse_config,
    render_text,
)
from .series import (
    INF,
    SkewSeries,
    central_coordinates,
    is_central,
    series_add,
    series_invert,
    series_mul,
    series_scale,
)

__version__ = "0.1.0"
