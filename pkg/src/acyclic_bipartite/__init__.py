"""Longest paths in uniformly random acyclic orientations of K_{n,k}."""

from .distribution import (
    PathLengthDistribution,
    ProbabilityGeneratingPolynomial,
    class_count_b,
    class_count_c,
    class_count_d,
    longest_path_counts,
    max_path_length,
    mean_exact,
    pgf,
    variance_exact,
)
from .exact import StirlingTable, factorial, poly_bernoulli, stirling2
from .orientations import (
    ClassSignature,
    OrientationMatrix,
    brute_force_distribution,
    class_signature,
    is_acyclic,
    is_lonesum,
    longest_path_dag,
    longest_path_via_classes,
    normalize_staircase,
)
from .sampler import empirical_distribution, make_rng, sample_orientation
from .series import TruncatedSeries, expand_B, expand_F, expand_parity_parts

__version__ = "0.1.0"
