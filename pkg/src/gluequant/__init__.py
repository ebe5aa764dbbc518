"""Lattice quantizers from coset gluing.

Constructs lattices as unions of coset translates of a product lattice,
enumerates every glue group that makes the union a lattice, and evaluates the
resulting quantizers: Monte Carlo normalized second moments with error bars,
facet and kissing counts, and packing/covering figures.
"""

from . import catalog
from ._kernel import BACKEND as KERNEL_BACKEND
from .core import (
    Lattice,
    coordinates,
    dual,
    make_lattice,
    membership,
    product,
    read_generator_text,
    write_generator_text,
)
from .cvp import (
    CvpResult,
    DecoderContext,
    all_closest_points,
    closest_point,
    context_for,
    enumerate_within,
)
from .geometry import (
    VoronoiSummary,
    ball_volume,
    coset_shell_count,
    covering_radius_sample_bound,
    minimal_vectors,
    packing_density,
    relevant_vectors,
    summarize,
    thickness,
    verify_hole,
)
from .glue import (
    GlueGroup,
    GluedLattice,
    GlueVector,
    add_mod_lattice,
    builtin_symmetries,
    enumerate_glue_groups,
    glue_words,
    glued_generator,
    group_from_json,
    group_to_json,
    is_group,
    is_product_group,
    reduce_by_symmetry,
    standard_glue_vectors,
)
from .nsm import (
    CovarianceEstimate,
    NsmEstimate,
    estimate_covariance,
    estimate_nsm,
    optimize_scale_with_z,
    product_nsm,
)

__version__ = "0.1.0"
