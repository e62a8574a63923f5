"""Exact Boucksom-Zariski chamber computations on hyperkahler Neron-Severi lattices.

The public surface re-exported here covers the common tasks; the submodules
hold the rest.
"""

from .errors import BZError, InputError, NotBig, NotDecomposable, SingularSystem
from .lattice import ManifoldSpec, Prime, gram_of, qform, signature
from .zariski import (
    Decomposition, decompose_class, decompose_effective, is_big, is_pseudoeffective,
    is_qnef, neg_locus, null_locus, validate_spec,
)
from .chambers import chamber_of, enumerate_blocks, nef_representative, position_in_chamber
from .weyl import chambers_intersect, numerically_determined, weyl_chamber_count, weyl_membership
from .volume import VolumePolynomial, volume, volume_polynomial
from .cones import psef_cone, qnef_cone
from .specfile import dump_spec, load_spec
from .specs import bundled, hilb2

__version__ = "0.1.0"
