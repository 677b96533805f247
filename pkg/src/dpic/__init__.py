"""Combinatorial invariants of derived Picard groups of hereditary path algebras."""

__version__ = "0.1.0"

from .catalog import builtin, full_catalog
from .errors import (ConsistencyError, DpicError, DslSyntaxError, InputError,
                     InsufficientRadiusError, InsufficientWindowError,
                     UnsupportedQuiverError)
from .groups import (CombinatorialElement, GroupPresentation, SymbolicFactor,
                     check_relation, dpic_describe, element_equal,
                     element_invert, element_multiply, element_power,
                     fractional_cy_check,
                     out0_description, pic_describe)
from .knitting import KnittedQuiver, SigmaNormalForm, knit, sigma_normal_form, \
    sigma_permutation
from .ktheory import (cartan, coxeter_matrix, bgp_reflect, groupoid_walk,
                      reflection, source_admissible_ordering,
                      verify_reflection_product, weyl_group, weyl_root_orbit)
from .meshcat import (HomSpace, PathSpace, hom_dim, hom_space,
                      hom_window_bounds, path_space, verify_mesh_nilpotence)
from .quiver import (Arrow, GraphType, Quiver, aut_quiver, aut_vertices_d,
                     classify)
from .translation import (Mesh, SliceAutomorphism, TauCommutingGroup, ZV,
                          ZQuiverWindow, aut_commuting_with_tau, build_window,
                          meshes, polarization, sigma_shift, tau, tau_inv)

__all__ = [name for name in dir() if not name.startswith("_")]
