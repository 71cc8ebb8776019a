"""Rook-placement complexes: exact homology, mapping degrees, and colored
Tverberg certificate search."""

__version__ = "0.1.0"

from .errors import (IntegrityError, MalformedInputError, NonOrientableError,
                     ParameterError)
from .simplicial import (IntegerChain, IntegerMatrix, SimplicialComplex,
                         boundary_matrix, build_complex, chain_boundary, join,
                         map_chain, simplex_skeleton)
from .chessboard import (FreenessReport, PermutationAction,
                         RepresentationSphereModel, SimplicialMap,
                         canonical_projection, chessboard_complex,
                         connectivity_bound, cyclic_row_action,
                         cyclic_shift_action, is_equivariant, is_free_action,
                         join_actions, join_maps, representation_sphere,
                         row_permutation_action, row_permutation_map)
from .homology import (HomologyProfile, SmithNormalFormResult,
                       connectivity_probe, homology, reduced_homology,
                       smith_normal_form)
from .degree import (CongruenceReport, DegreeReport, FundamentalClass,
                     PseudomanifoldReport, congruence_audit,
                     degree_by_preimage, degree_homological, degree_report,
                     enumerate_equivariant_maps, orient, orientation_character,
                     pseudomanifold_check)
from .geometry import (ColoredConfig, ColoredPoint, IntersectionCertificate,
                       ScenarioReport, ScenarioSpec, common_point_lp,
                       enumerate_rainbow_partitions, make_scenario,
                       parse_config, random_config, run_scenario, run_trials,
                       scenario_inequality, verify_certificate)
