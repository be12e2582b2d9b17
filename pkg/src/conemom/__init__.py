"""Momentum construction on Kaehler cones over eta-Einstein Sasaki manifolds.

Exact profile construction and classification, certified critical
constants, potentials by quadrature, toric diagram checks and the
Ricci-flat asymptotics.
"""

__version__ = "0.1.0"

from conemom.classify import (  # noqa: E402
    ClassificationReport,
    Verdict,
    einstein_check,
    endpoint_behavior,
    solve_c0,
    theorem_verdict,
)
from conemom.curvature import (  # noqa: E402
    RationalFunction,
    laplacian_radial,
    ricci_coefficients,
    scalar_curvature,
    volume_density,
)
from conemom.errors import ConemomError  # noqa: E402
from conemom.exactalg import Poly, root_order_at, smallest_positive_root, sturm_count  # noqa: E402
from conemom.lattice import smith_normal_form  # noqa: E402
from conemom.profile import (  # noqa: E402
    BoundaryPreset,
    Profile,
    ProfileParams,
    build_profile,
    eval_phi,
    eval_phi_prime,
    positivity_domain,
    profile,
)
from conemom.sasaki import EtaEinsteinData, LineBundleData, d_homothety, kappa_for_bundle  # noqa: E402

__all__ = [
    "BoundaryPreset",
    "ClassificationReport",
    "ConemomError",
    "EtaEinsteinData",
    "LineBundleData",
    "Poly",
    "Profile",
    "ProfileParams",
    "RationalFunction",
    "Verdict",
    "build_profile",
    "d_homothety",
    "einstein_check",
    "endpoint_behavior",
    "eval_phi",
    "eval_phi_prime",
    "kappa_for_bundle",
    "laplacian_radial",
    "positivity_domain",
    "profile",
    "ricci_coefficients",
    "root_order_at",
    "scalar_curvature",
    "smallest_positive_root",
    "smith_normal_form",
    "solve_c0",
    "sturm_count",
    "theorem_verdict",
    "volume_density",
]
