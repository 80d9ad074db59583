"""zetascape: complex dynamics of the Riemann zeta function and friends.

Evaluates zeta / eta / xi / Dirichlet L anywhere in the plane, catalogs
critical points and zeros, iterates the additive and multiplicative
parameter families, computes transfer-function analyses, and renders
deterministic tiles for the explorer UI.
"""
from .characters import CharacterTable, characters, dirichlet_l, hurwitz_zeta
from .criticals import (CriticalKind, CriticalPoint, ZeroLocation,
                        find_real_criticals, find_unreal_criticals,
                        find_zeros, quasi_critical, resolve_critical_label)
from .dynamics import (FamilyKind, IterationParams, OrbitResult, OrbitStatus,
                       PointClass, classify_point, cycle_multiplier,
                       iterate_orbit)
from .errors import PoleError, UnsupportedFunctionError
from .farey import FareyStats, farey, mediant, rh_stats
from .functions import eval_derivative, eval_function
from .gammafn import gamma, log_gamma
from .params import (ETA, QUADRATIC, ROSETTA, XI, ZETA, EvalMode, EvalParams,
                     FunctionId, FunctionTag, dirichlet, parse_complex,
                     parse_function_id)
from .render import (ESCAPE_STEPS, PORTRAIT, STEP_PERIOD, ColorScheme,
                     ImageTile, MarkerKind, SchemeTag, Viewport,
                     render_julia, render_overlays, render_parameter_plane,
                     render_portrait)
from .transfer import (FixedValue, TransferAnalysis, find_fixed_values,
                       principal_point, transfer_value)
from .zetafn import eta, xi, zeta, zeta_deriv

__version__ = "0.1.0"
