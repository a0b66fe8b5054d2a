"""Exact q-series engine for level-m theta functions, Jacobi thetas,
Dedekind eta, Appell-type mock theta sums, and a verification suite for the
identities connecting them."""

from .errors import (AmbientOrderTooSmall, InsufficientPrecision, InvalidLevel,
                     MockformsError, ModeUnsupported, NearPole, NotAUnit,
                     OrderMismatch, PoleAtQZero, RankUnstable)
from .mock import PhiParams, numerator, phi_numeric, phi_symbolic
from .numeric import NumericPoint, sample_points
from .registry import CATALOGUE, IdentityCase, Report, run_case, run_suite
from .ring import (CycNumber, ExpRational, SignVariant, cyc_add, cyc_is_zero,
                   cyc_mul, cyc_neg, frac, lift_order, root_of_unity, sigma)
from .series import (QXSeries, add, equal_up_to, evaluate, geom_expand,
                     invert_unit, mono_scale, mul)
from .special import (AffineArg, ThetaSpec, eta, euler_product, theta,
                      theta_at_zero, theta_diff, vartheta)
from .spans import (SpanProblem, build_CHnum, build_Theta, build_U, build_V,
                    decompose_in_span, span_dim, span_equal)

__version__ = "0.1.0"
