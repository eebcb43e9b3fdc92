"""Hurwitz-Lerch zeta and Euler-Zagier double zeta distributions.

Evaluation of Phi(s, a, z) and Phi_2(s1, s2, a, z1, z2) across their series
and integral-continuation regimes, the probability distributions built from
their Gamma-weighted normalizations (densities, characteristic functions,
CDFs, samplers), and numerical verification scans for the sign lemmas and
bound inequalities that make those distributions valid.
"""

from .backend import BACKEND
from .dist_double import (DoubleDistSpec, DoubleRegime, cf2, density2,
                          double_region_ok, marginal_eta, marginal_theta,
                          sample2, validate_double)
from .dist_single import (SampleBatch, SingleDistSpec, SingleRegime, cdf, cf,
                          density, quantile, sample, single_region_ok,
                          validate_single)
from .double_zeta import (DoubleZetaParams, DoubleZetaRegime, cal_h,
                          classify_double, gamma2_phi2, phi2_case,
                          phi2_series, zeta2_continued, zeta2_em)
from .errors import (DomainError, InvalidDistribution, NonConvergence,
                     PoleError, RegionError, ZetaDistError)
from .lerch import (LerchParams, LerchRegime, classify_lerch, gamma_phi,
                    h_kernel, hurwitz_zeta, phi, phi_series)
from .numerics import (QuadratureConfig, QuadratureResult, gamma,
                       integrate_halfline, integrate_plane,
                       integrate_realline, log_gamma)
from .verify import (RasaConstants, ScanReport, cf_bound_scan,
                     exceedance_search, fourier_check, positivity_scan,
                     rasa_bound, real_zero_search, scan_real_zero,
                     sign_scan_calh, sign_scan_h, solve_y0)

__version__ = "0.1.0"
