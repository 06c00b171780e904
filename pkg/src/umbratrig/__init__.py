"""Laguerre-type generalized trigonometric functions and umbral composition rules.

The l-exponential ``sum x**n / (n!)**2`` plays the part of ``exp`` for the
Laguerre derivative ``d/dx x d/dx``; replacing ordinary addition by the
composition ``(x (+) y)**n = sum C(n,r)**2 x**(n-r) y**r`` carries the
addition, duplication and De Moivre theorems over to its cosine and sine.
The same pattern covers the Tricomi/Humbert Bessel families, the
pseudo-hyperbolic functions and an Airy-type cubic family.
"""

from .errors import (ConvergenceError, DivergenceError, DomainError, PoleError,
                     QuadratureError, SupportMismatchError, UmbraTrigError)
from .gtrig_identities import (IdentityKind, IdentityTag, g_alpha, identity_residual, lc,
                               lc_ab, lc_alpha, lch, lissajous_points, ls, ls_ab, ls_alpha,
                               lsh, phf_ch, phf_e, phf_sh, sector_area)
from .series_core import (DerivOp, EvalConfig, SeriesFamily, Tag, apply_derivative, beta,
                          coeff, coefficients, evaluate, gamma)
from .transforms_diffusion import (DiffusionProblem, QuadratureSpec, SpectralDensity,
                                   airy_heat_spectral, borel_transform, g_alpha_integral,
                                   heat_spectral, laguerre_heat_closed, ll_heat_umbral)
from .umbral_algebra import (LAGUERRE, ORDINARY, PHF03, SumFamily, SumTag, UmbralSequence,
                             embed, eval_on_sequence, j0_term, napier_term,
                             phf_roots_average, scale, umbral_sum, weight)

__version__ = "0.1.0"
