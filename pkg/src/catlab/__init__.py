"""catlab: majorization-based catalysis toolkit.

Conversion checks under the thermal order, catalyst constructions, error
bounds, exact channel dilations and Monte Carlo experiments over the
probability simplex.
"""

__version__ = "0.1.0"

from .simplex import (CapError, ProbVec, Seed, direct_sum, sort_desc, tensor,
                      tensor_power, trace_distance)
from .entropy import (AlphaGrid, SupportError, ThermalContext, embed,
                      entropy_variance, free_energy, rationalize_gibbs,
                      relative_entropy, relative_entropy_variance,
                      renyi_divergence, renyi_entropy, shannon)
from .majorization import (TMCurve, eps_catalytic_step, flattest_state,
                           majorization_margin, majorizes, thermo_majorizes,
                           tm_curve, tm_margin)
from .catalysis import (ConversionParams, ConversionRate, DuanSpec,
                        catalyst_error_budget, conversion_rate,
                        copies_lower_bound, duan_catalysis_check, duan_state,
                        embezzlement_bound, min_k_copy, second_laws_holds)
from .convexsplit import (MixState, convex_split_bound, mix_channel,
                          register_marginal, theorem1_error_curve,
                          verify_convex_split)
from .dilation import (PermutationDilation, RationalChannel, apply_dilation,
                       build_dilation)
from .experiments import (ExperimentConfig, SamplerKind, classify_target,
                          estimate_f, estimate_psucc, kcopy_fraction,
                          run_experiment, sample_catalyst)
