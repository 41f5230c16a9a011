"""Pseudospectral toolkit for NLS with finite-L^p, infinite-mass data.

Desk-scale numerical machinery on a periodic box: intersection-space norms
(L^p + homogeneous Sobolev), Littlewood-Paley/Besov calculus, the linear
Schrodinger group and its growth diagnostics, Duhamel/Picard and split-step
integrators, and the frequency-truncation globalization loop with its
energy-increment ledger.
"""

from .spectral import (
    Field,
    Grid,
    Multiplier,
    Spectrum,
    apply_multiplier,
    apply_multiplier_field,
    dealias,
    to_field,
    to_spectrum,
)
from .fieldio import read_zfld, write_zfld
from .norms import (
    besov_norm,
    hom_sobolev_norm,
    inhom_sobolev_norm,
    l2_norm,
    littlewood_paley_block,
    lp_norm,
    zhidkov_band_norm,
    zhidkov_norm,
)
from .exponents import (
    AdmissiblePair,
    LwpExponents,
    check_admissible,
    check_window,
    derive_lwp_exponents,
    is_globalizable,
    truncation_beta,
    truncation_theta,
)
from .decomposition import (
    DecompositionResult,
    TruncationParams,
    frequency_split,
    make_truncation_params,
    split_at_frequency,
    zhidkov_decompose,
)
from .evolution import (
    NlsParams,
    PicardConfig,
    Trajectory,
    energy,
    gain_of_integrability_probe,
    linear_zsp_growth_probe,
    mass,
    picard_solve,
    schrodinger_group,
    split_step_solve,
)
from .globalization import (
    EnergyLedger,
    GlobalizationConfig,
    IncrementFit,
    globalize,
    increment_scaling_report,
    truncation_step,
)
from .datafamilies import (
    Custom,
    DataFamily,
    Gaussian,
    PowerTail,
    PureMode,
    synthesize,
)

__version__ = "0.1.0"
