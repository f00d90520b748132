"""Taylor series of homotopy solution paths, ratio extrapolation and pole detection."""
from .extrapolation import (
    ALGORITHMS,
    ExtrapolationError,
    ExtrapolationTable,
    MinError,
    aitken_table,
    build_table,
    min_error_to,
    rho_table,
    richardson_table,
    theta_table,
)
from .homotopy import (
    DivergentExpansionError,
    ExpansionFit,
    PoleEstimate,
    fabry_estimate,
    fit_inverse_n_expansion,
    lemma1_check,
    lemma2_check,
    monomial_path_series,
    two_pole_series,
)
from .scalars import I, Domain, QComplex
from .series import (
    PowerSeries,
    RatioSequence,
    SeriesError,
    ZeroCoefficientError,
    binomial_series,
    evaluate,
    multiply,
    ratio_sequence,
    scale_argument,
    series_from_json,
    series_to_json,
)

__version__ = "0.1.0"
