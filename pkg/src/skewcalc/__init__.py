"""Seminorm analytics for skew polynomial rings and twisted tensor series."""

from .scalars import GaussianRational
from .words import (
    EMPTY_INTERVAL,
    Interval,
    canonical_word,
    counts,
    extremal_twists,
    interval,
    partial_sum,
    word_from_str,
    word_to_str,
)
from .bases import (
    BaseSpec,
    DiagonalAut,
    EntirePoly,
    Exactness,
    FreeSeries,
    IdentityAut,
    IntervalPoly,
    PolyDerivation,
    ScaleAut,
    ShiftAut,
    UnsupportedAutomorphism,
    entire_seminorm,
    free_seminorm,
    generic_twisted_upper_bound,
    interval_seminorm,
)
from .ore import (
    LaurentOrePoly,
    alpha_derivation_check,
    laurent_series_norm,
    localizability_probe,
    oc_star_norm_table,
    ore_mul,
)
from .tensor import (
    TwistedSeries,
    embed_ore,
    i_w_apply,
    mul,
    single_variable_norm,
    twisted_norm,
)
from .quotient import (
    CannotCertifyError,
    QuotientClass,
    Verdict,
    canonical_representative,
    collapse_bidegree,
    ideal_member,
    phi,
    quotient_norm,
    reduce_to_ore,
    relators,
    vanishing_test,
)
from .parsing import (
    ConfigError,
    ParseError,
    format_element,
    parse_config_text,
    parse_expr,
    parse_scalar,
)
from .oracles import (
    SearchBudget,
    bruteforce_twisted_norm,
    exhaustive_word_check,
    slice_quotient_norm,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
