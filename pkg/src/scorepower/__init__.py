"""Exact voting-power analysis of weighted scoring committees.

Three-or-more weighted players pick one of several alternatives by a
scoring rule (plurality, Borda, antiplurality, or anything in between);
this package tabulates the full profile-to-winner mapping with exact
rational arithmetic, measures each player's generalized Penrose-Banzhaf
power by exhaustive swing counting, enumerates the structural equivalence
classes of weight distributions, and renders the color-coded simplex maps
of voting power.
"""

from .equivalence import (
    CanonicalMapping,
    EquivalenceClass,
    EquivalenceClassSet,
    WeightGrid,
    canonical_mapping,
    class_count_sweep,
    count_classes,
    enumerate_classes,
    equivalent,
    minimal_reference_weights,
    structurally_equivalent,
)
from .errors import (
    CacheError,
    ContractViolationError,
    ParseError,
    ScorepowerError,
    SearchBoundError,
    ShapeError,
    SizeLimitError,
)
from .gridsweep import SweepResult, sweep
from .model import (
    PowerVector,
    Profile,
    Ranking,
    RuleMapping,
    ScoringCommittee,
    ScoringVector,
    enumerate_rankings,
    normalize_scoring_vector,
    parse_profile,
    parse_ranking,
    parse_rational,
    parse_weights,
    profile_from_index,
    profile_index,
)
from .power import dictator_swing_count, is_swing, pbi, swing_count
from .render import (
    Extremes,
    SimplexImage,
    color_at,
    color_of,
    render_map,
    render_series,
)
from .scoring import ScoreTotals, rule_mapping, score_totals, winner

__version__ = "0.1.0"
