from equivalence.chart import Chart, Domain, DEFAULT_DOMAIN, NumericChart, natural_chart
from equivalence.signature import (
    invariant_signature,
    signature_columns,
    compare_signatures,
    within_tolerance,
)
from equivalence.matching import Match, damped_newton, match_charts, match_points
from equivalence.verdict import (
    EquivVerdict,
    AtlasVerdict,
    equivalence_test,
    atlas_test,
    EQUIVALENT,
    NOT_EQUIVALENT,
    INCONCLUSIVE,
)

__all__ = [
    "Chart",
    "Domain",
    "DEFAULT_DOMAIN",
    "NumericChart",
    "natural_chart",
    "invariant_signature",
    "signature_columns",
    "compare_signatures",
    "within_tolerance",
    "Match",
    "damped_newton",
    "match_charts",
    "match_points",
    "EquivVerdict",
    "AtlasVerdict",
    "equivalence_test",
    "atlas_test",
    "EQUIVALENT",
    "NOT_EQUIVALENT",
    "INCONCLUSIVE",
]
