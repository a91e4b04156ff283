"""Popular winning sets of matchings for house allocation, marriage and roommates."""

from .core import (UNMATCHED, Comparison, Instance, InstanceError, Matching, MatchingError,
                   PopularityTally, PreferenceOrder, ProblemKind, Side, Vote, WinningSet,
                   compare_partners, favorites, is_at_least_as_popular, phi)
from .house import HouseRunTrace, InvariantViolation, solve_house
from .instances import (GeneratorConfig, gadget, house_to_ties_marriage,
                        house_to_weighted_marriage, random_instance)
from .marriage import gale_shapley, solve_marriage
from .oracle import (DimensionResult, OracleGuardError, VerificationReport,
                     enumerate_matchings, popular_dimension, verify_winning_set)
from .roommates import (build_auxiliary, solve_roommates, solve_roommates_general,
                        solve_roommates_strict)
from .coloring import three_edge_color
from .solvers import solve

__version__ = "0.1.0"
