"""Lambda calculus reduction engines and their cost measures.

Tree reducers, weak environment machines, simple types with redex degrees,
Levy labels for redex families and a sharing-graph optimal reducer, all
counting the work they do so the engines can be compared on the same terms.
"""

from .terms import (Abs, App, ParseError, Term, Var, alpha_eq, church, free_vars, parse,
                    parse_definitions, pretty, size, substitute, term1, term2)
from .strategies import (Outcome, ReductionStats, evaluate_weak, reduce_applicative,
                         reduce_normal_order)
from .degree import (Untypable, degree_of_term, degree_of_type, infer_type, parallel_normalize,
                     parallel_step, typable)
from .families import FamilyReport, count_families
from .sharing import Net, NetStats, find_active_pairs, interact, normalize, readback, to_dot, translate

__version__ = "0.1.0"
