from .flat import (Atom, Compute, Const, DeltaVariant, FlatQuery, RuleIR, compile_query,
                   compile_rule, delta_expand)
from .join import JoinStats, generic_join, plan_order
