"""Belief and plausibility of interval events.

A model assigns probability mass to focal elements (finite unions of
closed intervals).  The belief of an event is the mass of focal elements
contained in it; the plausibility is the mass of those merely touching it.
"""

from beliefclt import (
    BeliefModel,
    FocalElement,
    IntervalEvent,
    belief,
    plausibility,
    total_monotonicity_check,
    validate_model,
)

# A coin whose probability of heads is only known to lie in [0.3, 0.7]:
# mass 0.3 says "heads", mass 0.3 says "tails", and mass 0.4 stays
# undecided on the whole outcome set {0, 1}.
model = BeliefModel.make(
    [(FocalElement.make([(1.0, 1.0)]), 0.3),
     (FocalElement.make([(0.0, 0.0)]), 0.3),
     (FocalElement.make([(0.0, 1.0)]), 0.4)],
    bound=1.0,
)
assert validate_model(model) == []

heads = IntervalEvent.point(1.0)
print("belief(heads)       =", belief(model, heads))
print("plausibility(heads) =", plausibility(model, heads))
print("the gap is the undecided mass:", plausibility(model, heads) - belief(model, heads))

# Conjugation: plausibility is one minus the belief of the complement.
print("\n1 - belief(not heads) =", 1.0 - belief(model, heads.complement()))

# Events form an interval algebra; complements and intersections of
# half-lines behave as expected.
at_most_half = IntervalEvent.less_than(0.5)
print("\nbelief(X < 0.5)  =", belief(model, at_most_half))
print("belief(X >= 0.5) =", belief(model, IntervalEvent.at_least(0.5)))
print("the two beliefs need not sum to 1 under imprecision")

# Total monotonicity: for events generated by a finite grid, the
# inclusion-exclusion inequalities of order 2 and 3 hold.
for order in (2, 3):
    report = total_monotonicity_check(model, grid=[0.0, 0.5, 1.0], order=order)
    print(f"\norder-{order} monotonicity over the grid: passed={report.passed}")

# Focal elements may be unions with gaps; containment needs the whole set.
split = BeliefModel.make(
    [(FocalElement.make([(0.0, 1.0), (2.0, 3.0)]), 0.6),
     (FocalElement.make([(-2.0, -1.0)]), 0.4)],
    bound=3.0,
)
covering = IntervalEvent.closed(0, 1).union(IntervalEvent.closed(2, 3))
print("\nsplit focal element is contained in the matching union:",
      belief(split, covering))
print("but not in the hull's interior gaps:",
      belief(split, IntervalEvent.closed(0.5, 2.5)))
