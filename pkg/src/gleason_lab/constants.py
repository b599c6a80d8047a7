"""Frozen reference values for the reproduction report.

Everything the `reproduce` command checks lives here, stated once, so the
report compares computed quantities against constants rather than against
other computed quantities.
"""

import math

# Pole-pinned assignment evaluated on the four axis measurements
# (x, z and the two tilted axes): outcome probabilities per slot.
# The z row is (0, 1) because the assignment collapses onto the poles;
# every other axis stays at the half/half trace value.
EXPECTED_OUTCOME_PROBABILITIES = {
    "M_x": (0.5, 0.5),
    "M_z": (0.0, 1.0),
    "M_r": (0.5, 0.5),
    "M_s": (0.5, 0.5),
}

# First-outcome probability of the equal x/z mixture under the pole-pinned
# assignment: half of (1/2 + 0).
EXPECTED_XZ_MIX_FIRST = 0.25

# First-outcome probability of the reweighted tilted-axis mixture under the
# same assignment: both slots sit at 1/2, so any weights give 1/2.
EXPECTED_RS_MIX_FIRST = 0.5

# Weights that make the tilted-axis mixture reproduce the equal x/z mixture
# effect-by-effect.
MIX_WEIGHT_PLUS = (1.0 + 1.0 / math.sqrt(3.0)) / 2.0
MIX_WEIGHT_MINUS = (1.0 - 1.0 / math.sqrt(3.0)) / 2.0

# Bloch coefficients of the shared first effect of both mixtures.
SHARED_EFFECT_BLOCH = (0.5, 0.25, 0.0, 0.25)

# Depolarized-trine geometry: the trine stays outside the projective hull
# down to visibility sqrt(3)/2; its distance to the hull (equals the
# separator margin reported by the membership test) follows from the
# critical visibility and the trine's distance to its trace-preserving
# center, sqrt(2/3).
TRINE_CRITICAL_VISIBILITY = math.sqrt(3.0) / 2.0
TRINE_MARGIN = (1.0 - TRINE_CRITICAL_VISIBILITY) * math.sqrt(2.0 / 3.0)
