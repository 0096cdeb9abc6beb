# I (n two) I I: the innermost strategy now builds the numeral 2^n first.
import numpy as np

from lamlab import reduce_applicative, reduce_normal_order, term2
from lamlab.fits import extrapolation_check

ns = np.arange(2, 9)
peak = np.array([reduce_applicative(term2(n)).stats.peak_term_size for n in ns])
steps = np.array([reduce_normal_order(term2(n)).stats.beta_steps for n in ns])

print(" n   2^n  innermost peak  outermost steps")
for n, p, s in zip(ns, peak, steps):
    print("%2d %5d %15d %16d" % (n, 2 ** n, p, s))

# Outermost does not escape either: the head (n two) I I still unfolds
# to 2^n identities.  A cubic fitted on small n undershoots the rest.
ok, pred, obs = extrapolation_check(ns, steps, 3, train=5)
print("cubic from n <= 6 predicts", pred.round(1), "observed", obs, "below:", ok)
