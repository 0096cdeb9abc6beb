# Weak evaluation of  n two I I  versus innermost reduction.
# Lazy or strict, closures or not: weak engines pay 2^n identity applications.
import numpy as np

from lamlab import evaluate_weak, reduce_applicative, reduce_normal_order, term1

ns = np.arange(1, 11)

by_name = np.array([evaluate_weak(term1(n), "by_name").stats.identity_firings for n in ns])
by_need = np.array([evaluate_weak(term1(n), "by_need").stats.identity_firings for n in ns])
inner = np.array([reduce_applicative(term1(n)).stats.beta_steps for n in ns])
outer = np.array([reduce_normal_order(term1(n)).stats.beta_steps for n in ns])

print(" n  by_name  by_need  innermost  outermost")
for row in zip(ns, by_name, by_need, inner, outer):
    print("%2d %8d %8d %10d %10d" % row)

# log2 of the weak counts climbs by one per step of n
print("log2 by_need:", np.log2(by_need))

# innermost is a straight line
slope, icpt = np.polyfit(ns, inner, 1)
print("innermost fit: %.2f n + %.2f" % (slope, icpt))
