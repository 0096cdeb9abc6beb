# How much walking does readback do per node of the result?
# Reported only: nothing here claims a bound.
import numpy as np

from lamlab import parse, size
from lamlab.sharing import reduce_optimal

rows = []
for n in range(1, 9):
    # n two reduces to the numeral 2^n, a result of exponential size
    nf, stats, _ = reduce_optimal(parse(f"church {n} two"))
    rows.append((n, size(nf), stats.readback_steps, stats.total_interactions))

rows = np.array(rows)
print(" n  result size  readback steps  ratio  interactions")
for n, sz, rb, tot in rows:
    print("%2d %12d %15d %6.2f %13d" % (n, sz, rb, rb / sz, tot))
