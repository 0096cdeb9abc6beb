# Redex families (Levy labels) against the sharing-graph reducer.
from lamlab import count_families, parse, pretty
from lamlab.sharing import normalize, readback, reduce_optimal, to_dot, translate
from lamlab.terms import delta_fi, fi_fi, term1

# (\x.x x) ((\z.z y) I): the copied redex is one family
rep = count_families(delta_fi())
print(pretty(delta_fi()))
print(rep.render())

# writing the argument twice by hand loses the sharing
rep = count_families(fi_fi())
print(pretty(fi_fi()))
print(rep.render())

# the graph reducer fires one beta per family
for t in (delta_fi(), fi_fi(), term1(3)):
    nf, stats, status = reduce_optimal(t)
    print("%-40s families=%d  beta=%d  bookkeeping=%d  -> %s"
          % (pretty(t), count_families(t).distinct_families, stats.beta_interactions,
             stats.bookkeeping_interactions, pretty(nf)))

# scheduling that ignores neededness pays for discarded arguments
t = parse(r"(\x.y) ((\x.y) y)")
for order in ("fifo", "lazy"):
    print(order, reduce_optimal(t, order=order)[1].beta_interactions)

# Graphviz text of a small net before and after reduction
net = translate(parse(r"(\x.x x) (\y.y)"))
print(to_dot(net))
net, _ = normalize(net)
print(to_dot(net))
print(pretty(readback(net)))
