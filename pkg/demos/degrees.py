# Simple types, redex degrees and parallel (Takahashi) steps.
from lamlab import degree_of_term, infer_type, parallel_normalize, parse, pretty
from lamlab.degree import redex_reports, typable
from lamlab import corpus

for src in ["I", "two", "church 2 two I I", r"(\f x.f (f x)) (\y.y) z"]:
    t = parse(src)
    nf, steps = parallel_normalize(t)
    print(f"{src:28} : {infer_type(t)}")
    for r in redex_reports(t):
        print("    redex", r.position, r.redex_type, "degree", r.degree)
    print(f"    degree {degree_of_term(t)}, parallel steps {steps}, normal form {pretty(nf)}")

# the step count never exceeds the degree
terms = corpus.generate(300, seed=3, typed=True)
worst = max(parallel_normalize(t)[1] - degree_of_term(t) for t in terms)
print("max(steps - degree) over", len(terms), "typed terms:", worst)

print(typable(parse(r"\x.x x")))
