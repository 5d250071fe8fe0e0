"""Solutions of a*K + b = q**N, their periodic structure and padding choices."""
from andyn.arith import find_solutions, geometric_sequence, padding_boolean, padding_q, periodicity

for a, b, q in [(2, 4, 2), (3, 5, 2), (4, 2, 2), (7, 3, 3)]:
    sols = [(w.K, w.N) for w in find_solutions(a, b, q, 12)]
    gs = geometric_sequence(a, b, q)
    print(f"a={a} b={b} q={q}: solutions {sols}")
    print(f"  periodicity {periodicity(a, b, q)}; sequence "
          + (f"N0={gs.N0} mu={gs.mu}" if gs else "none"))

# Boolean padding for a=3, b=5 and one pumped copy per assignment bit
for s in range(4):
    L = padding_boolean(3, 5, 2, s)
    print(f"s={s}: padding {L}, total {3 * (2 * 2 ** s + L) + 5}")
print("q=3 padding for a=2, b=9:", padding_q(2, 9, 3, 1, 1, 1))
