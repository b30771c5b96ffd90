"""Count skew braces of each small order up to isomorphism."""

import time

from skewbrace import enumerate_braces, gaschutz_check

start = time.perf_counter()
for n in range(1, 13):
    braces = enumerate_braces(n)
    gas = [gaschutz_check(B) for B in braces]
    applicable = sum(r.applicable for r in gas)
    print(f"n={n:2}  braces {len(braces):3}  Frat = 0 in {applicable:3}  Gaschutz holds: {all(r.holds for r in gas if r.applicable)}")
print(f"{time.perf_counter() - start:.2f}s")
