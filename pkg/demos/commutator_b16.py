"""Compare the star products of an ideal with its commutator ideal on b16."""

from skewbrace import commutator_ideal, ideal_closure, load_fixture, star_span, star_sum_is_ideal

fx = load_fixture("b16")
B, I = fx.brace, fx.named("I")


def names(elems):
    return ", ".join(fx.label(k) for k in elems)


print("I        =", names(ideal_closure(B, I)))
print("I * I    =", names(star_span(B, I, I)))
print("I*I + I*I is an ideal:", star_sum_is_ideal(B, I, I).is_ideal)
comm = commutator_ideal(B, I, I)
print(f"[I,I]    = {names(comm)}  (order {len(comm)})")
