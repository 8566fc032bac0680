"""How boundariness is scored.

A pair of inputs is interesting when the outputs differ a lot while the
inputs differ a little.  The score is output distance over input distance.
"""
from bvexplore import evaluate_pair, get_sut, jaccard_2gram_distance

# Output distance: Jaccard distance between the sets of character bigrams.
print("bigram distance Negative/Positive:", round(jaccard_2gram_distance("Negative", "Positive"), 3))

sign = get_sut("sign")
c = evaluate_pair(sign, (-1,), (1,))
print("sign(-1) vs sign(1):", c.outcome_a.render(), c.outcome_b.render(), "pd =", round(c.pd, 3))

# Wider input gaps dilute the score even when the outputs are the same pair.
for gap in (1, 10, 1000):
    c = evaluate_pair(sign, (-gap,), (gap,))
    print(f"gap {2 * gap:>5}: pd = {c.pd:.5f}")

# Exceptions are outputs too.  Their full text counts, so two different
# error messages still separate.
date = get_sut("date")
c = evaluate_pair(date, (2246, 13, 0), (2246, 12, 0))
print(c.outcome_a.render())
print(c.outcome_b.render())
print("pd =", round(c.pd, 3))
