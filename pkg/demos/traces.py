"""
Dimensions a(D) from traces of singular moduli
==============================================

a(D) is a weighted sum of J_onan over CM points of discriminant D. Each
sum is rounded to an integer only after the error ball certifies it.
"""

from onan_moonshine.traces import trace, trace_table

#%%
for r in trace_table(-24, -3):
    print(f"a({r.D.value:4d}) = {r.a:>16d}  classes={r.class_count}  digits={r.precision}")

#%%
# The raw sum is a ball; its distance to the integer is tiny
r = trace(-163)
print(r.a)
print(r.raw)
print("residual", r.residual)

#%%
# Doubling the precision gives the same integer and an overlapping ball
again = trace(-163, 2 * r.precision)
print(again.a == r.a, again.raw.overlaps(r.raw))
