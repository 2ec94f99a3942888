"""
Twisted elliptic curves and a Selmer indicator
==============================================
"""

from onan_moonshine.lfun import curve, l_value_at_1, local_data, selmer_indicator

#%%
E = curve(14, -15)
print(E)
print({p: local_data(E, p)[0] for p in (2, 3, 5, 7, 11, 13, 17, 19, 23)})

#%%
# L(E, 1) and the root number from the smoothed sums
for family, D in [(11, -7), (19, -7), (14, -23), (15, -31)]:
    data = l_value_at_1(curve(family, D))
    print(family, D, f"L = {float(data.L1):.8f}", f"w ~ {data.root_number_estimate:.6f}")

#%%
# a(D) against -24 h(D) modulo 11 and 19
for p, D in [(11, -3), (11, -7), (19, -4), (19, -8)]:
    print(p, D, selmer_indicator(p, D, with_l_value=False).summary)
