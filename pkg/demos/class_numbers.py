"""
Reduced forms, class numbers and the Dirichlet formula
=======================================================
"""

import math

from onan_moonshine.arith import is_fundamental
from onan_moonshine.lfun import dirichlet_L1
from onan_moonshine.qforms import class_number, class_representatives, gamma0_class_number, reduce

#%%
# Reduction sends any positive definite form to the unique reduced one
print(reduce((2, -2, 3)))
print(reduce((35, 46, 17)))

#%%
# Reduced forms for a few discriminants
for D in (-3, -4, -20, -23, -84):
    print(D, class_representatives(D))

#%%
# Non-fundamental discriminants pick up imprimitive forms such as (2, 2, 2)
print(class_representatives(-12))

#%%
# h(D) against sqrt|D| L(1, chi_D) / pi
for D in (-23, -47, -71, -163, -1555, -4027):
    if is_fundamental(D):
        L = dirichlet_L1(D)
        print(D, class_number(D), float(L) * math.sqrt(-D) / math.pi)

#%%
# Orbits of the level-p subgroup: between h and (p + 1) h of them
for D, p in [(-7, 2), (-4, 2), (-3, 3), (-23, 5)]:
    print(D, p, len(class_representatives(D)), gamma0_class_number(D, p))
