"""
The q-expansion of J and its values at CM points
=================================================

J = j - 744 has integer coefficients. We build them from E4 and Delta,
then evaluate J at a few points of the upper half plane.
"""

from onan_moonshine.modfun import J_onan, evaluate_J, j_coefficients
from onan_moonshine.qforms import cm_point

#%%
# The first coefficients, exact integers
J = j_coefficients(10)
for n in range(-1, 11):
    print(f"c({n:2d}) = {J[n]}")

#%%
# Growth: log c(n) is close to 4 pi sqrt(n)
import math

J = j_coefficients(400)
for n in (10, 100, 400):
    print(n, round(math.log(J[n]) / (4 * math.pi * math.sqrt(n)), 4))

#%%
# Balls around J at i, rho and (-1 + sqrt(-7)) / 2
for form in [(1, 0, 1), (1, 1, 1), (1, 1, 2)]:
    value = evaluate_J(cm_point(form), 30)
    print(form, value, "->", value.real.nearest_integer())

#%%
# The O'Nan combination J^2 - J - 393768 at the same points
for form in [(1, 0, 1), (1, 1, 1), (1, 1, 2)]:
    print(form, J_onan(evaluate_J(cm_point(form), 30)).real.nearest_integer())
