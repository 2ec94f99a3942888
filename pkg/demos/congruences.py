"""
Class number congruences
========================

For fundamental D, a(D) agrees with -24 h(D) (with -8 and -12 at D = -3, -4)
modulo 16, 9, 5 or 7 whenever the matching condition on D holds.
"""

from collections import Counter

from onan_moonshine.arith import is_fundamental, is_square_mod
from onan_moonshine.report import scan_record, summarize
from onan_moonshine.traces import trace

#%%
records = [scan_record(D, trace(D).a) for D in range(-3, -400, -1) if is_fundamental(D)]
for rec in records[:8]:
    print(rec["D"], rec["a"], rec["t"], rec["checks"])

#%%
summary = summarize(records)
print(summary["records"], "discriminants,", summary["failures"], "failures")
for m, counts in summary["checks"].items():
    print(m, counts)

#%%
# Modulo 11 the congruence is not forced; count how often it happens
# among D that are not squares mod 11
residues = Counter()
for rec in records:
    if not is_square_mod(rec["D"], 11):
        residues["congruent" if (rec["a"] - rec["t"]) % 11 == 0 else "not congruent"] += 1
print(residues)
