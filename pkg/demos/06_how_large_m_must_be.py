"""
How large m must be
===================

The parameter schedule is ell = m^(1/8), k = ell^2, p = ell*log2(m) and
L = (p-1)^ell * ell!.  The size argument needs seven inequalities between
these, and they are checked exactly with integer logarithms.  At m = 2^48
most of them fail: (p-1)^ell alone already exceeds m^(ell/8 + eps).
"""

import math

from cliq2lab.bounds import check_appendix_b, theorem13_threshold

rep = check_appendix_b(log2m=48)
for line in rep.lines():
    print(line)

for a in (64, 128):
    print(f"2^{a}: failing", check_appendix_b(log2m=a).failing)

# Past 2^128 the exact factorials are out of reach; float logarithms show
# where (p-1)^ell < m^(ell/8 + 1/100) first holds, which is the last to give way.
for a in range(128, 4096, 8):
    ell = 2 ** (a // 8)
    if ell * math.log2(ell * a - 1) < (0.125 + 0.01) * ell * a:
        print("first log2(m) where it holds:", a)
        break

th = theorem13_threshold(2**64)
print("size threshold at m = 2^64 is 2^%d gates" % th.exact_log2())
