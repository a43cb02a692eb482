"""Frozen reference values."""

from fractions import Fraction as F

QUARTIC_VALUE_SET = frozenset(F(s) for s in (
    "3/4 29/36 22/27 5/6 16/19 17/20 6/7 13/15 37/42 7/8 8/9 9/10 23/26 11/12 12/13 "
    "13/14 14/15 15/16 31/34 17/18 21/22 23/24 29/30 41/42 1").split())

# printed list, including the repeated 33/38
SEXTIC_VALUE_LIST = tuple(F(s) for s in (
    "5/6 43/50 13/15 33/38 7/8 33/38 8/9 9/10 11/12 13/14 15/16 17/18 19/20 21/22 29/30 1").split())
SEXTIC_VALUE_SET = frozenset(SEXTIC_VALUE_LIST)
# the repeated entry read as 23/26, which is where it falls in value order
SEXTIC_VALUE_SET_READ = (SEXTIC_VALUE_SET - {F(1)}) | {F(23, 26), F(1)}
