"""A small exact two-phase simplex solver over the rationals.

Used for Newton-polyhedron questions (vertex tests, optimal weights).  The
problems here have a handful of variables and a few dozen constraints, so a
dense tableau with Bland's rule is plenty.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

__all__ = ["LPResult", "maximize"]


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible", "unbounded"
    value: Optional[Fraction]
    x: Optional[List[Fraction]]


def maximize(c: Sequence, A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
             A_eq: Sequence[Sequence] = (), b_eq: Sequence = ()) -> LPResult:
    """Maximize ``c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``, ``x >= 0``."""
    n = len(c)
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    kinds: List[str] = []
    for a, b in zip(A_ub, b_ub):
        rows.append([Fraction(v) for v in a])
        rhs.append(Fraction(b))
        kinds.append("le")
    for a, b in zip(A_eq, b_eq):
        rows.append([Fraction(v) for v in a])
        rhs.append(Fraction(b))
        kinds.append("eq")
    m = len(rows)
    # normalize to nonnegative right-hand sides
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
            if kinds[i] == "le":
                kinds[i] = "ge"
    # column layout: x (n) | slack/surplus (one per le/ge row) | artificial
    slack_cols = {}
    col = n
    for i, k in enumerate(kinds):
        if k in ("le", "ge"):
            slack_cols[i] = col
            col += 1
    art_cols = {}
    for i, k in enumerate(kinds):
        if k in ("ge", "eq"):
            art_cols[i] = col
            col += 1
    width = col
    T = []
    basis = []
    for i in range(m):
        row = rows[i] + [Fraction(0)] * (width - n)
        if i in slack_cols:
            row[slack_cols[i]] = Fraction(1 if kinds[i] == "le" else -1)
        if i in art_cols:
            row[art_cols[i]] = Fraction(1)
            basis.append(art_cols[i])
        else:
            basis.append(slack_cols[i])
        T.append(row + [rhs[i]])

    def pivot(r: int, q: int) -> None:
        piv = T[r][q]
        T[r] = [v / piv for v in T[r]]
        for i in range(m):
            if i != r and T[i][q]:
                t = T[i][q]
                T[i] = [a - t * b for a, b in zip(T[i], T[r])]
        basis[r] = q

    def run(obj: List[Fraction], allowed: int) -> str:
        # obj: coefficients to maximize over columns [0, width)
        while True:
            # reduced costs
            cb = [obj[b] for b in basis]
            entering = None
            for j in range(allowed):
                if j in basis:
                    continue
                red = obj[j] - sum(cb[i] * T[i][j] for i in range(m))
                if red > 0:
                    entering = j
                    break
            if entering is None:
                return "optimal"
            best = None
            for i in range(m):
                a = T[i][entering]
                if a > 0:
                    ratio = T[i][-1] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return "unbounded"
            pivot(best[1], entering)

    if art_cols:
        obj1 = [Fraction(0)] * width
        for j in art_cols.values():
            obj1[j] = Fraction(-1)
        run(obj1, width)
        if sum(T[i][-1] for i in range(m) if basis[i] in art_cols.values()) != 0:
            return LPResult("infeasible", None, None)
        # drive remaining artificials out of the basis
        art = set(art_cols.values())
        for i in range(m):
            if basis[i] in art:
                for j in range(width):
                    if j not in art and T[i][j] != 0:
                        pivot(i, j)
                        break
        limit = min(art)
    else:
        limit = width
    obj2 = [Fraction(v) for v in c] + [Fraction(0)] * (width - n)
    status = run(obj2, limit)
    if status == "unbounded":
        return LPResult("unbounded", None, None)
    x = [Fraction(0)] * width
    for i, b in enumerate(basis):
        x[b] = T[i][-1]
    value = sum(Fraction(ci) * xi for ci, xi in zip(c, x[:n]))
    return LPResult("optimal", value, x[:n])
