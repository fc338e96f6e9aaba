"""Exact strict feasibility for homogeneous systems of linear inequalities.

The single kernel question throughout region enumeration is: given integer
covectors r_1..r_n, does some z satisfy r_i . z > 0 for every i?  By
Gordan's theorem exactly one of the following holds:

  * a witness z exists, or
  * some y >= 0, y != 0 has  sum_i y_i r_i = 0  (an infeasibility
    certificate: the inequalities sum to a strict self-contradiction).

We decide this with a phase-1 simplex over Fractions (Bland's rule, so no
cycling) on the certificate system.  When no certificate exists the dual
multipliers of the phase-1 optimum yield the witness.  Both outcomes are
re-verified exactly before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import dot


@dataclass(frozen=True)
class ConeResult:
    feasible: bool
    witness: tuple[Fraction, ...] | None = None
    certificate: tuple[Fraction, ...] | None = None


def _phase1(columns: list[tuple], rhs: list[int]):
    """min sum(artificials) s.t. [columns | I] (y, a) = rhs, y, a >= 0.

    Returns (value, y_values, duals).  rhs must be nonnegative.
    """
    p = len(rhs)
    n = len(columns)
    width = n + p + 1
    tab = []
    for i in range(p):
        row = [columns[j][i] for j in range(n)]
        row += [1 if k == i else 0 for k in range(p)]
        row.append(rhs[i])
        tab.append(row)
    # reduced costs: c_j - z_j with basis = artificials (cost 1 each)
    row0 = [0] * width
    for j in range(n):
        row0[j] = -sum(tab[i][j] for i in range(p))
    row0[width - 1] = -sum(rhs)
    basis = [n + i for i in range(p)]

    while True:
        enter = None
        for j in range(n + p):
            if row0[j] < 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for i in range(p):
            a = tab[i][enter]
            if a > 0:
                ratio = Fraction(tab[i][width - 1]) / a
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave is None:
            raise RuntimeError("phase-1 objective unbounded; impossible")
        piv = Fraction(tab[leave][enter])
        tab[leave] = [Fraction(x) / piv for x in tab[leave]]
        prow = tab[leave]
        for i in range(p):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], prow)]
        if row0[enter] != 0:
            f = row0[enter]
            row0 = [x - f * y for x, y in zip(row0, prow)]
        basis[leave] = enter

    value = -Fraction(row0[width - 1])
    y = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            y[b] = Fraction(tab[i][width - 1])
    duals = [1 - Fraction(row0[n + i]) for i in range(p)]
    return value, y, duals


def strict_cone_solve(rows: Sequence[Sequence[int]]) -> ConeResult:
    """Decide whether some z has r . z > 0 for every row r."""
    rows = [tuple(r) for r in rows]
    if not rows:
        raise ValueError("need at least one row")
    m = len(rows[0])
    # certificate system: sum_i y_i r_i = 0, sum_i y_i = 1, y >= 0
    columns = [r + (1,) for r in rows]
    rhs = [0] * m + [1]
    value, y, duals = _phase1(columns, rhs)

    if value == 0:
        cert = tuple(y)
        if any(c < 0 for c in cert) or sum(cert) != 1:
            raise RuntimeError("invalid certificate from phase-1")
        combo = [sum(c * r[i] for c, r in zip(cert, rows)) for i in range(m)]
        if any(x != 0 for x in combo):
            raise RuntimeError("certificate does not sum to zero")
        return ConeResult(feasible=False, certificate=cert)

    witness = tuple(-d for d in duals[:m])
    if any(dot(r, witness) <= 0 for r in rows):
        raise RuntimeError("witness violates a strict inequality")
    return ConeResult(feasible=True, witness=witness)
