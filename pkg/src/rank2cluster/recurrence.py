"""The oracle route: cluster variables by the defining recurrence.

x_1 and x_2 are the two variables; every later x_{k+1} is obtained as
(x_k^c + 1) / x_{k-1}, where the division is performed exactly and a
nonzero remainder would be reported rather than silently accepted.  The
characteristic table of a variable is read off its expansion through the
exponent coordinate change (d1, d2) -> (e1, e2).
"""
from __future__ import annotations

import threading
from dataclasses import dataclass

from .combinat import ClusterContext
from .laurent import ONE, X1, X2, LaurentPoly2


class ExpansionStructureError(RuntimeError):
    """An expansion violated the exponent structure required by the coordinate map."""


_xvars: dict[int, list[LaurentPoly2]] = {}
_xvars_lock = threading.Lock()


def cluster_var_recurrence(ctx: ClusterContext, n: int) -> LaurentPoly2:
    """x_n computed by iterating the recurrence; memoized per (c, n).

    Requires c >= 2 and n >= 1.  Every division along the way must be
    exact; an InexactDivisionError here would indicate a bug.
    """
    if ctx.c < 2:
        raise ValueError(f"cluster variables require c >= 2, got c={ctx.c}")
    if n < 1:
        raise ValueError(f"index must be >= 1, got {n}")
    with _xvars_lock:
        xs = _xvars.setdefault(ctx.c, [None, X1, X2])
        while len(xs) <= n:
            k = len(xs)
            xs.append((xs[k - 1] ** ctx.c + ONE).exact_div(xs[k - 2]))
        return xs[n]


def scalar_cluster_value(c: int, n: int) -> int:
    """x_n evaluated at (1, 1), via the scalar shadow of the recurrence.

    y_1 = y_2 = 1 and y_{k+1} = (y_k^c + 1) / y_{k-1}; each division is
    checked to be exact.
    """
    if c < 2:
        raise ValueError(f"requires c >= 2, got c={c}")
    if n < 1:
        raise ValueError(f"index must be >= 1, got {n}")
    if n <= 2:
        return 1
    prev, cur = 1, 1
    for _ in range(3, n + 1):
        num = cur**c + 1
        q, r = divmod(num, prev)
        if r:
            raise ArithmeticError("scalar recurrence produced a non-integer")
        prev, cur = cur, q
    return cur


@dataclass(frozen=True)
class ChiTable:
    """Euler characteristics chi(e1, e2) for one (c, n), zero entries omitted.

    dim_vector is (a_{n-1}, a_{n-2}); every stored key lies in the box
    0 <= e1 <= a_{n-1}, 0 <= e2 <= a_{n-2}.
    """

    c: int
    n: int
    dim_vector: tuple[int, int]
    entries: dict

    def chi(self, e1: int, e2: int) -> int:
        return self.entries.get((e1, e2), 0)

    def items(self) -> list[tuple[tuple[int, int], int]]:
        return sorted(self.entries.items())

    def total(self) -> int:
        return sum(self.entries.values())

    def to_json_obj(self) -> dict:
        return {
            "c": self.c,
            "n": self.n,
            "dim": list(self.dim_vector),
            "chi": [
                {"e1": e1, "e2": e2, "value": str(v)}
                for (e1, e2), v in self.items()
            ],
        }


def chi_from_expansion(ctx: ClusterContext, n: int) -> ChiTable:
    """Characteristic table read off the recurrence expansion of x_n.

    Each term coefficient kappa at exponents (d1, d2) is placed at the cell
    solving d2 = c*e1 - a_{n-2} and d1 = c*(a_{n-2} - e2) - a_{n-1}.  Both
    congruences must hold for every term; a violation means the expansion
    does not have the required shape and is reported as a structure error.
    """
    if n < 3:
        raise ValueError(f"characteristic tables start at n = 3, got {n}")
    c = ctx.c
    an1, an2 = ctx.a(n - 1), ctx.a(n - 2)
    poly = cluster_var_recurrence(ctx, n)
    entries: dict[tuple[int, int], int] = {}
    for (d1, d2), kappa in poly.items():
        e1, r1 = divmod(d2 + an2, c)
        if r1:
            raise ExpansionStructureError(
                f"term x1^{d1} x2^{d2} of x_{n} (c={c}): "
                f"d2 + a_{n-2} = {d2 + an2} is not divisible by c"
            )
        q2, r2 = divmod(d1 + an1, c)
        if r2:
            raise ExpansionStructureError(
                f"term x1^{d1} x2^{d2} of x_{n} (c={c}): "
                f"d1 + a_{n-1} = {d1 + an1} is not divisible by c"
            )
        e2 = an2 - q2
        if not (0 <= e1 <= an1 and 0 <= e2 <= an2):
            raise ExpansionStructureError(
                f"cell ({e1}, {e2}) outside the dimension box ({an1}, {an2})"
            )
        entries[(e1, e2)] = kappa
    table = ChiTable(ctx.c, n, (an1, an2), entries)
    if table.chi(0, 0) != 1 or table.chi(an1, an2) != 1:
        raise ExpansionStructureError("corner cells of the table must equal 1")
    return table
