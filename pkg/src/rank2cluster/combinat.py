"""Integer sequences, extended binomials, and weighted prefix sums.

Everything downstream (both expansion routes, the characteristic tables,
the identity checks) is built from three ingredients defined here: the
denominator sequence attached to the parameter c, a binomial coefficient
extended to arbitrary integer arguments, and running weighted sums of
tuple entries against that sequence.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from math import comb


def mod_binom(a: int, b: int) -> int:
    """Extended binomial: 0 if a < b, 1 if a = b, else C(a, a-b) exactly.

    For a >= 0 this is the ordinary binomial coefficient (in particular 0
    when b < 0).  For a < 0 it is the generalized value, an exact integer,
    computed through the reflection C(a, k) = (-1)^k * C(k-a-1, k).
    """
    if a < b:
        return 0
    if a >= 0:
        if b < 0:
            return 0
        return comb(a, b)
    k = a - b
    v = comb(k - a - 1, -a - 1)
    return -v if k & 1 else v


class ClusterContext:
    """Parameter c >= 1 plus the memoized sequence a_0=-1, a_1=0, a_2=1, ...

    The sequence obeys a_n = c*a_{n-1} - a_{n-2}; index 0 is the backward
    extension forced by that recurrence.  The table only grows, so reads
    are safe from concurrent threads; extension is serialized by a lock.
    """

    __slots__ = ("c", "_a", "_lock", "_derived")

    def __init__(self, c: int):
        if c < 1:
            raise ValueError(f"parameter c must be a positive integer, got {c}")
        self.c = c
        self._a = [-1, 0, 1]
        self._lock = threading.Lock()
        self._derived: dict = {}  # memo space for derived tables, guarded by _lock

    def a(self, n: int) -> int:
        """n-th sequence value; n must be >= 0."""
        if n < 0:
            raise ValueError(f"sequence index must be >= 0, got {n}")
        tab = self._a
        if n < len(tab):
            return tab[n]
        with self._lock:
            while len(self._a) <= n:
                self._a.append(self.c * self._a[-1] - self._a[-2])
        return self._a[n]

    def __repr__(self) -> str:
        return f"ClusterContext(c={self.c})"


def a_seq(ctx: ClusterContext, n: int) -> int:
    """Value a_n of the context's sequence (a_0 = -1 by backward extension)."""
    return ctx.a(n)


def euler_form(ctx: ClusterContext, d: tuple[int, int], f: tuple[int, int]) -> int:
    """Bilinear form <d, f> = d1*f1 + d2*f2 - c*d1*f2 on dimension pairs."""
    return d[0] * f[0] + d[1] * f[1] - ctx.c * d[0] * f[1]


@dataclass(frozen=True)
class SPrefix:
    """Tuple entries t_0..t_k with their weighted partial sums s_0..s_{k+1}.

    s_i is the sum of a_{i-j+1}*t_j over j < i, equivalently the recurrence
    s_i = c*s_{i-1} - s_{i-2} + t_{i-1} with s_i = 0 for i <= 0.
    """

    entries: tuple[int, ...]
    s_values: tuple[int, ...]

    @classmethod
    def empty(cls) -> "SPrefix":
        return cls((), (0,))

    def s(self, i: int) -> int:
        """s_i, with the empty-sum convention s_i = 0 for i <= 0."""
        if i <= 0:
            return 0
        return self.s_values[i]


def s_prefix_extend(ctx: ClusterContext, prefix: SPrefix, t_next: int) -> SPrefix:
    """Append one tuple entry and the next partial sum."""
    s_prev = prefix.s_values[-1]
    s_prev2 = prefix.s_values[-2] if len(prefix.s_values) >= 2 else 0
    s_new = ctx.c * s_prev - s_prev2 + t_next
    return SPrefix(prefix.entries + (t_next,), prefix.s_values + (s_new,))
