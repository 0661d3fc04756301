"""Working-precision planning for the Frobenius expansion.

Reducing a form with a pole of order m to the cohomology basis divides
by the integers m-1, m-2, ... along the way, so it can lose p-adic
digits.  ``LossTable`` maintains a proven upper bound A(m) for that
loss.  The a-priori bound is

    f0(m) = sum_{i=1..n} ilog_p(max(1, m-i)),

and the table refinement sharpens it degree range by degree range using
two observations: the loss bound is constant on blocks (A(j) = A(p*ceil(j/p))
for j >= n), and once the tail condition (j1 + l*p)^n <= p^(N+l) holds the
bound N cannot deteriorate further along the block.

``choose_working_precision`` then finds the smallest s such that every
Frobenius term dropped by truncating at j_max = s - n keeps the final
matrix correct modulo p^r: for all j >= s-n+1 the dropped term carries a
scalar valuation n-1+j exceeding r plus the reduction loss A(p*(n+j)).

The refinement loop is capped at 20 passes.  For p = 2 the interleaved
block updates can oscillate indefinitely; the capped table is still a
valid upper bound (every assignment is justified individually), and the
chosen s is insensitive to the cap, so the cap is returned as a
``stabilized`` flag rather than an error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

_MAXPASS = 20
_S_CAP = 256


def ilog(p: int, x: int) -> int:
    """Largest e >= 0 with p**e <= x (x >= 1)."""
    if x < 1:
        raise ValueError("ilog needs x >= 1")
    e = 0
    q = p
    while q <= x:
        e += 1
        q *= p
    return e


def f0(p: int, n: int, m: int) -> int:
    """A-priori digit-loss bound for reducing from pole order m."""
    return sum(ilog(p, max(1, m - i)) for i in range(1, n + 1))


def factorial_bound(m: int, p: int) -> int:
    """v_p((m-1)!), by Legendre; a crude but always valid loss bound."""
    total = 0
    q = p
    while q <= m - 1:
        total += (m - 1) // q
        q *= p
    return total


def carries_g(p: int, m: int, i: int) -> int:
    """Number of carries when adding i and m-1 in base p
    (equivalently v_p(binomial(-m, i)))."""
    if i == 0:
        return 0
    a, b = i, m - 1
    carries = 0
    carry = 0
    while a or b or carry:
        s = a % p + b % p + carry
        carry = 1 if s >= p else 0
        carries += carry
        a //= p
        b //= p
    return carries


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass
class LossTable:
    """Upper bounds A[m] for the reduction digit loss from pole order m."""

    p: int
    n: int
    A: dict[int, int] = field(default_factory=dict)
    stabilized: bool = True

    def bound(self, m: int) -> int:
        # Refinement is re-entered for every query: extending the walk for a
        # larger m can sharpen earlier entries, so the table is not frozen
        # after first touch.
        self.refine(m)
        return self.A[m]

    def refine(self, m: int) -> None:
        """Extend/refine the table so that A[m] is defined for this m."""
        p, n = self.p, self.n
        A = self.A
        for j in range(1, min(n, m) + 1):
            A.setdefault(j, f0(p, n, j))
        if m <= n:
            return
        length = max(A)
        stabilized = False
        for _ in range(_MAXPASS):
            prev = dict(A)
            walk_end = max(m, length)  # snapshot of the known range
            j = n + 1
            while j <= walk_end:
                j1 = p * _ceil_div(j, p)
                if j1 // p not in A:
                    A[j1 // p] = f0(p, n, j1 // p)
                N = n - 1 + A[j1 // p]
                ell = 1
                while True:
                    hi = j1 + ell * p
                    if n * p < hi and hi**n <= p ** (N + ell):
                        val = min(N, f0(p, n, j1))
                        for k in range(j, j1 + 1):
                            A[k] = val
                        length = max(length, j1)
                        j = j1 + 1
                        break
                    gval = carries_g(p, j1, ell)
                    if f0(p, n, hi) - ell - gval <= N:
                        ell += 1
                        continue
                    for i in range(length + 1, hi + 1):
                        A[i] = f0(p, n, i)
                    length = max(length, hi)
                    N = max(A[hi] - ell - gval, N)
                    ell += 1
            if A == prev:
                stabilized = True
                break
        self.stabilized = self.stabilized and stabilized


@dataclass(frozen=True)
class PrecisionPlan:
    p: int
    n: int
    r: int
    s: int
    j_max: int
    losses: dict[int, int]
    stabilized: bool
    f0_only: bool = False

    def loss_bound(self, m: int) -> int:
        if m in self.losses:
            return self.losses[m]
        return f0(self.p, self.n, m)


def _tail_closed(p: int, n: int, r: int, j: int) -> bool:
    """Closed-form exit: every truncated term from j on is safe when
    (p*(n+j) - 1)^n <= p^(n-1+j-r)."""
    if j <= 0:
        return False
    e = n - 1 + j - r
    if e < 0:
        return False
    return (p * (n + j) - 1) ** n <= p**e


def choose_working_precision(
    p: int, n: int, r: int, f0_only: bool = False
) -> PrecisionPlan:
    """Smallest working precision s making truncation at j_max = s - n sound.

    Scans s upward from r; for each s walks j = s-n+1, s-n+2, ... and
    checks n-1+j - A(p*(n+j)) >= r, refining the loss table on demand.
    A violation bumps s; the closed-form tail condition ends the walk.
    """
    if r < 1:
        raise ValueError("target precision r must be >= 1")
    table = LossTable(p, n)
    s = r
    while s <= _S_CAP:
        j = s - n + 1
        ok = True
        while True:
            if _tail_closed(p, n, r, j):
                break
            m = p * (n + j)
            if f0_only:
                loss = f0(p, n, m)
            else:
                loss = table.bound(m)
            if loss > n - 1 + j - r:
                ok = False
                break
            j += 1
        if ok:
            losses = dict(table.A) if not f0_only else {}
            return PrecisionPlan(
                p=p,
                n=n,
                r=r,
                s=s,
                j_max=s - n,
                losses=losses,
                stabilized=table.stabilized,
                f0_only=f0_only,
            )
        s += 1
    raise RuntimeError(f"no working precision below cap for p={p}, n={n}, r={r}")


_plan_cache: dict[tuple[int, int, int, bool], PrecisionPlan] = {}


def plan_for(p: int, n: int, r: int, f0_only: bool = False) -> PrecisionPlan:
    key = (p, n, r, f0_only)
    if key not in _plan_cache:
        _plan_cache[key] = choose_working_precision(p, n, r, f0_only)
    return _plan_cache[key]


def binom_scalar(h: int, j: int, p: int) -> tuple[int, int]:
    """binomial(-h, j) = (-1)^j C(h+j-1, j), split as (p-part g, unit part)."""
    b = comb(h + j - 1, j) * (-1) ** j
    if b == 0:
        return 0, 0
    g = 0
    while b % p == 0:
        b //= p
        g += 1
    return g, b
