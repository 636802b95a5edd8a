"""Solvers for the product equation N_{p1} * ... * N_{pk} = n.

g1 inverts a single point count through the Hasse window, gk_solutions
enumerates k-sets of distinct good primes whose counts multiply to n,
gk_census aggregates all attained products up to a bound, and bk_count /
dense_product_count are the admissible-product and dense-product
counters used as distribution diagnostics.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass

import numpy as np

from .arith import divisors, iroot, loglog, omega, omega_table, primes_in_range, shared_sieve
from .counting import DEFAULT_NAIVE_THRESHOLD, count_points
from .curves import CurveModel
from .errors import CensusBudgetError
from .table import NpTable, covering_table

DEFAULT_CENSUS_BUDGET = 200_000_000
DENSE_BRUTE_CEILING = 1_000_000


def default_epsilon(k: int) -> float:
    """Admissibility parameter: 0.008 at k = 3, else 90% of 2/(20(k^2+k))."""
    if k == 3:
        return 0.008
    return 0.9 * 2.0 / (20.0 * (k * k + k))


def hasse_prime_window(n: int) -> tuple[int, int]:
    """The integer interval of primes p that can possibly have N_p = n.

    N_p = n forces (sqrt(p) - 1)^2 <= n <= (sqrt(p) + 1)^2, i.e.
    p in [n + 1 - 2*sqrt(n), n + 1 + 2*sqrt(n)]; the bounds use exact
    integer square roots, no floating point.
    """
    if n < 1:
        raise ValueError("window needs n >= 1")
    s = math.isqrt(4 * n)
    return max(1, n + 1 - s), n + 1 + s


@dataclass(frozen=True)
class ProgressionRecord:
    """All good primes sharing the point count n; len(primes) is G_1(E, n)."""

    n: int
    primes: tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.primes)

    def as_dict(self) -> dict:
        return {"n": self.n, "primes": list(self.primes), "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class GkSolution:
    """All unordered k-sets of distinct good primes with N-product n."""

    n: int
    k: int
    solutions: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.solutions)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "count": self.count,
            "solutions": [list(s) for s in self.solutions],
        }


@dataclass(frozen=True)
class BkReport:
    """Count of squarefree products of k distinct admissible primes <= x."""

    x: int
    k: int
    epsilon: float
    count: int
    density_ratio: float

    def as_dict(self) -> dict:
        return {
            "x": self.x,
            "k": self.k,
            "epsilon": self.epsilon,
            "count": self.count,
            "density_ratio": self.density_ratio,
        }


def _np_lookup(model: CurveModel, p: int, table: NpTable | None, naive_threshold: int, seed: int) -> int:
    if (
        table is not None
        and table.curve.coefficients == model.coefficients
        and p <= table.limit
    ):
        return table.np_of(p)
    return count_points(model, p, naive_threshold, seed)


def g1(
    model: CurveModel,
    n: int,
    table: NpTable | None = None,
    naive_threshold: int = DEFAULT_NAIVE_THRESHOLD,
    seed: int = 0,
) -> ProgressionRecord:
    """Exhaustive solution of N_p = n: every prime in the window is tested."""
    lo, hi = hasse_prime_window(n)
    hits = []
    for p in primes_in_range(lo, hi):
        if model.disc % p == 0:
            continue
        if _np_lookup(model, p, table, naive_threshold, seed) == n:
            hits.append(p)
    return ProgressionRecord(n, tuple(hits))


def find_progressions(
    model: CurveModel,
    n_lo: int,
    n_hi: int,
    min_multiplicity: int = 2,
    table: NpTable | None = None,
    naive_threshold: int = DEFAULT_NAIVE_THRESHOLD,
    seed: int = 0,
) -> list[ProgressionRecord]:
    """All n in [n_lo, n_hi] with G_1(E, n) >= min_multiplicity.

    One pass over the union of the Hasse windows groups primes by point
    count; each candidate n is then re-derived exactly through g1.
    """
    if n_lo < 1:
        raise ValueError("range must start at n >= 1")
    if n_hi < n_lo:
        return []
    lo = hasse_prime_window(n_lo)[0]
    hi = hasse_prime_window(n_hi)[1]
    groups: dict[int, list[int]] = {}
    for p in primes_in_range(lo, hi):
        if model.disc % p == 0:
            continue
        v = _np_lookup(model, p, table, naive_threshold, seed)
        groups.setdefault(v, []).append(p)
    out = []
    for n in sorted(groups):
        if n_lo <= n <= n_hi and len(groups[n]) >= min_multiplicity:
            rec = g1(model, n, table, naive_threshold, seed)
            if rec.multiplicity >= min_multiplicity:
                out.append(rec)
    return out


_SMALLEST_CACHE: dict[tuple, tuple[int, ...]] = {}


def _smallest_np_values(model: CurveModel, count: int, naive_threshold: int, seed: int) -> tuple[int, ...]:
    """The `count` smallest N_p values over distinct good primes, globally.

    A scan of p <= B is exhaustive once the Hasse bound forces every
    prime above B past the largest chosen value.
    """
    if count <= 0:
        return ()
    key = (model.coefficients, count)
    if key in _SMALLEST_CACHE:
        return _SMALLEST_CACHE[key]
    bound = 1000
    while True:
        vals = sorted(
            count_points(model, p, naive_threshold, seed)
            for p in primes_in_range(2, bound)
            if model.disc % p != 0
        )
        if len(vals) >= count and hasse_prime_window(vals[count - 1])[1] <= bound:
            picked = tuple(vals[:count])
            _SMALLEST_CACHE[key] = picked
            return picked
        bound *= 4


def gk_solutions(
    model: CurveModel,
    k: int,
    n: int,
    table: NpTable | None = None,
    naive_threshold: int = DEFAULT_NAIVE_THRESHOLD,
    seed: int = 0,
) -> GkSolution:
    """All unordered k-sets of distinct good primes with N-product exactly n.

    Every factor must divide n, and N_p >= p/100 plus the Hasse window
    bound the primes that can appear, so the candidate pool is finite
    and fixed before enumeration starts.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if n < 1:
        raise ValueError("n must be at least 1")
    smallest = _smallest_np_values(model, k - 1, naive_threshold, seed)
    other_min = math.prod(smallest) if smallest else 1
    if other_min > n:
        return GkSolution(n, k, ())
    d_cap = min(n // other_min, 100 * n)
    memo: dict[int, tuple[int, ...]] = {}
    pool: list[tuple[int, int]] = []  # (N value, prime), sorted by N then p
    for d in divisors(n):
        if d > d_cap:
            continue
        if d not in memo:
            memo[d] = g1(model, d, table, naive_threshold, seed).primes
        for p in memo[d]:
            pool.append((d, p))
    pool.sort()
    vals = [d for d, _ in pool]
    sols: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def rec(start: int, remaining: int, rem_product: int) -> None:
        if remaining == 1:
            i = bisect_left(vals, rem_product, lo=start)
            j = bisect_right(vals, rem_product, lo=i)
            for t in range(i, j):
                sols.append(tuple(sorted(chosen + [pool[t][1]])))
            return
        for i in range(start, len(pool)):
            d = vals[i]
            if d**remaining > rem_product:
                break
            if rem_product % d:
                continue
            chosen.append(pool[i][1])
            rec(i + 1, remaining - 1, rem_product // d)
            chosen.pop()

    rec(0, k, n)
    sols.sort()
    return GkSolution(n, k, tuple(sols))


class CensusResult:
    """Aggregated map n -> G_k(E, n) over all attained products n <= x."""

    def __init__(
        self,
        model: CurveModel,
        k: int,
        x: int,
        ns: np.ndarray,
        counts: np.ndarray,
        table: NpTable | None = None,
        witnesses: dict[int, list[tuple[int, ...]]] | None = None,
    ):
        self.model = model
        self.k = k
        self.x = x
        self.ns = ns
        self.counts = counts
        self._table = table
        self._witnesses = witnesses

    def __len__(self) -> int:
        return len(self.ns)

    @property
    def table(self) -> NpTable | None:
        return self._table

    def count(self, n: int) -> int:
        i = int(np.searchsorted(self.ns, n))
        if i < len(self.ns) and self.ns[i] == n:
            return int(self.counts[i])
        return 0

    def items(self):
        for n, c in zip(self.ns.tolist(), self.counts.tolist()):
            yield n, c

    def as_dict(self) -> dict[int, int]:
        return dict(self.items())

    @property
    def total_products(self) -> int:
        return int(self.counts.sum()) if len(self.counts) else 0

    @property
    def max_count(self) -> int:
        return int(self.counts.max()) if len(self.counts) else 0

    @property
    def argmax(self) -> int | None:
        if not len(self.counts):
            return None
        return int(self.ns[int(np.argmax(self.counts))])

    def witnesses(self, n: int, limit: int = 16) -> list[tuple[int, ...]]:
        """Up to `limit` solution sets for n; recomputed unless stored."""
        if self._witnesses is not None and n in self._witnesses:
            return self._witnesses[n][:limit]
        return list(gk_solutions(self.model, self.k, n, table=self._table).solutions[:limit])

    def csv_lines(self) -> list[str]:
        lines = ["n,count"]
        lines.extend(f"{n},{c}" for n, c in self.items())
        return lines


def _census_size(ns: list[int], k: int, x: int) -> int:
    """Number of index-ascending k-products <= x over the sorted values ns."""
    total = 0

    def rec(start: int, remaining: int, cap: int) -> None:
        nonlocal total
        if remaining == 1:
            total += bisect_right(ns, cap, lo=start) - start
            return
        hi = bisect_right(ns, iroot(cap, remaining), lo=start)
        for i in range(start, hi):
            rec(i + 1, remaining - 1, cap // ns[i])

    rec(0, k, x)
    return total


def gk_census(
    model: CurveModel,
    k: int,
    x: int,
    table: NpTable | None = None,
    naive_threshold: int = DEFAULT_NAIVE_THRESHOLD,
    seed: int = 0,
    budget: int = DEFAULT_CENSUS_BUDGET,
    use_p_bound: bool = True,
    store_witnesses: bool = False,
    workers: int = 1,
    cache_dir=None,
) -> CensusResult:
    """Aggregate G_k(E, n) for every attained n <= x.

    The candidate primes are fixed before enumeration (Hasse window of
    the largest possible factor, intersected with p <= 100x unless
    use_p_bound is off), a counting pass sizes the run against `budget`,
    and the enumeration fills one flat product array that is sorted and
    grouped; the result is deterministic for a fixed seed.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    empty = np.empty(0, np.int64)
    if x < 1:
        return CensusResult(model, k, x, empty, empty, table)
    smallest = _smallest_np_values(model, k - 1, naive_threshold, seed)
    other_min = math.prod(smallest) if smallest else 1
    if other_min > x:
        return CensusResult(model, k, x, empty, empty, table)
    n_cap = x // other_min
    limit = hasse_prime_window(n_cap)[1]
    if use_p_bound:
        limit = min(limit, 100 * x)
    table = covering_table(
        table, model, limit, workers=workers, naive_threshold=naive_threshold,
        seed=seed, cache_dir=cache_dir,
    )
    ps, nps = table.upto(limit)
    keep = nps <= n_cap
    ps, nps = ps[keep], nps[keep]
    order = np.lexsort((ps, nps))
    nps_arr = nps[order]
    ps_arr = ps[order]
    ns = nps_arr.tolist()
    total = _census_size(ns, k, x)
    if total > budget:
        lo_b, hi_b = 1, x
        while lo_b < hi_b:
            mid = (lo_b + hi_b + 1) // 2
            if _census_size(ns, k, mid) <= budget:
                lo_b = mid
            else:
                hi_b = mid - 1
        raise CensusBudgetError(
            f"census at x={x} needs {total} products (budget {budget}); "
            f"largest feasible bound is x={lo_b}",
            feasible_bound=lo_b,
        )
    if total == 0:
        return CensusResult(model, k, x, empty, empty, table)
    products = np.empty(total, dtype=np.int64)
    cursor = 0
    witnesses: dict[int, list[tuple[int, ...]]] | None = {} if store_witnesses else None
    chosen: list[int] = []

    def rec(start: int, remaining: int, cap: int, partial: int) -> None:
        nonlocal cursor
        if remaining == 1:
            j = bisect_right(ns, cap, lo=start)
            if j > start:
                block = partial * nps_arr[start:j]
                products[cursor : cursor + (j - start)] = block
                cursor += j - start
                if witnesses is not None:
                    for t in range(start, j):
                        sets = witnesses.setdefault(int(block[t - start]), [])
                        if len(sets) < 16:
                            sets.append(tuple(sorted(chosen + [int(ps_arr[t])])))
            return
        hi = bisect_right(ns, iroot(cap, remaining), lo=start)
        for i in range(start, hi):
            if witnesses is not None:
                chosen.append(int(ps_arr[i]))
            rec(i + 1, remaining - 1, cap // ns[i], partial * int(nps_arr[i]))
            if witnesses is not None:
                chosen.pop()

    rec(0, k, x, 1)
    assert cursor == total
    products.sort()
    breaks = np.flatnonzero(products[1:] != products[:-1])
    starts = np.concatenate(([0], breaks + 1))
    uniq = products[starts].copy()
    counts = np.diff(np.concatenate((starts, [total]))).astype(np.int64)
    return CensusResult(model, k, x, uniq, counts, table, witnesses)


def bk_count(
    model: CurveModel,
    k: int,
    x: int,
    epsilon: float | None = None,
    a: float | None = None,
    b: float | None = None,
    table: NpTable | None = None,
    naive_threshold: int = DEFAULT_NAIVE_THRESHOLD,
    seed: int = 0,
    workers: int = 1,
    cache_dir=None,
) -> BkReport:
    """Count squarefree products of k distinct admissible primes <= x.

    A prime is admissible when omega(N_p) >= (1 - epsilon) * loglog(x);
    epsilon defaults per default_epsilon(k). When a and b are given the
    primes are restricted to [x^a, x^b); by default every admissible
    prime <= x may appear.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if epsilon is None:
        epsilon = default_epsilon(k)
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    threshold = (1.0 - epsilon) * loglog(x)
    if (a is None) != (b is None):
        raise ValueError("give both a and b, or neither")
    table = covering_table(
        table, model, x, workers=workers, naive_threshold=naive_threshold,
        seed=seed, cache_dir=cache_dir,
    )
    ps, nps = table.upto(x)
    sieve = shared_sieve(int(nps.max()) if len(nps) else 2)
    admissible = [
        int(p) for p, v in zip(ps.tolist(), nps.tolist()) if omega(v, sieve) >= threshold
    ]
    if a is not None:
        if not 0 < a < b < 1:
            raise ValueError("need 0 < a < b < 1")
        lo_p, hi_p = x**a, x**b
        admissible = [p for p in admissible if lo_p <= p < hi_p]
    count = _census_size(admissible, k, x)
    return BkReport(x, k, epsilon, count, count * math.log(x) / x)


def dense_product_count(
    x: int, k: int, epsilon: float | None = None, ceiling: int = DENSE_BRUTE_CEILING
) -> int:
    """|{n <= x : n = n_1 * ... * n_k, omega(n_i) > (1-eps)*loglog(x) for all i}|.

    Brute force by design: factors with enough distinct prime divisors
    are listed from a sieve and every k-fold product is marked.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if epsilon is None:
        epsilon = default_epsilon(k)
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if x > ceiling:
        raise ValueError(f"x={x} above the brute-force ceiling {ceiling}")
    if x < 2:
        return 0
    threshold = (1.0 - epsilon) * math.log(math.log(x))
    w = omega_table(x)
    factors = np.flatnonzero(w > threshold).tolist()
    arr = np.asarray(factors, dtype=np.int64)
    marked = np.zeros(x + 1, dtype=bool)

    def rec(start: int, remaining: int, cap: int, partial: int) -> None:
        if remaining == 1:
            j = bisect_right(factors, cap, lo=start)
            if j > start:
                marked[partial * arr[start:j]] = True
            return
        hi = bisect_right(factors, iroot(cap, remaining), lo=start)
        for i in range(start, hi):
            rec(i, remaining - 1, cap // factors[i], partial * factors[i])

    rec(0, k, x, 1)
    return int(np.count_nonzero(marked))
