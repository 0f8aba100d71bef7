"""Integer kernels behind the exact neighborhood-weight and median-order code.

Every kernel exists twice: an explicit-loop version compiled with numba, and
a vectorized numpy version. Callers go through the dispatchers at the bottom,
which pick numba when it is active and the inputs fit in int64, and otherwise
fall back to numpy (on ``object`` arrays for arbitrarily large integers).

Inputs are integer matrices produced by scaling exact rational weights by a
common denominator, so both paths are exact.
"""

import numpy as np

from ._accel import HAVE_NUMBA, njit

# Above this total weight the int64 kernels could overflow.
INT64_SAFE = 1 << 62


def _beta_loops(P, W):
    n = P.shape[0]
    alpha = np.zeros(n, dtype=np.int64)
    terms = np.zeros((n, n), dtype=np.int64)
    reach = np.zeros((n, n), dtype=np.bool_)
    for v in range(n):
        a = 0
        for u in range(n):
            if not P[v, u]:
                continue
            a += W[v, u]
            for s in range(n):
                if s == v or not P[u, s]:
                    continue
                d = W[u, s] - W[v, s]
                if d < 0:
                    d = 0
                if not reach[v, s]:
                    reach[v, s] = True
                    terms[v, s] = d
                elif d > terms[v, s]:
                    terms[v, s] = d
        alpha[v] = a
    return alpha, terms, reach


def beta_numpy(P, W):
    """Vectorized first/second neighborhood weights.

    ``P`` is the boolean arc-presence matrix and ``W`` the weight matrix (zero
    where no arc). Returns ``(alpha, terms, reach)`` where ``terms[v, s]`` is the
    clamped best excess of a two-step route ``v -> u -> s`` and ``reach`` marks
    the pairs that have such a route.
    """
    n = P.shape[0]
    Pi = P.astype(np.int64)
    reach = (Pi @ Pi) > 0
    np.fill_diagonal(reach, False)
    alpha = np.where(P, W, 0).sum(axis=1)
    routes = P[:, :, None] & P[None, :, :]
    zero = W.dtype.type(0) if W.dtype != object else 0
    best = np.where(routes, W[None, :, :], zero).max(axis=1) if n else W
    terms = best - W
    terms = np.where(reach & (terms > 0), terms, zero)
    if W.dtype == object:
        alpha = alpha.astype(object)
        terms = terms.astype(object)
    return alpha, terms, reach


def _median_loops(W):
    n = W.shape[0]
    h = n // 2
    lo_size = 1 << h
    hi_size = 1 << (n - h)
    lo = np.zeros((lo_size, n), dtype=np.int64)
    hi = np.zeros((hi_size, n), dtype=np.int64)
    for m in range(1, lo_size):
        b = 0
        while not (m >> b) & 1:
            b += 1
        for x in range(n):
            lo[m, x] = lo[m & (m - 1), x] + W[x, b]
    for m in range(1, hi_size):
        b = 0
        while not (m >> b) & 1:
            b += 1
        for x in range(n):
            hi[m, x] = hi[m & (m - 1), x] + W[x, b + h]
    lo_mask = lo_size - 1
    full = 1 << n
    g = np.zeros(full, dtype=np.int64)
    for S in range(full - 2, -1, -1):
        best = -1
        for x in range(n):
            if (S >> x) & 1:
                continue
            c = lo[S & lo_mask, x] + hi[S >> h, x] + g[S | (1 << x)]
            if best < 0 or c < best:
                best = c
        g[S] = best
    order = np.empty(n, dtype=np.int64)
    S = 0
    for k in range(n):
        for x in range(n):
            if (S >> x) & 1:
                continue
            c = lo[S & lo_mask, x] + hi[S >> h, x] + g[S | (1 << x)]
            if c == g[S]:
                order[k] = x
                S |= 1 << x
                break
    return order, g[0]


def _subset_sums(W, offset, width):
    masks = np.arange(1 << width, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(width)) & 1).astype(W.dtype)
    return bits @ W[:, offset:offset + width].T


def median_numpy(W):
    """Minimum backward weight ordering by subset DP, processed in popcount layers.

    ``W[x, y]`` is the cost of placing ``x`` somewhere after ``y``. Returns the
    lexicographically smallest optimal order and its cost.
    """
    n = W.shape[0]
    if n == 0:
        return np.empty(0, dtype=np.int64), W.dtype.type(0) if W.dtype != object else 0
    h = n // 2
    lo = _subset_sums(W, 0, h)
    hi = _subset_sums(W, h, n - h)
    lo_mask = (1 << h) - 1
    full = 1 << n
    subsets = np.arange(full, dtype=np.int64)
    popcount = np.zeros(full, dtype=np.int64)
    for b in range(n):
        popcount += (subsets >> b) & 1
    sentinel = int(np.abs(W).sum()) + 1
    g = np.zeros(full, dtype=W.dtype)
    for k in range(n - 1, -1, -1):
        layer = subsets[popcount == k]
        best = np.full(layer.shape[0], sentinel, dtype=W.dtype)
        for x in range(n):
            free = ((layer >> x) & 1) == 0
            sel = layer[free]
            cost = lo[sel & lo_mask, x] + hi[sel >> h, x] + g[sel | (1 << x)]
            best[free] = np.minimum(best[free], cost)
        g[layer] = best

    def step_cost(S, x):
        return lo[S & lo_mask, x] + hi[S >> h, x] + g[S | (1 << x)]

    order = np.empty(n, dtype=np.int64)
    S = 0
    for k in range(n):
        for x in range(n):
            if not (S >> x) & 1 and step_cost(S, x) == g[S]:
                order[k] = x
                S |= 1 << x
                break
    return order, g[0]


if HAVE_NUMBA:
    beta_numba = njit(cache=True)(_beta_loops)
    median_numba = njit(cache=True)(_median_loops)
else:
    beta_numba = None
    median_numba = None


def _fits_int64(W):
    return W.dtype != object and int(np.abs(W).sum()) < INT64_SAFE


def as_integer_matrix(values):
    """Pack a nested list of Python ints into int64 when safe, else ``object``."""
    flat_max = max((abs(x) for row in values for x in row), default=0)
    n = len(values)
    if flat_max * max(n, 1) ** 2 < INT64_SAFE:
        return np.array(values, dtype=np.int64).reshape(n, n)
    return np.array(values, dtype=object).reshape(n, n)


def beta_kernel(P, W):
    if HAVE_NUMBA and _fits_int64(W):
        return beta_numba(P, W)
    return beta_numpy(P, W)


def median_kernel(W):
    n = W.shape[0]
    if HAVE_NUMBA and n > 0 and _fits_int64(W):
        order, best = median_numba(W)
        return order, int(best)
    order, best = median_numpy(W)
    return order, int(best)
