"""Hot inner loops: circle-containment pruning and permutation sifting.

Every kernel exists twice: a numba ``@njit`` loop version and a vectorised
numpy version.  The numba path is used when numba imports and the environment
variable ``DFDOMAINS_DISABLE_NUMBA`` is unset (or ``0``).  Both paths return
identical results; ``tests/test_kernels.py`` checks that, and
``benchmarks/bench_kernels.py`` times them against each other.
"""

import os

import numpy as np

try:
    from numba import njit
    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def decorator(func):
            return func
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return decorator


def _flag_disabled() -> bool:
    return os.environ.get("DFDOMAINS_DISABLE_NUMBA", "0") not in ("", "0", "false", "False")


USE_NUMBA = NUMBA_AVAILABLE and not _flag_disabled()


# =============================================================================
# circle containment
# =============================================================================

@njit(cache=True)
def _contained_mask_nb(centers, radii, margin):
    n = centers.shape[0]
    out = np.zeros(n, dtype=np.bool_)
    for i in range(n):
        ci = centers[i]
        ri = radii[i]
        for j in range(n):
            if j == i:
                continue
            if abs(ci - centers[j]) + ri <= radii[j] - margin:
                out[i] = True
                break
    return out


def _contained_mask_np(centers, radii, margin, block=512):
    n = centers.shape[0]
    out = np.zeros(n, dtype=np.bool_)
    for start in range(0, n, block):
        stop = min(n, start + block)
        gap = np.abs(centers[start:stop, None] - centers[None, :]) + radii[start:stop, None]
        hit = gap <= radii[None, :] - margin
        idx = np.arange(start, stop)
        hit[idx - start, idx] = False
        out[start:stop] = hit.any(axis=1)
    return out


def contained_mask(centers, radii, margin=1e-9, use_numba=None):
    """Mark circles lying inside another circle by more than ``margin``.

    A float prefilter only: callers confirm every hit with exact arithmetic.
    """
    centers = np.ascontiguousarray(centers, dtype=np.float64)
    radii = np.ascontiguousarray(radii, dtype=np.float64)
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return _contained_mask_nb(centers, radii, float(margin))
    return _contained_mask_np(centers, radii, float(margin))


# =============================================================================
# permutations (arrays p with p[i] the image of i; products act left to right)
# =============================================================================

@njit(cache=True)
def _sift_nb(g, base, trans_inv, present, nlevels):
    h = g.copy()
    n = h.shape[0]
    tmp = np.empty(n, dtype=np.int64)
    for level in range(nlevels):
        x = h[base[level]]
        if not present[level, x]:
            return h, level
        u_inv = trans_inv[level, x]
        for i in range(n):
            tmp[i] = u_inv[h[i]]
        for i in range(n):
            h[i] = tmp[i]
    return h, nlevels


def _sift_np(g, base, trans_inv, present, nlevels):
    h = g.copy()
    for level in range(nlevels):
        x = h[base[level]]
        if not present[level, x]:
            return h, level
        h = trans_inv[level, x][h]
    return h, nlevels


def sift(g, base, trans_inv, present, nlevels, use_numba=None):
    """Strip ``g`` through a stabiliser chain.

    ``trans_inv[l, x]`` is the inverse of the transversal element carrying
    ``base[l]`` to ``x``; ``present[l, x]`` marks orbit points.  Returns the
    residue and the level where sifting stopped (``nlevels`` if it got through).
    """
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return _sift_nb(g, base, trans_inv, present, nlevels)
    return _sift_np(g, base, trans_inv, present, nlevels)


@njit(cache=True)
def _perm_order_nb(p):
    n = p.shape[0]
    seen = np.zeros(n, dtype=np.bool_)
    order = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        a, b = order, length
        while b:
            a, b = b, a % b
        order = order // a * length
    return order


def _perm_order_np(p):
    n = p.shape[0]
    seen = np.zeros(n, dtype=bool)
    order = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        order = np.lcm(order, length)
    return int(order)


def perm_order(p, use_numba=None):
    p = np.ascontiguousarray(p, dtype=np.int64)
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return int(_perm_order_nb(p))
    return _perm_order_np(p)
