"""Parameter recursions and the bounds derived from them."""

from functools import lru_cache
from math import comb

from ..errors import InputError


@lru_cache(maxsize=None)
def tau(h, k):
    """tau(0,k) = k-2 and tau(h,k) = tau(h-1, 2k+1) + k + 1."""
    if h < 0 or k < 0:
        raise InputError("h and k must be non-negative")
    if h == 0:
        return k - 2
    return tau(h - 1, 2 * k + 1) + k + 1


@lru_cache(maxsize=None)
def c_param(h, d, k):
    if h < 0 or d < 0 or k < 0:
        raise InputError("h, d, k must be non-negative")
    if h == 0:
        return 1
    return max(d - 1, 2, k, c_param(h - 1, d + 2 * k, 2 * k + 1), 2 * (d - 1) * 2 ** k - 1)


def t_size(h, d, k):
    """Vertex count of K_k ⊕ U_{h,d}."""
    if h < 1 or d < 1 or k < 0:
        raise InputError("need h, d >= 1 and k >= 0")
    if d == 1:
        return k + h
    return k + d * (d ** h - 1) // (d - 1)


@lru_cache(maxsize=None)
def eps_impl(h, d, k, t):
    """Geodesic/hitting-set budget with the bounded-treewidth hitting set.

    The (d-1)t term is the size of a union of d-1 bags of width t-1.
    """
    if h < 0 or d < 1 or k < 0 or t < 1:
        raise InputError("need h >= 0, d >= 1, k >= 0, t >= 1")
    if h == 0:
        return max(k - 3, 1)
    return max(d - 1, k, (d - 1) * t, eps_impl(h - 1, d + 2 * k, 2 * k + 1, t))


@lru_cache(maxsize=None)
def singleton_tw_bound(h, k, t):
    """Treewidth bound for the main partition when the h=1 torso keeps singleton parts."""
    if h < 0 or k < 0 or t < 1:
        raise InputError("need h, k >= 0 and t >= 1")
    if h == 0:
        return t - 1
    return singleton_tw_bound(h - 1, 2 * k + 1, t) + k + 1


def wcol_bound(h, d, t, r, k=0):
    """2·eps·(2r+1)·C(tau+r, tau) for the ordering built from a wcol partition."""
    th = tau(h, k)
    return 2 * eps_impl(h, d, k, t) * (2 * r + 1) * comb(th + r, th)


def chordal_wcol_bound(t, r):
    """C(r+t-2, t-2)·max(t-3, 1)·(2r+1) for K_t-minor-free graphs via chordal partitions."""
    if t < 3:
        raise InputError("t must be at least 3")
    return comb(r + t - 2, t - 2) * max(t - 3, 1) * (2 * r + 1)


def bounds_row(h, d, k, t, r):
    return {
        "h": h, "d": d, "k": k, "t": t, "r": r,
        "tau": tau(h, k),
        "c_param": c_param(h, d, k),
        "t_size": t_size(h, d, k),
        "eps_impl": eps_impl(h, d, k, t),
        "partition_tw_bound": tau(h, k),
        "partition_width_bound": c_param(h, d, k) * t,
        "wcol_bound": wcol_bound(h, d, t, r, k),
    }
