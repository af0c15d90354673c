"""Numeric inner loops, each with a numba implementation and a numpy fallback.

The numba path is used when numba imports cleanly and the environment
variable ``PARAGRADE_NUMBA`` is not set to ``0``/``false``/``no``.  Both paths
are always importable so tests and the benchmark can compare them directly::

    from paragrade import kernels
    kernels.jacobi_residuals(a, b, c, s_ab, s_bc, s_ca, backend="numpy")
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly depending on the environment
    import numba as nb
except Exception:  # pragma: no cover
    nb = None

__all__ = [
    "HAVE_NUMBA",
    "numba_enabled",
    "default_backend",
    "jacobi_residuals",
    "pair_basis",
    "graded_swap",
    "lie_constraint_values",
]

HAVE_NUMBA = nb is not None


def numba_enabled() -> bool:
    flag = os.environ.get("PARAGRADE_NUMBA", "1").strip().lower()
    return HAVE_NUMBA and flag not in ("0", "false", "no", "off")


def default_backend() -> str:
    return "numba" if numba_enabled() else "numpy"


def _resolve(backend: str | None) -> str:
    backend = backend or default_backend()
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return backend


def _njit(fn):
    if nb is None:
        return None
    return nb.njit(cache=True)(fn)


# ---------------------------------------------------------------------------
# graded Jacobi residuals over a batch of triples


def _jacobi_numpy(a, b, c, s_ab, s_bc, s_ca):
    s_ab = s_ab[:, None, None]
    s_bc = s_bc[:, None, None]
    s_ca = s_ca[:, None, None]

    def br(x, y, s):
        return x @ y - s * (y @ x)

    bc = br(b, c, s_bc)
    ca = br(c, a, s_ca)
    ab = br(a, b, s_ab)
    # (x, (y, z)) uses the bicharacter sign of x against deg y + deg z
    res = (
        s_ca * br(a, bc, s_ab * s_ca)
        + s_ab * br(b, ca, s_bc * s_ab)
        + s_bc * br(c, ab, s_ca * s_bc)
    )
    return np.abs(res).reshape(res.shape[0], -1).max(axis=1)


def _bracket_loop(x, y, s):
    # explicit loops: for 4x4 blocks this beats BLAS calls with fresh arrays
    d = x.shape[0]
    out = np.empty((d, d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            acc = 0j
            for k in range(d):
                acc += x[i, k] * y[k, j] - s * y[i, k] * x[k, j]
            out[i, j] = acc
    return out


_bracket_nb = _njit(_bracket_loop) or _bracket_loop


def _jacobi_loop(a, b, c, s_ab, s_bc, s_ca):
    m, d, _ = a.shape
    out = np.zeros(m)
    for t in range(m):
        A = a[t]
        B = b[t]
        C = c[t]
        r1 = _bracket_nb(A, _bracket_nb(B, C, s_bc[t]), s_ab[t] * s_ca[t])
        r2 = _bracket_nb(B, _bracket_nb(C, A, s_ca[t]), s_bc[t] * s_ab[t])
        r3 = _bracket_nb(C, _bracket_nb(A, B, s_ab[t]), s_ca[t] * s_bc[t])
        worst = 0.0
        for i in range(d):
            for j in range(d):
                v = abs(s_ca[t] * r1[i, j] + s_ab[t] * r2[i, j] + s_bc[t] * r3[i, j])
                if v > worst:
                    worst = v
        out[t] = worst
    return out


_jacobi_nb = _njit(_jacobi_loop)


def jacobi_residuals(a, b, c, s_ab, s_bc, s_ca, backend: str | None = None) -> np.ndarray:
    """Max-abs graded Jacobi residual for each triple in a stack.

    ``a, b, c`` have shape ``(m, d, d)``; ``s_xy`` are the ``(m,)`` bracket
    signs ``(-1)**(deg x . deg y)``.
    """
    a = np.ascontiguousarray(a, dtype=np.complex128)
    b = np.ascontiguousarray(b, dtype=np.complex128)
    c = np.ascontiguousarray(c, dtype=np.complex128)
    if not (a.shape == b.shape == c.shape) or a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise ValueError("expected three stacks of square matrices with equal shapes")
    signs = [np.ascontiguousarray(s, dtype=np.float64) for s in (s_ab, s_bc, s_ca)]
    if _resolve(backend) == "numba":
        return _jacobi_nb(a, b, c, *signs)
    return _jacobi_numpy(a, b, c, *signs)


# ---------------------------------------------------------------------------
# braided-symmetric two-particle basis


def _pair_numpy(sign):
    d = sign.shape[0]
    i, j = np.triu_indices(d)
    keep = (i != j) | (sign[i, j] > 0)
    return np.stack([i[keep], j[keep]], axis=1).astype(np.int64), sign[i[keep], j[keep]].astype(np.int64)


def _pair_loop(sign):
    d = sign.shape[0]
    count = 0
    for i in range(d):
        for j in range(i, d):
            if i != j or sign[i, j] > 0:
                count += 1
    pairs = np.empty((count, 2), dtype=np.int64)
    signs = np.empty(count, dtype=np.int64)
    k = 0
    for i in range(d):
        for j in range(i, d):
            if i != j or sign[i, j] > 0:
                pairs[k, 0] = i
                pairs[k, 1] = j
                signs[k] = sign[i, j]
                k += 1
    return pairs, signs


_pair_nb = _njit(_pair_loop)


def pair_basis(sign, backend: str | None = None):
    """Index pairs ``i <= j`` spanning the braided-symmetric square.

    ``sign[i, j]`` is the exchange sign of single-particle basis vectors
    ``i, j``.  A diagonal pair survives only with sign +1 (no Pauli blocking).
    Returns ``(pairs, signs)``; pair ``(i, j)`` stands for
    ``e_i (x) e_j + sign * e_j (x) e_i``.
    """
    sign = np.ascontiguousarray(sign, dtype=np.int64)
    if _resolve(backend) == "numba":
        return _pair_nb(sign)
    return _pair_numpy(sign)


def _swap_numpy(sign):
    d = sign.shape[0]
    i, j = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    out = np.zeros((d * d, d * d))
    out[(j * d + i).ravel(), (i * d + j).ravel()] = sign.ravel()
    return out


def _swap_loop(sign):
    d = sign.shape[0]
    out = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            out[j * d + i, i * d + j] = sign[i, j]
    return out


_swap_nb = _njit(_swap_loop)


def graded_swap(sign, backend: str | None = None) -> np.ndarray:
    """Matrix of ``e_i (x) e_j -> sign[i, j] e_j (x) e_i`` on the square space."""
    sign = np.ascontiguousarray(sign, dtype=np.float64)
    if _resolve(backend) == "numba":
        return _swap_nb(sign)
    return _swap_numpy(sign)


# ---------------------------------------------------------------------------
# minimal Lie algebra constraints over a grid of parameter points


def _lie_numpy(points):
    d1, d2, d3, b1, b2, b3 = points.T
    return np.stack(
        [d1 * (b1 - b2 - b3), d2 * (b2 - b3 - b1), d3 * (b3 - b1 - b2)], axis=1
    )


def _lie_loop(points):
    m = points.shape[0]
    out = np.empty((m, 3))
    for t in range(m):
        d1, d2, d3, b1, b2, b3 = points[t, 0], points[t, 1], points[t, 2], points[t, 3], points[t, 4], points[t, 5]
        out[t, 0] = d1 * (b1 - b2 - b3)
        out[t, 1] = d2 * (b2 - b3 - b1)
        out[t, 2] = d3 * (b3 - b1 - b2)
    return out


_lie_nb = _njit(_lie_loop)


def lie_constraint_values(points, backend: str | None = None) -> np.ndarray:
    """The three minimal-Lie constraint values for rows ``(d1, d2, d3, b1, b2, b3)``."""
    points = np.ascontiguousarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != 6:
        raise ValueError("expected an (m, 6) array of (d1, d2, d3, b1, b2, b3)")
    if _resolve(backend) == "numba":
        return _lie_nb(points)
    return _lie_numpy(points)
