"""Singular values of banded matrices.

The augmented systems are block bidiagonal once unknowns are ordered by
time node, so their singular values are obtained by an orthogonal reduction
of the band to bidiagonal form (LAPACK ``dgbbrd``) followed by the
high-relative-accuracy bidiagonal solver ``dlasq1``.  Both routines are
taken from the LAPACK that ships with scipy via ``scipy.linalg.cython_lapack``.
Dense ``scipy.linalg.svdvals`` is the fallback and the reference in tests.
"""

from __future__ import annotations

import ctypes
import functools

import numpy as np
import scipy.linalg

__all__ = ["svdvals", "band_svdvals", "dense_svdvals", "bandwidths"]

_vp = ctypes.c_void_p


@functools.lru_cache(maxsize=None)
def _lapack(name, nargs):
    from scipy.linalg import cython_lapack

    capsule = cython_lapack.__pyx_capi__[name]
    get_name = ctypes.pythonapi.PyCapsule_GetName
    get_name.restype = ctypes.c_char_p
    get_name.argtypes = [ctypes.py_object]
    get_ptr = ctypes.pythonapi.PyCapsule_GetPointer
    get_ptr.restype = ctypes.c_void_p
    get_ptr.argtypes = [ctypes.py_object, ctypes.c_char_p]
    ptr = get_ptr(capsule, get_name(capsule))
    return ctypes.CFUNCTYPE(None, *([_vp] * nargs))(ptr)


def _int(v):
    return np.array([v], dtype=np.int32)


def _p(a):
    return a.ctypes.data_as(_vp)


def bandwidths(a):
    """Lower and upper bandwidth ``(kl, ku)`` of a dense matrix."""
    r, c = np.nonzero(a)
    if r.size == 0:
        return 0, 0
    d = c - r
    return max(int(-d.min()), 0), max(int(d.max()), 0)


def band_svdvals(a, kl=None, ku=None):
    """Singular values (descending) of a banded matrix stored densely."""
    a = np.asarray(a, dtype=float)
    m, n = a.shape
    if kl is None or ku is None:
        kl, ku = bandwidths(a)
    ldab = kl + ku + 1
    ab = np.zeros((ldab, n), order="F")
    for j in range(n):
        i0, i1 = max(0, j - ku), min(m, j + kl + 1)
        if i0 < i1:
            ab[ku + i0 - j : ku + i1 - j, j] = a[i0:i1, j]
    k = min(m, n)
    d = np.zeros(k)
    e = np.zeros(max(k - 1, 1))
    dummy = np.zeros(1)
    one = _int(1)
    info = _int(0)
    vect = ctypes.c_char(b"N")
    work = np.zeros(2 * max(m, n))
    _lapack("dgbbrd", 18)(
        ctypes.cast(ctypes.pointer(vect), _vp),
        _p(_int(m)), _p(_int(n)), _p(_int(0)), _p(_int(kl)), _p(_int(ku)),
        _p(ab), _p(_int(ldab)), _p(d), _p(e),
        _p(dummy), _p(one), _p(dummy), _p(one), _p(dummy), _p(one),
        _p(work), _p(info),
    )  # fmt: skip
    if info[0] != 0:
        raise np.linalg.LinAlgError(f"dgbbrd failed with info={info[0]}")
    # lower bidiagonal (m < n) has the singular values of its transpose
    work = np.zeros(4 * k)
    _lapack("dlasq1", 5)(_p(_int(k)), _p(d), _p(e), _p(work), _p(info))
    if info[0] != 0:
        raise np.linalg.LinAlgError(f"dlasq1 failed with info={info[0]}")
    return d


def dense_svdvals(a):
    return scipy.linalg.svdvals(np.asarray(a, dtype=float))


def svdvals(a, banded="auto"):
    """Singular values in descending order.

    ``banded="auto"`` uses the band reduction when the band is narrow
    compared with the matrix size.
    """
    a = np.asarray(a, dtype=float)
    if min(a.shape) == 0:
        return np.zeros(0)
    if banded == "auto":
        kl, ku = bandwidths(a)
        banded = (kl + ku + 1) * 4 <= min(a.shape)
    if banded:
        try:
            return band_svdvals(a)
        except (KeyError, AttributeError, OSError):  # pragma: no cover - exotic scipy builds
            pass
    return dense_svdvals(a)
