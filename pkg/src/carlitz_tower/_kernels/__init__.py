"""Kernel dispatch: compiled Cython kernels when available, numpy otherwise.

Set ``CARLITZ_TOWER_PURE=1`` to force the numpy implementations.
"""

import os

import numpy as np

from . import _pykernels

BACKEND = "python"
_impl = _pykernels
if os.environ.get("CARLITZ_TOWER_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels


def backend(name=None):
    """Return a kernel module: 'cython', 'python', or the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def _i32(a):
    return np.ascontiguousarray(a, dtype=np.int32)


def _i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def residue_histogram(tables, q, n, red, impl=None):
    addt, mult, negt, _ = tables
    return (impl or _impl).residue_histogram(_i32(addt), _i32(mult), _i32(negt), q, n, _i32(red))


def monic_power_sums(tables, q, n, J, redP=None, impl=None):
    addt, mult, negt, _ = tables
    rp = None if redP is None else _i32(redP)
    return (impl or _impl).monic_power_sums(_i32(addt), _i32(mult), _i32(negt), q, n, J, rp)


def unit_power_table(tables, q, n, red, redP, modulus, teich_inv, E, impl=None):
    addt, mult, negt, _ = tables
    return (impl or _impl).unit_power_table(_i32(addt), _i32(mult), _i32(negt), q, n, _i32(red),
                                            _i32(redP), _i32(modulus), _i32(teich_inv), E)


def reducible_mask(tables, q, n, impl=None):
    addt, mult, _, _ = tables
    return (impl or _impl).reducible_mask(_i32(addt), _i32(mult), q, n)


def count_sparse_roots(zech, qm1, coeff_logs, exps, skip, impl=None):
    return (impl or _impl).count_sparse_roots(_i32(zech), qm1, _i64(coeff_logs), _i64(exps),
                                              np.ascontiguousarray(skip, dtype=np.uint8))
