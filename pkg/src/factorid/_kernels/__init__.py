"""Kernel backend selection: compiled extension if built, else pure Python.

Set FACTORID_KERNELS=pure or FACTORID_KERNELS=compiled to force a backend.
Both backends implement the same three functions with identical outputs.
"""

import os
from contextlib import contextmanager

from factorid._kernels import pure as _pure

try:
    from factorid._kernels import _ckernels as _compiled
except ImportError:
    _compiled = None

_forced = os.environ.get("FACTORID_KERNELS")
if _forced == "pure":
    _impl = _pure
elif _forced == "compiled":
    if _compiled is None:
        raise ImportError(
            "FACTORID_KERNELS=compiled but the extension is not built; "
            "run `python setup.py build_ext --inplace`"
        )
    _impl = _compiled
elif _forced is None:
    _impl = _compiled if _compiled is not None else _pure
else:
    raise ImportError(f"unknown FACTORID_KERNELS value {_forced!r}")


def active_backend() -> str:
    """Name of the backend in use, 'compiled' or 'pure'."""
    return "pure" if _impl is _pure else "compiled"


def available_backends() -> tuple[str, ...]:
    return ("pure",) if _compiled is None else ("pure", "compiled")


def backend_module(name: str):
    if name == "pure":
        return _pure
    if name == "compiled":
        if _compiled is None:
            raise ValueError("compiled backend is not built")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


@contextmanager
def forced_backend(name: str):
    """Temporarily route kernel calls through the named backend."""
    global _impl
    previous = _impl
    _impl = backend_module(name)
    try:
        yield
    finally:
        _impl = previous


def hopcroft_karp(n_left, n_right, indptr, indices):
    return _impl.hopcroft_karp(n_left, n_right, indptr, indices)


def dinic_min_cut(n_nodes, source, sink, tails, heads, caps):
    return _impl.dinic_min_cut(n_nodes, source, sink, tails, heads, caps)


def counting_sweep(r, s, col_masks):
    return _impl.counting_sweep(r, s, col_masks)
