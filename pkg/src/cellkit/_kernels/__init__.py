"""Kernel backend selection.

Two interchangeable implementations of the structure-constant column
scan: `pure` (arbitrary-precision Python) and `_fast` (Cython, int64
coefficient arenas with overflow detection). The compiled one handles
the plain scan; calls that collect rows or track a marked subgroup, and
any call that overflows the int64 window, go through the pure path.
CELLKIT_FORCE_PURE in the environment disables the compiled kernel.
"""

import importlib
import os

from . import pure

_fast = None
if not os.environ.get("CELLKIT_FORCE_PURE"):
    try:
        _fast = importlib.import_module(__name__ + "._fast")
    except ImportError:
        _fast = None

BACKEND = "c" if _fast is not None else "pure"

_ARENAS = {}


def _arena_for(xlist, xs, xhat, genrows):
    key = id(genrows)
    hit = _ARENAS.get(key)
    if hit is not None:
        held, held_xlist, held_xs, held_xhat, arena = hit
        if held is genrows and held_xlist == xlist and held_xs is xs and held_xhat is xhat:
            return arena
    n = len(xs)
    nrank = 1 + max(s for s, _ in genrows)
    arena = _fast.prepare(genrows, xlist, xs, xhat, n, nrank)
    _ARENAS[key] = (genrows, list(xlist), xs, xhat, arena)
    return arena


def scan_column(y, xlist, xs, xhat, genrows, gdeg,
                collect=None, w1mask=None, gdeg1=None):
    if (
        _fast is not None
        and collect is None
        and w1mask is None
        and gdeg1 is None
    ):
        try:
            arena = _arena_for(xlist, xs, xhat, genrows)
            return _fast.scan(arena, y, gdeg)
        except OverflowError:
            # workspace may hold partial writes; rebuild on next use
            _ARENAS.pop(id(genrows), None)
    return pure.scan_column(
        y, xlist, xs, xhat, genrows, gdeg,
        collect=collect, w1mask=w1mask, gdeg1=gdeg1,
    )


def backend_name():
    return BACKEND
