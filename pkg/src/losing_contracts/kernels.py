"""Kernel backend selection.

The compiled extension is used when it imports and the scaled payoffs fit in
63-bit sums. Setting ``LOSING_CONTRACTS_PURE=1`` forces the pure-Python
fallback, which handles arbitrarily large integers.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from types import ModuleType

from . import _kernels_py

try:
    if os.environ.get("LOSING_CONTRACTS_PURE"):
        raise ImportError("pure backend requested")
    import numpy as np

    from . import _kernels as _compiled
except ImportError:
    np = None
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"
_LIMIT = 1 << 62


@dataclass(frozen=True)
class Payload:
    """A game's integer payoff tensor packaged for one backend module."""

    data: object
    denominator: int
    module: ModuleType

    def nash(self, strides, lo, hi) -> list[int]:
        return self.module.nash_profiles(self.data, strides, lo, hi)

    def strong(self, strides, lo, hi, eligible, target, strict, alias=None, strict_members=None):
        if alias is not None and self.module is not _kernels_py:
            alias = np.asarray(alias, dtype=np.int64)
        return self.module.strong_counterexample(
            self.data, strides, lo, hi, tuple(eligible), tuple(target), strict,
            alias, strict_members,
        )

    def pd(self, strides, lo, hi):
        return self.module.pd_violation(self.data, strides, lo, hi)


def available_backends() -> dict[str, ModuleType]:
    out = {"python": _kernels_py}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out


def prepare(game, backend: str | None = None) -> Payload:
    """Scale ``game`` to integers and pick the fastest backend that is exact."""
    ints, denom = game.scaled
    if backend is None:
        backend = BACKEND
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        bound = max(abs(x) for row in ints for x in row) * game.n
        if bound < _LIMIT:
            return Payload(np.array(ints, dtype=np.int64), denom, _compiled)
    return Payload([list(row) for row in ints], denom, _kernels_py)
