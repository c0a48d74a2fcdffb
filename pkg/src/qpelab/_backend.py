"""Kernel selection: compiled extension when importable, numpy fallback otherwise.

The environment variable QPELAB_BACKEND forces the choice: "compiled" (error
if the extension is missing), "python", or unset/"auto" for best-available.
Only the per-shot trajectory kernel has twin implementations; everything else
(noiseless sampling, single evolutions) is shared numpy code.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py
from .errors import ConfigurationError, NumericalError

try:
    from . import _kernels as _compiled
except ImportError:  # built without the extension; the fallback is complete
    _compiled = None

_KERNELS = {"python": _kernels_py}
if _compiled is not None:
    _KERNELS["compiled"] = _compiled


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_KERNELS))


def get_kernel(name: str | None = None):
    """Fetch a kernel module by name, or the active default."""
    if name is None:
        return ACTIVE
    try:
        return _KERNELS[name]
    except KeyError:
        raise ConfigurationError(
            f"backend {name!r} not available; have {available_backends()}"
        ) from None


def _select_default():
    forced = os.environ.get("QPELAB_BACKEND", "auto").strip().lower()
    if forced in ("", "auto"):
        return _compiled if _compiled is not None else _kernels_py
    if forced == "python":
        return _kernels_py
    if forced == "compiled":
        if _compiled is None:
            raise ConfigurationError(
                "QPELAB_BACKEND=compiled but the extension is not built"
            )
        return _compiled
    raise ConfigurationError(f"unknown QPELAB_BACKEND value {forced!r}")


ACTIVE = _select_default()


def backend_name() -> str:
    return ACTIVE.BACKEND_NAME


def sample_counts(probs: np.ndarray, shots: int, bit_generator) -> np.ndarray:
    """Multinomial sampling from an unnormalized distribution.

    Inverse-CDF with one uniform per shot, so any consumer drawing from the
    same stream sees the same outcomes regardless of backend.
    """
    cdf = np.cumsum(probs)
    total = float(cdf[-1])
    if not total > 0.0:
        raise NumericalError("cannot sample from an all-zero distribution")
    u = np.random.Generator(bit_generator).random(shots)
    idx = np.searchsorted(cdf, u * total, side="right")
    np.minimum(idx, len(cdf) - 1, out=idx)
    return np.bincount(idx, minlength=len(probs))
