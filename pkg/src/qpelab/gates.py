"""Single-qubit gate matrices.

All gates are 2x2 complex unitaries. Scalar phase factors are built with
math.cos/math.sin (libm) rather than numpy ufuncs so that the compiled
kernel, which also calls libm, produces bit-identical amplitudes.
"""

from math import cos, sin, pi

import numpy as np

from .errors import InvalidGateError

UNITARITY_TOL = 1e-10


def gate_matrix(entries) -> np.ndarray:
    """Validate and freeze a 2x2 unitary. Raises InvalidGateError otherwise."""
    m = np.asarray(entries, dtype=np.complex128)
    if m.shape != (2, 2):
        raise InvalidGateError(f"gate must be 2x2, got shape {m.shape}")
    dev = np.abs(m @ m.conj().T - np.eye(2)).max()
    if dev > UNITARITY_TOL:
        raise InvalidGateError(f"matrix is not unitary (deviation {dev:.3e})")
    m.setflags(write=False)
    return m


def phase_matrix(theta: float) -> np.ndarray:
    """diag(1, e^{i theta}) for theta in radians."""
    return gate_matrix([[1, 0], [0, complex(cos(theta), sin(theta))]])


def qft_rotation(k: int) -> np.ndarray:
    """The inverse-QFT building block diag(1, e^{2 pi i / 2^k})."""
    return phase_matrix(2 * pi / 2**k)


_S2 = 1 / np.sqrt(2)

H = gate_matrix([[_S2, _S2], [_S2, -_S2]])
X = gate_matrix([[0, 1], [1, 0]])
Y = gate_matrix([[0, -1j], [1j, 0]])
Z = gate_matrix([[1, 0], [0, -1]])
S = gate_matrix([[1, 0], [0, 1j]])
