# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled one-shot trajectory kernel.

This mirrors ``qpelab._kernels_py.run_trajectory`` instruction for
instruction and random draw for random draw: same opcode walk, same
gate-noise protocol (one uniform per active noise site, a second only when
the error fires), one uniform per measurement, one per recorded bit when the
readout channel is on. Any change here must land in the Python twin too —
the cross-backend tests compare classical outcomes under shared seeds.
"""

from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.math cimport cos, sin, sqrt

import numpy as np

from numpy.random cimport bitgen_t

from .errors import NumericalError

BACKEND_NAME = "compiled"

# opcodes: keep identical to qpelab._program
cdef enum:
    OP_H = 0
    OP_X = 1
    OP_S = 2
    OP_PHASE = 3
    OP_CPHASE = 4
    OP_MEASURE = 5
    OP_COND_PHASE = 6

cdef double _DEGENERATE = 1e-14


cdef inline double _next(bitgen_t* rng) noexcept:
    return rng.next_double(rng.state)


# Amplitudes live in an interleaved double buffer: element i of the
# statevector sits at (re, im) = (a[2i], a[2i+1]).

cdef void _h(double* a, Py_ssize_t dim, int q) noexcept:
    cdef double s = 1.0 / sqrt(2.0)
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << q
    cdef Py_ssize_t base, off, i0, i1
    cdef double x0, y0, x1, y1
    for base in range(0, dim, 2 * stride):
        for off in range(stride):
            i0 = 2 * (base + off)
            i1 = i0 + 2 * stride
            x0 = a[i0]
            y0 = a[i0 + 1]
            x1 = a[i1]
            y1 = a[i1 + 1]
            a[i0] = s * x0 + s * x1
            a[i0 + 1] = s * y0 + s * y1
            a[i1] = s * x0 - s * x1
            a[i1 + 1] = s * y0 - s * y1


cdef void _x(double* a, Py_ssize_t dim, int q) noexcept:
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << q
    cdef Py_ssize_t base, off, i0, i1
    cdef double x0, y0
    for base in range(0, dim, 2 * stride):
        for off in range(stride):
            i0 = 2 * (base + off)
            i1 = i0 + 2 * stride
            x0 = a[i0]
            y0 = a[i0 + 1]
            a[i0] = a[i1]
            a[i0 + 1] = a[i1 + 1]
            a[i1] = x0
            a[i1 + 1] = y0


cdef void _y(double* a, Py_ssize_t dim, int q) noexcept:
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << q
    cdef Py_ssize_t base, off, i0, i1
    cdef double x0, y0, x1, y1
    for base in range(0, dim, 2 * stride):
        for off in range(stride):
            i0 = 2 * (base + off)
            i1 = i0 + 2 * stride
            x0 = a[i0]
            y0 = a[i0 + 1]
            x1 = a[i1]
            y1 = a[i1 + 1]
            a[i0] = y1
            a[i0 + 1] = -x1
            a[i1] = -y0
            a[i1 + 1] = x0


cdef void _z(double* a, Py_ssize_t dim, int q) noexcept:
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << q
    cdef Py_ssize_t base, off, i1
    for base in range(0, dim, 2 * stride):
        for off in range(stride):
            i1 = 2 * (base + off + stride)
            a[i1] = -a[i1]
            a[i1 + 1] = -a[i1 + 1]


cdef void _s_gate(double* a, Py_ssize_t dim, int q) noexcept:
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << q
    cdef Py_ssize_t base, off, i1
    cdef double x1
    for base in range(0, dim, 2 * stride):
        for off in range(stride):
            i1 = 2 * (base + off + stride)
            x1 = a[i1]
            a[i1] = -a[i1 + 1]
            a[i1 + 1] = x1


cdef void _phase(double* a, Py_ssize_t dim, int q, double theta) noexcept:
    cdef double c = cos(theta)
    cdef double sn = sin(theta)
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << q
    cdef Py_ssize_t base, off, i1
    cdef double x, y
    for base in range(0, dim, 2 * stride):
        for off in range(stride):
            i1 = 2 * (base + off + stride)
            x = a[i1]
            y = a[i1 + 1]
            a[i1] = x * c - y * sn
            a[i1 + 1] = x * sn + y * c


cdef void _cphase(double* a, Py_ssize_t dim, int qc, int qt, double theta) noexcept:
    cdef double c = cos(theta)
    cdef double sn = sin(theta)
    cdef Py_ssize_t i, j
    cdef double x, y
    for i in range(dim):
        if ((i >> qc) & 1) and ((i >> qt) & 1):
            j = 2 * i
            x = a[j]
            y = a[j + 1]
            a[j] = x * c - y * sn
            a[j + 1] = x * sn + y * c


cdef void _pauli(double* a, Py_ssize_t dim, int q, int which) noexcept:
    if which == 1:
        _x(a, dim, q)
    elif which == 2:
        _y(a, dim, q)
    elif which == 3:
        _z(a, dim, q)


cdef void _noise1(double* a, Py_ssize_t dim, int q, double p1, bitgen_t* rng) noexcept:
    if p1 <= 0.0:
        return
    if _next(rng) >= p1:
        return
    _pauli(a, dim, q, 1 + <int>(_next(rng) * 3.0))


cdef void _noise2(double* a, Py_ssize_t dim, int qa, int qb, double p2, bitgen_t* rng) noexcept:
    cdef int pair
    if p2 <= 0.0:
        return
    if _next(rng) >= p2:
        return
    pair = 1 + <int>(_next(rng) * 15.0)
    _pauli(a, dim, qa, pair >> 2)
    _pauli(a, dim, qb, pair & 3)


def run_trajectory(object program, object model, object bit_generator, object scratch=None):
    """Run one noisy shot; returns the classical register as a little-endian word."""
    cdef double p1 = model.p1
    cdef double p2 = model.p2
    cdef double pr = model.p_readout
    cdef int nq = program.num_qubits
    cdef Py_ssize_t dim = (<Py_ssize_t>1) << nq
    if scratch is None:
        scratch = np.empty(dim, dtype=np.complex128)
    cdef double complex[::1] buf = scratch
    cdef double* a = <double*> &buf[0]
    cdef const int[::1] kind = program.kind
    cdef const int[::1] qubit = program.qubit
    cdef const int[::1] other = program.other
    cdef const int[::1] value = program.value
    cdef const double[::1] theta = program.theta
    cdef bitgen_t* rng = <bitgen_t*> PyCapsule_GetPointer(
        bit_generator.capsule, "BitGenerator")

    cdef Py_ssize_t i, j
    cdef int k, q, o, outcome, recorded
    cdef double u, p, p_one, p_zero, norm
    cdef unsigned long long word = 0
    cdef unsigned long long one = 1

    for j in range(2 * dim):
        a[j] = 0.0
    a[0] = 1.0

    for i in range(kind.shape[0]):
        k = kind[i]
        q = qubit[i]
        if k == OP_H:
            _h(a, dim, q)
            _noise1(a, dim, q, p1, rng)
        elif k == OP_X:
            _x(a, dim, q)
            _noise1(a, dim, q, p1, rng)
        elif k == OP_S:
            _s_gate(a, dim, q)
            _noise1(a, dim, q, p1, rng)
        elif k == OP_PHASE:
            _phase(a, dim, q, theta[i])
            _noise1(a, dim, q, p1, rng)
        elif k == OP_CPHASE:
            o = other[i]
            _cphase(a, dim, q, o, theta[i])
            _noise2(a, dim, q, o, p2, rng)
        elif k == OP_MEASURE:
            p_one = 0.0
            p_zero = 0.0
            for j in range(dim):
                p = a[2 * j] * a[2 * j] + a[2 * j + 1] * a[2 * j + 1]
                if (j >> q) & 1:
                    p_one += p
                else:
                    p_zero += p
            if p_one < _DEGENERATE and p_zero < _DEGENERATE:
                raise NumericalError(
                    f"state norm vanished at measurement of qubit {q}")
            u = _next(rng)
            outcome = 1 if u < p_one else 0
            norm = sqrt(p_one) if outcome else sqrt(p_zero)
            for j in range(dim):
                if ((j >> q) & 1) != outcome:
                    a[2 * j] = 0.0
                    a[2 * j + 1] = 0.0
                else:
                    a[2 * j] /= norm
                    a[2 * j + 1] /= norm
            recorded = outcome
            if pr > 0.0 and _next(rng) < pr:
                recorded = 1 - recorded
            o = other[i]
            word = (word & ~(one << o)) | ((<unsigned long long>recorded) << o)
        else:  # OP_COND_PHASE; fires only on a classical match, else no draws
            o = other[i]
            if <int>((word >> o) & 1) == value[i]:
                _phase(a, dim, q, theta[i])
                _noise1(a, dim, q, p1, rng)
    return word
