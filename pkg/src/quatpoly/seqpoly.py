"""Quaternion coefficient sequences under componentwise addition and
non-commutative convolution.

A sequence is a ring element in its own right; there is deliberately no
evaluation operation here, because substituting a point into a coefficient
sequence does not commute with the convolution product over quaternions.

The fast product splits both operands into their four real component
sequences, runs the 16 real convolutions through the FFT, and recombines
them with the basis sign table; the naive double loop stays as the oracle.
"""

from __future__ import annotations

import numpy as np

from . import complexpoly
from .qarray import from_quaternions, qmul, to_quaternions
from .quaternion import Quaternion


class QSeq:
    """Finite quaternion sequence; index l holds the coefficient of slot l.

    Stored as an (n, 4) float component array; `X` is (0, 1) in slot one,
    i.e. ``QSeq([Quaternion(0), Quaternion(1)])``.
    """

    __slots__ = ("comps",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, np.ndarray) and coeffs.ndim == 2 and coeffs.shape[1] == 4:
            self.comps = np.array(coeffs, dtype=float)
        else:
            self.comps = from_quaternions(coeffs)

    @classmethod
    def from_components(cls, arr) -> "QSeq":
        return cls(np.asarray(arr, dtype=float).reshape(-1, 4))

    def __len__(self):
        return self.comps.shape[0]

    def __getitem__(self, l) -> Quaternion:
        return Quaternion(*self.comps[l])

    def __iter__(self):
        return iter(to_quaternions(self.comps))

    def __eq__(self, other):
        if not isinstance(other, QSeq):
            return NotImplemented
        return self.comps.shape == other.comps.shape and bool(
            np.all(self.comps == other.comps))

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return convolve_fast(self, other)

    def __repr__(self):
        return f"QSeq({[str(q) for q in self]})"


def add(a: QSeq, b: QSeq) -> QSeq:
    """Componentwise sum, zero-padded to the longer length."""
    n = max(len(a), len(b))
    out = np.zeros((n, 4))
    out[: len(a)] += a.comps
    out[: len(b)] += b.comps
    return QSeq.from_components(out)


def convolve_naive(a: QSeq, b: QSeq) -> QSeq:
    """Exact convolution c_l = sum_t a_t * b_(l-t); the factor order matters."""
    n, m = len(a), len(b)
    if n == 0 or m == 0:
        return QSeq()
    out = np.zeros((n + m - 1, 4))
    for t in range(n):
        out[t:t + m] += qmul(a.comps[t], b.comps)
    return QSeq.from_components(out)


def convolve_fast(a: QSeq, b: QSeq) -> QSeq:
    """FFT convolution from 16 real convolutions and 12 sequence additions.

    Componentwise, with conv(s, t) the real convolution of component s of
    `a` with component t of `b`, the basis products recombine exactly like
    a single quaternion product.  Matches `convolve_naive` up to rounding.
    """
    n, m = len(a), len(b)
    if n == 0 or m == 0:
        return QSeq()
    out_len = n + m - 1
    size = complexpoly._next_pow2(out_len)
    fa = complexpoly.fft(complexpoly._pad_last(a.comps.T, size))
    fb = complexpoly.fft(complexpoly._pad_last(b.comps.T, size))
    spectra = fa[:, None, :] * fb[None, :, :]
    conv = complexpoly.fft(spectra.reshape(16, size), inverse=True)[:, :out_len]
    conv = conv.real.reshape(4, 4, out_len)
    out = np.empty((out_len, 4))
    out[:, 0] = conv[0, 0] - conv[1, 1] - conv[2, 2] - conv[3, 3]
    out[:, 1] = conv[0, 1] + conv[1, 0] + conv[2, 3] - conv[3, 2]
    out[:, 2] = conv[0, 2] + conv[2, 0] + conv[3, 1] - conv[1, 3]
    out[:, 3] = conv[0, 3] + conv[3, 0] + conv[1, 2] - conv[2, 1]
    return QSeq.from_components(out)


def random_qseq(n: int, rng, scale: float = 1.0) -> QSeq:
    """Sequence of n quaternions with components uniform in [-scale, scale]."""
    return QSeq.from_components(rng.uniform(-scale, scale, size=(n, 4)))
