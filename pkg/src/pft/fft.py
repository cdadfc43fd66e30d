"""Mixed-radix FFT used for the size-p batch transforms and the full-size baseline.

Lengths up to 64 use a dense DFT matrix. Larger lengths are split
Cooley-Tukey style, ``n = n1 * n2`` with ``n1`` a small radix, and prime
lengths above 61 go through Bluestein's chirp-z convolution on a padded
power-of-two length. Plans (DFT matrices, twiddles, chirps) are built once
per length and cached. Transforms operate along axis 0 of a 2-D
``(n, batch)`` array so that every column is handled in one pass.
"""

import functools

import numpy as np

DIRECT_MAX = 64
MAX_RADIX = 32


def factorize(n):
    """Prime factors of ``n`` in ascending order (with multiplicity)."""
    factors = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors.append(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append(n)
    return factors


def _roots(n, k):
    # exp(-2*pi*i*k/n) with the integer phase reduced first for accuracy
    return np.exp(-2j * np.pi * (np.asarray(k, dtype=np.int64) % n) / n)


def _choose_radix(n):
    factors = factorize(n)
    if factors[-1] == n:
        return None
    radix = 1
    for f in sorted(factors, reverse=True):
        if f > DIRECT_MAX:
            continue
        if radix * f <= MAX_RADIX or radix == 1:
            radix *= f
    if radix == 1:
        # only large primes: peel the smallest one, Bluestein handles it
        radix = factors[0]
    return radix


class FFTPlan:
    """Precomputed constants for forward transforms of one length."""

    def __init__(self, n):
        if n < 1:
            raise ValueError(f"FFT length must be positive, got {n}")
        self.n = n
        if n <= DIRECT_MAX:
            self.kind = "direct"
            k = np.arange(n)
            self.matrix = _roots(n, np.outer(k, k))
            return
        radix = _choose_radix(n)
        if radix is None:
            self.kind = "bluestein"
            j = np.arange(n, dtype=np.int64)
            self.chirp = np.exp(-1j * np.pi * ((j * j) % (2 * n)) / n)
            size = 1 << (2 * n - 2).bit_length()
            filt = np.zeros(size, dtype=np.complex128)
            filt[:n] = self.chirp.conj()
            filt[size - n + 1:] = self.chirp[1:].conj()[::-1]
            self.sub = get_plan(size)
            self.filter_hat = self.sub.forward(filt[:, None])
            self.padded = size
            return
        self.kind = "split"
        self.n1 = radix
        self.n2 = n // radix
        self.head = get_plan(self.n1)
        self.sub = get_plan(self.n2)
        self.twiddle = _roots(n, np.outer(np.arange(self.n1), np.arange(self.n2)))

    def forward(self, x):
        """DFT along axis 0 of a 2-D complex array; returns a new array."""
        n, batch = x.shape
        if self.kind == "direct":
            return self.matrix @ x
        if self.kind == "bluestein":
            padded = np.zeros((self.padded, batch), dtype=np.complex128)
            padded[:n] = x * self.chirp[:, None]
            spec = self.sub.forward(padded)
            spec *= self.filter_hat
            conv = np.conj(self.sub.forward(np.conj(spec))) / self.padded
            return conv[:n] * self.chirp[:, None]
        n1, n2 = self.n1, self.n2
        # x[j1*n2 + j2] -> DFT over j1, twiddle, DFT over j2
        y = self.head.forward(x.reshape(n1, n2 * batch)).reshape(n1, n2, batch)
        y *= self.twiddle[:, :, None]
        y = np.ascontiguousarray(y.transpose(1, 0, 2)).reshape(n2, n1 * batch)
        return self.sub.forward(y).reshape(n, batch)


@functools.lru_cache(maxsize=128)
def get_plan(n):
    return FFTPlan(int(n))


def fft(x, axis=-1):
    """Forward DFT of ``x`` along ``axis`` (any length >= 1)."""
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim == 0:
        raise ValueError("fft needs at least a 1-D input")
    moved = np.moveaxis(x, axis, 0)
    n = moved.shape[0]
    if n == 0:
        raise ValueError("fft of an empty array")
    flat = np.ascontiguousarray(moved).reshape(n, -1)
    out = get_plan(n).forward(flat).reshape(moved.shape)
    return np.moveaxis(out, 0, axis)


def ifft(x, axis=-1):
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[axis]
    return np.conj(fft(np.conj(x), axis=axis)) / n


def fft2(x):
    """2-D DFT over the first two axes by row-column decomposition."""
    x = np.asarray(x, dtype=np.complex128)
    return fft(fft(x, axis=0), axis=1)


def batch_fft_columns(C):
    """Column-wise FFT of a ``(p, r)`` matrix."""
    C = np.asarray(C, dtype=np.complex128)
    if C.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {C.shape}")
    return get_plan(C.shape[0]).forward(np.ascontiguousarray(C))
