"""Square QAM with a binary-reflected Gray labeling per real dimension.

A 2^(2b)-QAM symbol is a pair of 2^b-PAM coordinates with levels
{+-1, +-3, ..., +-(M-1)}.  Level index k (left to right, k = 0..M-1) carries
the codeword k ^ (k >> 1), so adjacent levels differ in exactly one bit.
The shifted index u = (s + M - 1) / 2 maps the level s onto {0..M-1}, which
is what the integer-lattice decoders work on.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConfigInvalid


def pam_order(qam_order: int) -> int:
    m = math.isqrt(qam_order)
    if m * m != qam_order or m < 2 or (m & (m - 1)) != 0:
        raise ConfigInvalid(
            f"qam_order must be an even power of two (4, 16, 64, ...), got {qam_order}")
    return m


def bits_per_pam(qam_order: int) -> int:
    return pam_order(qam_order).bit_length() - 1


def symbol_energy(qam_order: int) -> float:
    """Mean squared magnitude of a complex QAM symbol, 2 (M^2 - 1) / 3."""
    m = pam_order(qam_order)
    return 2.0 * (m * m - 1) / 3.0


def gray_encode(k):
    k = np.asarray(k, dtype=np.int64)
    return k ^ (k >> 1)


def gray_decode(v):
    out = np.asarray(v, dtype=np.int64).copy()
    for shift in (1, 2, 4, 8, 16, 32):
        out ^= out >> shift
    return out


def level_from_index(u, qam_order: int):
    """Shifted index u in {0..M-1} to the PAM level 2u - (M-1)."""
    m = pam_order(qam_order)
    return 2 * np.asarray(u, dtype=np.int64) - (m - 1)


def index_from_level(s, qam_order: int):
    m = pam_order(qam_order)
    return (np.asarray(s, dtype=np.int64) + (m - 1)) // 2


def bit_errors(u_sent, u_decided, gray: bool = True) -> int:
    """Hamming distance between the codewords of two index arrays.

    With gray=True (the default) indices are Gray-coded before comparison;
    otherwise the plain binary labels are compared.
    """
    if gray:
        x = gray_encode(u_sent) ^ gray_encode(u_decided)
    else:
        x = np.asarray(u_sent, dtype=np.int64) ^ np.asarray(u_decided, dtype=np.int64)
    count = 0
    xf = x.ravel()
    while xf.any():
        count += int(np.count_nonzero(xf & 1))
        xf = xf >> 1
    return count
