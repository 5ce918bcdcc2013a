"""Fast Hadamard transform and first-order ML decoding.

fht() transforms over array indices with the pairing (-1)^{popcount(s & t)}.
The decoder wants the transform over evaluation points; with the coordinate
convention (point = index XOR (n-1)) that is just the reversed array, since
index reversal IS complementation here.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .. import rmcode
from .types import DecodeResult, soft_metric


def fht(values: np.ndarray) -> np.ndarray:
    """Walsh-Hadamard transform along the last axis (length a power of two).

    Integer inputs stay in exact int64 arithmetic.
    """
    v = np.asarray(values)
    dtype = np.int64 if np.issubdtype(v.dtype, np.integer) else np.float64
    v = v.astype(dtype, copy=True)
    n = v.shape[-1]
    if n == 0 or n & (n - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < n:
        for start in range(0, n, 2 * h):
            a = v[..., start : start + h].copy()
            b = v[..., start + h : start + 2 * h]
            v[..., start : start + h] = a + b
            v[..., start + h : start + 2 * h] = a - b
        h *= 2
    return v


@lru_cache(maxsize=None)
def _parity_table(m: int) -> np.ndarray:
    # row u, column j: <u, point(j)> over GF(2)
    n = 1 << m
    pts = np.arange(n, dtype=np.uint32) ^ (n - 1)
    return (np.bitwise_count(np.arange(n, dtype=np.uint32)[:, None] & pts[None, :]) & 1).astype(
        np.uint8
    )


def linear_word(m: int, u: int, u0: int) -> np.ndarray:
    """Codeword of u0 + sum_i u_i x_i; u in point encoding (bit m-i = u_i)."""
    return _parity_table(m)[u] ^ np.uint8(u0)


def _linear_message(params: rmcode.CodeParams, u: int, u0: int) -> rmcode.Message:
    m = params.m
    coeffs = {1 << (i - 1): (u >> (m - i)) & 1 for i in range(1, m + 1)}
    coeffs[0] = u0
    return rmcode.Message(params, {a: v for a, v in coeffs.items() if v})


def point_transform(L) -> np.ndarray:
    """Transform of L over points: entry u is sum_z (-1)^{<u, z>} L_z."""
    arr = np.asarray(L, dtype=np.float64)
    return fht(arr[..., ::-1])


def fht_decode_order1(m: int, L) -> DecodeResult:
    """ML decoding of RM(m, 1) by exhaustive correlation.

    Ties on |transform| pick the smallest index u, and a zero correlation
    picks constant term 0.
    """
    params = rmcode.CodeParams(m, 1)
    L = np.asarray(L, dtype=np.float64)
    if L.shape != (params.n,):
        raise ValueError(f"expected {params.n} LLRs")
    spec = point_transform(L)
    u = int(np.argmax(np.abs(spec)))
    u0 = 1 if spec[u] < 0 else 0
    c = linear_word(m, u, u0)
    return DecodeResult(params, c, _linear_message(params, u, u0), soft_metric(c, L))


def fht_list_decode_order1(m: int, L, s: int) -> list[DecodeResult]:
    """The s best first-order candidates by |transform|, best first."""
    params = rmcode.CodeParams(m, 1)
    L = np.asarray(L, dtype=np.float64)
    if not (1 <= s <= params.n):
        raise ValueError("list size out of range")
    spec = point_transform(L)
    order = np.argsort(-np.abs(spec), kind="stable")[:s]
    out = []
    for u in order:
        u = int(u)
        u0 = 1 if spec[u] < 0 else 0
        c = linear_word(m, u, u0)
        out.append(DecodeResult(params, c, _linear_message(params, u, u0), soft_metric(c, L)))
    return out


def fht_decode_words(rows: np.ndarray) -> np.ndarray:
    """Batch hard decoding: per row the best first-order codeword (bits)."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.float64))
    n = rows.shape[-1]
    m = n.bit_length() - 1
    spec = fht(rows[:, ::-1])
    idx = np.argmax(np.abs(spec), axis=1)
    u0 = spec[np.arange(rows.shape[0]), idx] < 0
    return _parity_table(m)[idx] ^ u0[:, None].astype(np.uint8)
