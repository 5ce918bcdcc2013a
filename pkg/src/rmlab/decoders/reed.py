"""Majority-vote decoding, highest degree first.

For each subset A of size t the coefficient u_A is read off as the
majority of the 2^{m-t} coset sums of the current word over V_A; after a
degree layer is decided its evaluation is subtracted.  Majority ties
decode to 1.  Guaranteed exact for error weight below 2^{m-r-1}.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .. import gf2, rmcode
from .types import DecodeResult, hard_input_llr, soft_metric


@lru_cache(maxsize=None)
def _coset_coords(m: int, subset: int) -> np.ndarray:
    # rows: cosets of V_A; entries: coordinate indices
    n = 1 << m
    table = [[n - 1 - p for p in coset] for coset in rmcode.cosets_of_subspace(subset, m)]
    return np.array(table, dtype=np.intp)


@lru_cache(maxsize=None)
def _layer_masks(m: int, r: int) -> dict[int, tuple[int, ...]]:
    layers: dict[int, tuple[int, ...]] = {}
    for t in range(r + 1):
        layers[t] = tuple(a for a in rmcode.monomials(rmcode.CodeParams(m, r)) if a.bit_count() == t)
    return layers


def reed_decode(params: rmcode.CodeParams, y) -> DecodeResult:
    m, r = params.m, params.r
    y = np.asarray(y, dtype=np.uint8)
    if y.shape != (params.n,):
        raise ValueError(f"expected a length-{params.n} word")
    work = y.copy()
    layers = _layer_masks(m, r)
    coeffs: dict[int, int] = {}
    for t in range(r, -1, -1):
        layer_word = 0
        # half the coset count; the single coset at t == m votes alone
        threshold = 1 if t == m else 1 << (m - t - 1)
        for a in layers[t]:
            sums = np.bitwise_xor.reduce(work[_coset_coords(m, a)], axis=1)
            num1 = int(sums.sum())
            if num1 >= threshold:
                coeffs[a] = 1
                layer_word ^= rmcode.eval_monomial_packed(a, m)
        if layer_word:
            work ^= gf2.unpack_bits(layer_word, params.n)
    msg = rmcode.Message(params, coeffs)
    c = rmcode.encode(msg)
    return DecodeResult(params, c, msg, soft_metric(c, hard_input_llr(y)))
