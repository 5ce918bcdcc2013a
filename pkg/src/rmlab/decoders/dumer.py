"""Recursive Plotkin-decomposition decoding, plain and list flavors.

A length-2^m LLR vector splits into the z_m = 0 half L0 (odd coordinates)
and z_m = 1 half L1 (even coordinates).  The derivative part v sees the
LLR-of-sum of the halves; once v is decided the two halves combine
coherently for u.  The plain recursion stops at first-order leaves (FHT)
and full codes (per-coordinate signs).  The list variant stops at
zero-order and full leaves, branching 2 resp. 4 ways per path, pruning to
list size mu by the cumulative penalty

    sum over decided bits of ln(1 + exp(-(1 - 2 bit) * llr)),

which telescopes exactly to the channel-domain negative log-likelihood, so
an exhaustive list reproduces ML ranking.
"""

from __future__ import annotations

import numpy as np

from .. import rmcode
from ..channel import llr_of_sum
from .fht import fht_decode_order1
from .types import DecodeResult, result_for


def _softplus(x: np.ndarray) -> np.ndarray:
    return np.logaddexp(0.0, x)


def _plain_rec(m: int, r: int, L: np.ndarray) -> np.ndarray:
    if r == 0:
        bit = 1 if L.sum() < 0 else 0
        return np.full(L.size, bit, dtype=np.uint8)
    if r == 1:
        return fht_decode_order1(m, L).codeword
    if r == m:
        return (L < 0).astype(np.uint8)
    L0, L1 = L[1::2], L[0::2]
    v = _plain_rec(m - 1, r - 1, llr_of_sum(L0, L1))
    u = _plain_rec(m - 1, r, L0 + (1.0 - 2.0 * v) * L1)
    out = np.empty(L.size, dtype=np.uint8)
    out[1::2] = u
    out[0::2] = u ^ v
    return out


def dumer_decode(params: rmcode.CodeParams, L) -> DecodeResult:
    """Greedy recursive decoding with first-order and full-code leaves."""
    L = np.asarray(L, dtype=np.float64)
    if L.shape != (params.n,):
        raise ValueError(f"expected {params.n} LLRs")
    return result_for(params, _plain_rec(params.m, params.r, L), L)


def _prune(bits: np.ndarray, pens: np.ndarray, parents: np.ndarray, mu: int):
    if pens.size <= mu:
        return bits, pens, parents
    keep = np.argsort(pens, kind="stable")[:mu]
    return bits[keep], pens[keep], parents[keep]


def _list_rec(m: int, r: int, Ls: np.ndarray, pens: np.ndarray, mu: int):
    """Returns (bits, penalties, parent) for surviving paths.

    Ls is (paths, 2^m); parent maps each surviving path to its input row.
    """
    P, n = Ls.shape
    if r == 0:
        pen0 = pens + _softplus(-Ls).sum(axis=1)
        pen1 = pens + _softplus(Ls).sum(axis=1)
        bits = np.zeros((2 * P, n), dtype=np.uint8)
        bits[P:] = 1
        return _prune(bits, np.concatenate([pen0, pen1]), np.tile(np.arange(P), 2), mu)
    if r == m:
        hard = (Ls < 0).astype(np.uint8)
        mag = np.abs(Ls)
        base = pens + _softplus(-mag).sum(axis=1)
        t = min(3, n)
        pos = np.argsort(mag, axis=1, kind="stable")[:, :t]
        combos = ((np.arange(1 << t)[:, None] >> np.arange(t)[None, :]) & 1).astype(np.float64)
        flip_cost = np.take_along_axis(mag, pos, axis=1) @ combos.T  # (P, 2^t)
        cand_pen = base[:, None] + flip_cost
        take = np.argsort(cand_pen, axis=1, kind="stable")[:, :4]
        rows = []
        out_pens = []
        parents = []
        for p in range(P):
            for combo_idx in take[p]:
                w = hard[p].copy()
                sel = combos[combo_idx].astype(bool)
                w[pos[p][sel]] ^= 1
                rows.append(w)
                out_pens.append(cand_pen[p, combo_idx])
                parents.append(p)
        return _prune(
            np.array(rows, dtype=np.uint8), np.array(out_pens), np.array(parents), mu
        )
    L0, L1 = Ls[:, 1::2], Ls[:, 0::2]
    vbits, vpens, vpar = _list_rec(m - 1, r - 1, llr_of_sum(L0, L1), pens, mu)
    Lt = L0[vpar] + (1.0 - 2.0 * vbits) * L1[vpar]
    ubits, upens, upar = _list_rec(m - 1, r, Lt, vpens, mu)
    vsel = vbits[upar]
    out = np.empty((ubits.shape[0], n), dtype=np.uint8)
    out[:, 1::2] = ubits
    out[:, 0::2] = ubits ^ vsel
    return out, upens, vpar[upar]


def dumer_list_decode(params: rmcode.CodeParams, L, mu: int) -> DecodeResult:
    """List decoding with zero-order and full-code leaves, list size mu."""
    if mu < 1:
        raise ValueError("mu must be >= 1")
    L = np.asarray(L, dtype=np.float64)
    if L.shape != (params.n,):
        raise ValueError(f"expected {params.n} LLRs")
    bits, pens, _ = _list_rec(params.m, params.r, L[None, :], np.zeros(1), mu)
    best = int(np.argmin(pens))  # first minimum = deterministic tie-break
    return result_for(params, bits[best], L)
