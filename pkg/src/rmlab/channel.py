"""Binary-input memoryless channels and log-likelihood ratios.

Randomness contract: every transmit call builds a fresh counter-based
Philox generator from the 128-bit key given as `seed`, so output is a pure
function of (codeword, channel, seed).  Substreams for independent trials
are derived by the harness as disjoint key values.  The uniform stream is
numpy's documented Philox4x64-10 double generation (top 53 bits / 2^53);
Gaussians come from the inverse normal CDF applied to that stream, which
keeps the byte stream identical across platforms.

LLR sign convention: positive means "0 more likely".  All LLRs are
saturated to +/- LLR_SATURATION = 40, and tests must not depend on
distinctions beyond that magnitude.

BEC outputs use the symbol ERASURE (= 2) inside uint8 words.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

LLR_SATURATION = 40.0
ERASURE = 2

_KINDS = ("bsc", "bec", "awgn")


@dataclass(frozen=True)
class ChannelSpec:
    """Channel family plus its single parameter.

    bsc: crossover probability, bec: erasure probability, awgn: noise
    standard deviation sigma for unit-energy BPSK (0 -> +1, 1 -> -1).
    """

    kind: str
    param: float

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown channel kind {self.kind!r}")
        p = self.param
        if self.kind in ("bsc", "bec"):
            if not (0.0 <= p <= 1.0):
                raise ValueError(f"{self.kind} parameter must be in [0, 1]")
        elif p <= 0.0:
            raise ValueError("awgn sigma must be positive")

    @classmethod
    def parse(cls, text: str) -> "ChannelSpec":
        try:
            kind, _, param = text.partition(":")
            return cls(kind.strip(), float(param))
        except ValueError as e:
            raise ValueError(f"bad channel spec {text!r}: {e}") from None

    def __str__(self) -> str:
        return f"{self.kind}:{self.param:g}"


@dataclass(frozen=True)
class ChannelOutput:
    kind: str
    data: np.ndarray


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed & ((1 << 128) - 1)))


def transmit(codeword, spec: ChannelSpec, seed: int) -> ChannelOutput:
    """Send a binary word through the channel; pure in (codeword, spec, seed)."""
    c = np.asarray(codeword, dtype=np.uint8)
    if c.ndim != 1 or not np.isin(c, (0, 1)).all():
        raise ValueError("codeword must be a 1-d 0/1 array")
    u = _rng(seed).random(c.size)
    if spec.kind == "bsc":
        return ChannelOutput("bsc", (c ^ (u < spec.param)).astype(np.uint8))
    if spec.kind == "bec":
        out = c.copy()
        out[u < spec.param] = ERASURE
        return ChannelOutput("bec", out)
    x = 1.0 - 2.0 * c.astype(np.float64)
    g = ndtri(np.clip(u, 1e-300, None))
    return ChannelOutput("awgn", x + spec.param * g)


def llr(out: ChannelOutput, spec: ChannelSpec) -> np.ndarray:
    """Per-coordinate LLR ln(P[y|0]/P[y|1]), saturated to +/- 40."""
    if out.kind != spec.kind:
        raise ValueError(f"output kind {out.kind!r} does not match spec {spec.kind!r}")
    S = LLR_SATURATION
    if spec.kind == "bsc":
        p = spec.param
        if p <= 0.0:
            mag = S
        elif p >= 1.0:
            mag = -S
        else:
            mag = min(max(math.log((1.0 - p) / p), -S), S)
        return np.where(out.data == 0, mag, -mag).astype(np.float64)
    if spec.kind == "bec":
        vals = np.zeros(out.data.size, dtype=np.float64)
        vals[out.data == 0] = S
        vals[out.data == 1] = -S
        return vals
    return np.clip(2.0 * out.data / (spec.param ** 2), -S, S)


def llr_of_sum(l1, l2):
    """LLR of the XOR of two bits with independent LLRs l1 and l2.

    Numerically stable evaluation of
    ln(e^{l1+l2} + 1) - ln(e^{l1} + e^{l2}); the magnitude never exceeds
    min(|l1|, |l2|).  Works elementwise on arrays.
    """
    a = np.asarray(l1, dtype=np.float64)
    b = np.asarray(l2, dtype=np.float64)
    s = a + b
    out = (
        np.maximum(s, 0.0)
        - np.maximum(a, b)
        + np.log1p(np.exp(-np.abs(s)))
        - np.log1p(np.exp(-np.abs(a - b)))
    )
    if np.ndim(l1) == 0 and np.ndim(l2) == 0:
        return float(out)
    return out


def hard_decision(L) -> np.ndarray:
    """Sign-quantize LLRs; exact zero maps to bit 0."""
    return (np.asarray(L, dtype=np.float64) < 0).astype(np.uint8)
