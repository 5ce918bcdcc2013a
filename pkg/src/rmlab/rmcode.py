"""Reed-Muller code construction and serialization.

Monomials are subsets A of {1..m}, encoded as bitmasks with bit i-1 for
variable x_i.  Codewords are evaluations of multilinear polynomials over
F_2^m.

Coordinate convention: coordinate j of a length-n word (n = 2^m) holds the
value at the point z whose bits z_1 ... z_m are the binary digits of
n-1-j, z_1 most significant.  Points are therefore enumerated from
(1,...,1) down to (0,...,0).  Equivalently the point of coordinate j is
the integer p = j XOR (n-1), with z_i = bit (m-i) of p.  All direction /
point arguments below use that integer encoding.  A handy consequence:
translating a point by a direction b is coordinate index XOR b.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import gf2


class DegenerateDual(Exception):
    """The dual of RM(m, m) has no generator (dimension 0)."""


class TooShort(Exception):
    """Word too short to split."""


class InvalidDirection(Exception):
    """Direction must be a nonzero point of F_2^m."""


class TooLarge(Exception):
    """Requested exhaustive computation exceeds the resource guard."""


@dataclass(frozen=True)
class CodeParams:
    """Parameters of RM(m, r)."""

    m: int
    r: int

    def __post_init__(self):
        if not (isinstance(self.m, int) and isinstance(self.r, int)):
            raise ValueError("m and r must be ints")
        if self.m < 1 or not (0 <= self.r <= self.m):
            raise ValueError(f"need m >= 1 and 0 <= r <= m, got ({self.m}, {self.r})")

    @property
    def n(self) -> int:
        return 1 << self.m

    @property
    def k(self) -> int:
        return sum(math.comb(self.m, i) for i in range(self.r + 1))

    @property
    def d(self) -> int:
        return 1 << (self.m - self.r)


def dual_params(params: CodeParams) -> CodeParams:
    if params.r == params.m:
        raise DegenerateDual("RM(m, m) has a zero-dimensional dual")
    return CodeParams(params.m, params.m - params.r - 1)


def _subset_key(mask: int):
    elems = tuple(i + 1 for i in range(mask.bit_length()) if (mask >> i) & 1)
    return (-len(elems), elems)


@lru_cache(maxsize=None)
def monomial_order(m: int) -> tuple[int, ...]:
    """All 2^m subset masks: larger sets first, lexicographic within a size."""
    return tuple(sorted(range(1 << m), key=_subset_key))


def rm_ordering(m: int) -> tuple[int, ...]:
    """Alias for monomial_order; the canonical successive-decoding order."""
    return monomial_order(m)


@lru_cache(maxsize=None)
def _restricted_order(m: int, r: int) -> tuple[int, ...]:
    return tuple(a for a in monomial_order(m) if a.bit_count() <= r)


def monomials(params: CodeParams) -> tuple[int, ...]:
    """Row order of the generator matrix: |A| <= r slice of monomial_order."""
    return _restricted_order(params.m, params.r)


def point_mask(subset: int, m: int) -> int:
    """Map a variable-subset mask (bit i-1 = x_i) to a point mask (bit m-i = z_i)."""
    out = 0
    for i in range(m):
        if (subset >> i) & 1:
            out |= 1 << (m - 1 - i)
    return out


@lru_cache(maxsize=None)
def eval_monomial_packed(subset: int, m: int) -> int:
    if subset >> m:
        raise ValueError("subset mask out of range")
    n = 1 << m
    pmask = point_mask(subset, m)
    word = 0
    for p in range(n):
        if p & pmask == pmask:
            word |= 1 << (n - 1 - p)
    return word


def eval_monomial(subset: int, m: int) -> np.ndarray:
    """Evaluation vector of the monomial x_A, A given as a bitmask."""
    return gf2.unpack_bits(eval_monomial_packed(subset, m), 1 << m)


@lru_cache(maxsize=None)
def generator_rows(params: CodeParams) -> tuple[int, ...]:
    return tuple(eval_monomial_packed(a, params.m) for a in monomials(params))


def generator_matrix(params: CodeParams) -> np.ndarray:
    """k x n generator of RM(m, r), rows in monomial order."""
    return np.stack([eval_monomial(a, params.m) for a in monomials(params)])


@lru_cache(maxsize=None)
def rm_full_rows(m: int) -> tuple[int, ...]:
    return tuple(eval_monomial_packed(a, m) for a in monomial_order(m))


def rm_full_matrix(m: int) -> np.ndarray:
    """The invertible n x n matrix whose rows are all monomial evaluations."""
    return np.stack([eval_monomial(a, m) for a in monomial_order(m)])


@dataclass
class Message:
    """Coefficients u_A of a degree <= r polynomial; missing keys mean 0."""

    params: CodeParams
    coeffs: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for a, v in self.coeffs.items():
            if not isinstance(a, int) or a < 0 or a >> self.params.m:
                raise ValueError(f"bad subset mask {a!r}")
            if a.bit_count() > self.params.r:
                raise ValueError(f"monomial degree {a.bit_count()} exceeds r={self.params.r}")
            if v not in (0, 1):
                raise ValueError("coefficients must be 0 or 1")
            if v:
                clean[a] = 1
        self.coeffs = clean


def encode_packed(msg: Message) -> int:
    word = 0
    for a in msg.coeffs:
        word ^= eval_monomial_packed(a, msg.params.m)
    return word


def encode(msg: Message) -> np.ndarray:
    return gf2.unpack_bits(encode_packed(msg), msg.params.n)


def as_packed(y, n: int) -> int:
    if isinstance(y, (int, np.integer)):
        return int(y)
    arr = np.asarray(y, dtype=np.uint8)
    if arr.shape != (n,):
        raise ValueError(f"expected a length-{n} word")
    return gf2.pack_bits(arr)


def is_codeword(params: CodeParams, y) -> bool:
    """Parity check against the dual generator; RM(m, m) accepts every word."""
    w = as_packed(y, params.n)
    if w >> params.n:
        raise ValueError("word longer than n bits")
    if params.r == params.m:
        return True
    return gf2.mat_vec(generator_rows(dual_params(params)), w) == 0


@lru_cache(maxsize=None)
def _transposed_generator(params: CodeParams) -> tuple[int, ...]:
    return tuple(gf2.transpose(generator_rows(params), params.n))


def message_of_codeword(params: CodeParams, y) -> Message:
    """Recover the unique coefficient vector of a codeword.

    Raises gf2.InconsistentSystem when y is not in the code.
    """
    w = as_packed(y, params.n)
    sol = gf2.solve_affine(_transposed_generator(params), params.k, w)
    order = monomials(params)
    coeffs = {order[i]: 1 for i in range(params.k) if (sol.particular >> i) & 1}
    return Message(params, coeffs)


def plotkin_split(c: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split c into (u, v): u the z_m = 0 half, v = u XOR (z_m = 1 half).

    Under the coordinate convention the z_m = 0 points sit at odd
    coordinates, so the halves interleave rather than concatenate.
    """
    c = np.asarray(c, dtype=np.uint8)
    if c.size < 2 or c.size & (c.size - 1):
        raise TooShort("need length 2^m with m >= 1")
    u = c[1::2].copy()
    v = u ^ c[0::2]
    return u, v


def plotkin_join(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=np.uint8)
    v = np.asarray(v, dtype=np.uint8)
    if u.shape != v.shape:
        raise ValueError("halves must have equal length")
    out = np.empty(2 * u.size, dtype=np.uint8)
    out[1::2] = u
    out[0::2] = u ^ v
    return out


def project_coset(y: np.ndarray, b: int) -> np.ndarray:
    """Sum y over the cosets of {0, b}, one output coordinate per coset.

    b is a nonzero point (integer encoding above).  The coset containing
    points {p, p^b} is indexed by its member with the smaller coordinate
    index; outputs are compacted in increasing order of that index.
    """
    y = np.asarray(y)
    n = y.size
    if n < 2 or n & (n - 1):
        raise ValueError("word length must be 2^m")
    if not (0 < b < n):
        raise InvalidDirection(f"direction {b!r} not a nonzero point of F_2^m")
    h = b.bit_length() - 1
    jp = np.arange(n // 2)
    rep = ((jp >> h) << (h + 1)) | (jp & ((1 << h) - 1))
    return (y[rep] ^ y[rep ^ b]).astype(np.uint8)


def coset_index_map(m: int, b: int) -> np.ndarray:
    """For each coordinate j, the projected coordinate of its {0,b}-coset."""
    n = 1 << m
    if not (0 < b < n):
        raise InvalidDirection(f"direction {b!r} not a nonzero point of F_2^m")
    h = b.bit_length() - 1
    j = np.arange(n)
    rep = np.where((j >> h) & 1, j ^ b, j)
    return ((rep >> (h + 1)) << h) | (rep & ((1 << h) - 1))


def _submasks(mask: int) -> list[int]:
    out = [0]
    bits = [1 << i for i in range(mask.bit_length()) if (mask >> i) & 1]
    for bit in bits:
        out += [s | bit for s in out]
    return sorted(out)


def cosets_of_subspace(subset: int, m: int) -> list[list[int]]:
    """Partition of F_2^m into cosets of V_A = {z : z_i = 0 for i not in A}.

    subset is a variable mask; returned entries are point integers, cosets
    ordered by representative, members ascending.
    """
    pmask = point_mask(subset, m)
    free = ((1 << m) - 1) ^ pmask
    members = _submasks(pmask)
    return [[rep | v for v in members] for rep in _submasks(free)]


# --- serialization ---------------------------------------------------------


def word_to_hex(y) -> str:
    """Hex string; the most significant digit covers coordinates 0..3."""
    arr = np.asarray(y, dtype=np.uint8)
    bits = "".join("1" if b else "0" for b in arr)
    pad = (-len(bits)) % 4
    bits += "0" * pad
    return format(int(bits, 2), f"0{len(bits) // 4}X")


def word_from_hex(s: str, n: int) -> np.ndarray:
    s = s.strip()
    if not re.fullmatch(r"[0-9a-fA-F]+", s or ""):
        raise ValueError(f"not a hex word: {s!r}")
    bits = format(int(s, 16), f"0{4 * len(s)}b")
    if len(bits) < n or int(bits[n:] or "0", 2):
        raise ValueError(f"hex word {s!r} does not fit length {n}")
    return np.array([int(b) for b in bits[:n]], dtype=np.uint8)


def monomial_name(subset: int) -> str:
    if subset == 0:
        return "1"
    return "".join(f"x{i + 1}" for i in range(subset.bit_length()) if (subset >> i) & 1)


def parse_monomial_key(key: str, m: int) -> int:
    """Accept either a decimal subset mask or a symbolic name like x1x3."""
    key = key.strip()
    if re.fullmatch(r"\d+", key):
        mask = int(key)  # canonical bitmask form; "0" is the constant term
    elif re.fullmatch(r"(x\d+)+", key):
        mask = 0
        for i in re.findall(r"x(\d+)", key):
            idx = int(i)
            if not (1 <= idx <= m):
                raise ValueError(f"variable x{idx} out of range for m={m}")
            mask |= 1 << (idx - 1)
    else:
        raise ValueError(f"bad monomial key {key!r}")
    if mask >> m:
        raise ValueError(f"subset mask {mask} out of range for m={m}")
    return mask


def message_to_json(msg: Message) -> str:
    items = sorted(msg.coeffs)
    return json.dumps({str(a): 1 for a in items})


def message_from_json(params: CodeParams, text) -> Message:
    data = json.loads(text) if isinstance(text, str) else text
    if not isinstance(data, dict):
        raise ValueError("message JSON must be an object")
    coeffs: dict[int, int] = {}
    for key, val in data.items():
        mask = parse_monomial_key(str(key), params.m)
        if val not in (0, 1):
            raise ValueError(f"coefficient for {key!r} must be 0 or 1")
        if val:
            coeffs[mask] = 1
    return Message(params, coeffs)
