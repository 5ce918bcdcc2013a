"""Second-order decoding via decoded directional derivatives.

For every direction b the derivative word (y_{z+b} + y_z over z) is a
noisy first-order codeword whose linear part is bU, U the symmetric matrix
of degree-2 coefficients.  Each derivative is FHT-decoded, the estimates
are cleaned by a coordinatewise majority over the difference identities
D_{b+b'} + D_{b'}, and per-column FHT decoding recovers U.  Subtracting
the degree-2 evaluation leaves a first-order word for a final FHT pass.

Under the coordinate convention translating points by b is plain index
XOR, so derivative words never need explicit reindexing.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from .. import rmcode
from .fht import fht
from .types import DecodeResult, hard_input_llr, soft_metric


def _linear_coefficients(rows: np.ndarray) -> np.ndarray:
    """FHT-decode each +/-1 row to the best coefficient vector.

    Returned ints are in point encoding (bit m-i = u_i); ties pick the
    smallest, constant terms are discarded.
    """
    spec = fht(rows[:, ::-1])
    return np.argmax(np.abs(spec), axis=1).astype(np.int64)


def sakkour_decode_order2(m: int, y) -> DecodeResult:
    if m < 2:
        raise ValueError("order-2 decoding needs m >= 2")
    params = rmcode.CodeParams(m, 2)
    n = params.n
    y = np.asarray(y, dtype=np.uint8)
    if y.shape != (n,):
        raise ValueError(f"expected a length-{n} word")
    J = np.arange(n)

    # derivative words, one per direction; b = 0 decodes to zero harmlessly
    deriv = np.empty((n, n), dtype=np.float64)
    for b in range(n):
        deriv[b] = 1.0 - 2.0 * (y ^ y[J ^ b])
    D = _linear_coefficients(deriv)

    # coordinatewise majority of D_{b+b'} + D_{b'} over all b'; ties pick
    # the lexicographically smallest vector (= smallest packed int)
    Dstar = np.empty(n, dtype=np.int64)
    for b in range(n):
        votes = Counter(int(v) for v in D[J ^ b] ^ D)
        top = max(votes.values())
        Dstar[b] = min(u for u, cnt in votes.items() if cnt == top)

    # column i of U from the word of i-th coordinates of D*_b over b;
    # writes to u_{ij} from a later column win
    col_words = np.empty((m, n), dtype=np.float64)
    for i in range(1, m + 1):
        col_words[i - 1] = 1.0 - 2.0 * ((Dstar[J ^ (n - 1)] >> (m - i)) & 1)
    col_u = _linear_coefficients(col_words)
    quad: dict[int, int] = {}
    for i in range(1, m + 1):
        u = int(col_u[i - 1])
        for j in range(1, m + 1):
            if j != i:
                quad[(1 << (i - 1)) | (1 << (j - 1))] = (u >> (m - j)) & 1

    deg2 = rmcode.Message(params, {a: v for a, v in quad.items() if v})
    resid = y ^ rmcode.encode(deg2)
    lin_spec = fht((1.0 - 2.0 * resid)[::-1])
    u = int(np.argmax(np.abs(lin_spec)))
    u0 = 1 if lin_spec[u] < 0 else 0
    coeffs = dict(deg2.coeffs)
    for i in range(1, m + 1):
        if (u >> (m - i)) & 1:
            coeffs[1 << (i - 1)] = 1
    if u0:
        coeffs[0] = 1
    msg = rmcode.Message(params, coeffs)
    c = rmcode.encode(msg)
    return DecodeResult(params, c, msg, soft_metric(c, hard_input_llr(y)))
