from itertools import combinations

import numpy as np

from rmlab import rmcode
from rmlab.decoders.oracle import ml_decode
from rmlab.decoders.reed import reed_decode
from rmlab.decoders.sakkour import sakkour_decode_order2
from rmlab.decoders.types import hard_input_llr


def random_message(params, rng):
    return rmcode.Message(params, {a: 1 for a in rmcode.monomials(params) if rng.integers(2)})


def flip(word, coords):
    out = word.copy()
    for j in coords:
        out[j] ^= 1
    return out


def test_reed_clean_codewords():
    rng = np.random.default_rng(21)
    for m, r in [(3, 1), (4, 2), (5, 2), (5, 5), (4, 0)]:
        params = rmcode.CodeParams(m, r)
        for _ in range(10):
            msg = random_message(params, rng)
            res = reed_decode(params, rmcode.encode(msg))
            assert res.message.coeffs == msg.coeffs


def test_reed_single_flip_rm31():
    params = rmcode.CodeParams(3, 1)
    c = rmcode.eval_monomial(0b001, 3)  # 11110000
    assert rmcode.word_to_hex(c) == "F0"
    for j in range(8):
        res = reed_decode(params, flip(c, [j]))
        assert res.message.coeffs == {0b001: 1}
        assert np.array_equal(res.codeword, c)


def test_reed_half_distance_guarantee():
    # exhaustive below half distance for the small pairs, sampled for the rest
    rng = np.random.default_rng(22)
    for m, r, budget in [(3, 1, None), (4, 2, None), (4, 1, 300), (5, 2, 300)]:
        params = rmcode.CodeParams(m, r)
        radius = (1 << (m - r - 1)) - 1
        patterns = [()]
        for w in range(1, radius + 1):
            patterns.extend(combinations(range(params.n), w))
        if budget is not None and len(patterns) > budget:
            picks = rng.choice(len(patterns), size=budget, replace=False)
            patterns = [patterns[i] for i in picks]
        for _ in range(5):
            c = rmcode.encode(random_message(params, rng))
            for pat in patterns:
                res = reed_decode(params, flip(c, pat))
                assert np.array_equal(res.codeword, c), (m, r, pat)


def test_reed_majority_tie_decodes_to_one():
    # weight-1 input to RM(2,1): every degree-1 coset vote splits 1-1,
    # the tie rule turns all coefficients on
    params = rmcode.CodeParams(2, 1)
    res = reed_decode(params, np.array([1, 0, 0, 0], dtype=np.uint8))
    assert res.message.coeffs == {0b01: 1, 0b10: 1, 0: 1}
    assert res.codeword.tolist() == [1, 0, 0, 1]


def test_reed_constant_layer_majority():
    # repetition decoding, exact tie goes to 1
    params = rmcode.CodeParams(2, 0)
    assert reed_decode(params, np.array([1, 1, 0, 0], dtype=np.uint8)).codeword.tolist() == [1] * 4
    assert reed_decode(params, np.array([1, 0, 0, 0], dtype=np.uint8)).codeword.tolist() == [0] * 4
    assert reed_decode(params, np.array([1, 1, 1, 0], dtype=np.uint8)).codeword.tolist() == [1] * 4


def test_reed_metric_counts_agreements():
    rng = np.random.default_rng(23)
    params = rmcode.CodeParams(4, 2)
    for _ in range(20):
        y = rng.integers(0, 2, size=16).astype(np.uint8)
        res = reed_decode(params, y)
        # scored against +/-1 hard-input LLRs: (agreements - disagreements) / 2
        assert res.metric == 8 - int((res.codeword != y).sum())
        assert rmcode.is_codeword(params, res.codeword)


def test_sakkour_clean_codewords():
    rng = np.random.default_rng(24)
    for m in (3, 4, 5, 6):
        params = rmcode.CodeParams(m, 2)
        for _ in range(10):
            msg = random_message(params, rng)
            res = sakkour_decode_order2(m, rmcode.encode(msg))
            assert res.message.coeffs == msg.coeffs


def test_sakkour_single_flip_exhaustive():
    # one error leaves every derivative within half distance of RM(m-?,1),
    # so recovery is deterministic
    rng = np.random.default_rng(25)
    params = rmcode.CodeParams(5, 2)
    for _ in range(3):
        c = rmcode.encode(random_message(params, rng))
        for j in range(32):
            res = sakkour_decode_order2(5, flip(c, [j]))
            assert np.array_equal(res.codeword, c)


def test_sakkour_three_errors_rm52():
    rng = np.random.default_rng(26)
    params = rmcode.CodeParams(5, 2)
    exact = 0
    for _ in range(200):
        c = rmcode.encode(random_message(params, rng))
        pat = rng.choice(32, size=3, replace=False)
        if np.array_equal(sakkour_decode_order2(5, flip(c, pat)).codeword, c):
            exact += 1
    assert exact >= 198


def test_sakkour_agrees_with_ml_spot_check():
    rng = np.random.default_rng(27)
    params = rmcode.CodeParams(4, 2)
    hits = 0
    for _ in range(50):
        c = rmcode.encode(random_message(params, rng))
        y = flip(c, rng.choice(16, size=1, replace=False))
        res = sakkour_decode_order2(4, y)
        ml = ml_decode(params, hard_input_llr(y))
        assert rmcode.is_codeword(params, res.codeword)
        if np.array_equal(res.codeword, ml.codeword):
            hits += 1
    assert hits >= 45
