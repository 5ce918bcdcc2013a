"""Monte-Carlo error-rate harness.

Every trial draws its message and channel noise from Philox substreams
keyed by (seed, sweep point, trial, purpose), so results are a pure
function of the config and identical under any execution order or worker
count.  Wall-clock seconds are recorded only when timing is enabled;
the default keeps the CSV byte-reproducible.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.special import ndtri

from . import channel, rmcode
from .channel import ChannelSpec
from .decoders import (
    Undecodable,
    bw_decode,
    chase_list,
    dumer_decode,
    dumer_list_decode,
    fht_decode_order1,
    ml_decode,
    reed_decode,
    rpa_decode_bsc,
    rpa_decode_llr,
    sakkour_decode_order2,
)

_WILSON_Z = float(ndtri(0.975))

CSV_HEADER = (
    "code_m,code_r,decoder,channel,param,trials,bit_err,blk_err,"
    "ber,fer,fer_lo,fer_hi,seconds"
)

DECODER_IDS = (
    "reed",
    "fht",
    "sakkour",
    "dumer",
    "dumer-list:<mu>",
    "rpa",
    "rpa-chase:<t>",
    "bw",
    "ml",
)


class ConfigError(Exception):
    """Invalid simulation configuration."""


@dataclass(frozen=True)
class SimConfig:
    m: int
    r: int
    decoder: str
    channels: tuple
    trials: int
    seed: int = 0
    max_errors_to_log: int = 0
    hard: bool = False
    timing: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not self.channels:
            raise ConfigError("empty channel sweep")

    @property
    def params(self) -> rmcode.CodeParams:
        return rmcode.CodeParams(self.m, self.r)


@dataclass(frozen=True)
class SimPoint:
    spec: ChannelSpec
    trials: int
    bit_err: int
    blk_err: int
    ber: float
    fer: float
    fer_lo: float
    fer_hi: float
    seconds: float
    error_trials: tuple = ()


_CONFIG_KEYS = {
    "m", "r", "decoder", "trials", "seed", "channels", "channel",
    "params", "max_errors_to_log", "hard", "timing",
}


def config_from_dict(data: dict) -> SimConfig:
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    try:
        m, r = int(data["m"]), int(data["r"])
        decoder = str(data["decoder"])
        trials = int(data["trials"])
    except KeyError as exc:
        raise ConfigError(f"missing config key: {exc.args[0]}") from None
    if "channels" in data:
        channels = tuple(ChannelSpec.parse(s) for s in data["channels"])
    elif "channel" in data and "params" in data:
        kind = str(data["channel"])
        channels = tuple(ChannelSpec(kind, float(p)) for p in data["params"])
    else:
        raise ConfigError("need 'channels' or 'channel' + 'params'")
    try:
        cfg = SimConfig(
            m=m,
            r=r,
            decoder=decoder,
            channels=channels,
            trials=trials,
            seed=int(data.get("seed", 0)),
            max_errors_to_log=int(data.get("max_errors_to_log", 0)),
            hard=bool(data.get("hard", False)),
            timing=bool(data.get("timing", False)),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    resolve_decoder(cfg.decoder, cfg.params, channels[0].kind, cfg.hard)
    return cfg


def _combo_help() -> str:
    return (
        "valid decoders: reed (hard, any r), fht (soft, r=1), "
        "sakkour (hard, r=2), dumer (soft), dumer-list:<mu> (soft), "
        "rpa (r>=1; hard on bsc, soft otherwise), rpa-chase:<t> (soft, r>=1), "
        "bw (hard, m-r even >= 2), ml (soft, k<=24); hard decoders on "
        "bec/awgn need hard=true (sign quantization)"
    )


def resolve_decoder(decoder_id: str, params: rmcode.CodeParams, channel_kind: str, hard: bool):
    """Map a decoder id to (input kind, word -> codeword callable).

    Raises ConfigError on unusable combinations; TooLarge guards ml.
    """
    name, _, arg = decoder_id.partition(":")
    m, r = params.m, params.r

    def bad(why):
        return ConfigError(f"{decoder_id!r} on {channel_kind}: {why}; {_combo_help()}")

    if name in ("reed", "sakkour", "bw") or (name == "rpa" and (channel_kind == "bsc" or hard)):
        if channel_kind != "bsc" and not hard:
            raise bad("hard-input decoder needs hard=true off the BSC")
        kind = "hard"
    elif name in ("fht", "dumer", "dumer-list", "rpa", "rpa-chase", "ml"):
        kind = "soft"
    else:
        raise bad("unknown decoder id")
    if arg and name not in ("dumer-list", "rpa-chase"):
        raise bad("this decoder takes no :argument")

    if name == "reed":
        return kind, lambda y: reed_decode(params, y).codeword
    if name == "fht":
        if r != 1:
            raise bad("fht decodes first-order codes only")
        return kind, lambda L: fht_decode_order1(m, L).codeword
    if name == "sakkour":
        if r != 2 or m < 2:
            raise bad("sakkour decodes second-order codes only")
        return kind, lambda y: sakkour_decode_order2(m, y).codeword
    if name == "dumer":
        return kind, lambda L: dumer_decode(params, L).codeword
    if name == "dumer-list":
        mu = _int_arg(arg, decoder_id)
        if mu < 1:
            raise bad("list size must be >= 1")
        return kind, lambda L: dumer_list_decode(params, L, mu).codeword
    if name == "rpa":
        if r < 1:
            raise bad("rpa needs r >= 1")
        if kind == "hard":
            return kind, lambda y: rpa_decode_bsc(params, y)
        return kind, lambda L: rpa_decode_llr(params, L)
    if name == "rpa-chase":
        if r < 1:
            raise bad("rpa needs r >= 1")
        t = _int_arg(arg, decoder_id)
        if t < 0:
            raise bad("t must be >= 0")
        inner = lambda L: rpa_decode_llr(params, L)
        return kind, lambda L: chase_list(inner, L, t, params).codeword
    if name == "bw":
        gap = m - r - 2
        if gap < 0 or gap % 2:
            raise bad("bw needs m - r even and >= 2")
        r_bw = gap // 2
        return kind, lambda y: bw_decode(m, r_bw, y).codeword
    if name == "ml":
        if params.k > 24:
            raise rmcode.TooLarge(f"ml over 2^{params.k} codewords")
        return kind, lambda L: ml_decode(params, L).codeword
    raise bad("unknown decoder id")  # pragma: no cover


def _int_arg(arg: str, decoder_id: str) -> int:
    if not arg:
        raise ConfigError(f"{decoder_id!r} needs an integer :argument")
    try:
        return int(arg)
    except ValueError:
        raise ConfigError(f"bad :argument in {decoder_id!r}") from None


_MASK64 = (1 << 64) - 1
_MASK32 = (1 << 32) - 1


def _stream_key(seed: int, point: int, trial: int, tag: int) -> int:
    """128-bit Philox key: seed | point | trial | purpose tag."""
    return (
        ((seed & _MASK64) << 64)
        | ((point & 0xFFFF) << 48)
        | ((trial & _MASK32) << 16)
        | (tag & 0xFFFF)
    )


def _run_trials(config: SimConfig, point: int, lo: int, hi: int):
    """Trials [lo, hi) of one sweep point; returns integer aggregates."""
    params = config.params
    spec = config.channels[point]
    kind, fn = resolve_decoder(config.decoder, params, spec.kind, config.hard)
    order = rmcode.monomials(params)
    bit_err = 0
    blk_err = 0
    logged = []
    for trial in range(lo, hi):
        rng = channel._rng(_stream_key(config.seed, point, trial, 0))
        bits = rng.integers(0, 2, size=params.k)
        msg = rmcode.Message(params, {order[i]: int(bits[i]) for i in range(params.k)})
        c = rmcode.encode(msg)
        out = channel.transmit(c, spec, _stream_key(config.seed, point, trial, 1))
        if kind == "hard":
            word = out.data if spec.kind == "bsc" else channel.hard_decision(channel.llr(out, spec))
        else:
            word = channel.llr(out, spec)
        try:
            decoded = fn(word)
        except Undecodable:
            decoded = word if kind == "hard" else channel.hard_decision(word)
        errs = int(np.count_nonzero(decoded != c))
        if errs:
            bit_err += errs
            blk_err += 1
            if len(logged) < config.max_errors_to_log:
                logged.append(trial)
    return bit_err, blk_err, logged


def wilson_interval(successes: int, trials: int, z: float = _WILSON_Z):
    """95% Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = phat + z2 / (2.0 * trials)
    half = z * np.sqrt(phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials))
    lo = 0.0 if successes == 0 else max(0.0, (center - half) / denom)
    hi = 1.0 if successes == trials else min(1.0, (center + half) / denom)
    return lo, hi


def run_simulation(config: SimConfig, workers: int = 1):
    """All sweep points; byte-identical output for any worker count."""
    points = []
    n = config.params.n
    for idx in range(len(config.channels)):
        start = time.perf_counter()
        if workers <= 1:
            parts = [_run_trials(config, idx, 0, config.trials)]
        else:
            bounds = np.linspace(0, config.trials, 4 * workers + 1, dtype=int)
            jobs = [
                (config, idx, int(lo), int(hi))
                for lo, hi in zip(bounds[:-1], bounds[1:])
                if lo < hi
            ]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_run_trials_star, jobs))
        bit_err = sum(p[0] for p in parts)
        blk_err = sum(p[1] for p in parts)
        logged = sorted(t for p in parts for t in p[2])[: config.max_errors_to_log]
        seconds = time.perf_counter() - start if config.timing else 0.0
        lo, hi = wilson_interval(blk_err, config.trials)
        points.append(
            SimPoint(
                spec=config.channels[idx],
                trials=config.trials,
                bit_err=bit_err,
                blk_err=blk_err,
                ber=bit_err / (config.trials * n),
                fer=blk_err / config.trials,
                fer_lo=lo,
                fer_hi=hi,
                seconds=seconds,
                error_trials=tuple(logged),
            )
        )
    return points


def _run_trials_star(args):
    return _run_trials(*args)


def csv_report(config: SimConfig, points) -> str:
    lines = [CSV_HEADER]
    for pt in points:
        lines.append(
            f"{config.m},{config.r},{config.decoder},{pt.spec.kind},"
            f"{pt.spec.param:g},{pt.trials},{pt.bit_err},{pt.blk_err},"
            f"{pt.ber:.6g},{pt.fer:.6g},{pt.fer_lo:.6g},{pt.fer_hi:.6g},"
            f"{pt.seconds:.3f}"
        )
    return "\n".join(lines) + "\n"
