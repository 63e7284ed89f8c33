"""Seeded Monte-Carlo campaigns and parameter sweeps.

Every trial derives its randomness from (master_seed, trial_index) alone:
trial t draws its message on counter stream 2t and its channel noise on
stream 2t+1.  Campaigns are therefore reproducible bit-for-bit regardless
of execution order or thread count; the only non-deterministic output is
wall-clock timing, which the CSV writers can suppress.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np
from scipy.stats import binomtest

from .channel import ChannelSpec, philox_stream, transmit
from .fields import Field
from .kv import reconstruct
from .multiplicity import PositionTally, build_multiplicity, classify_positions
from .rscode import RSCode
from .theory import (
    FiniteLengthCertificate,
    PsiEnvelope,
    capacity_limit,
    concentration_interval,
    finite_length_certificate,
    kv_validity_bound,
    psi_holds,
    rate_threshold_kv,
    rate_threshold_majority,
)

CAMPAIGN_SCHEMA = "campaign-v1"
SWEEP_SCHEMA = "sweep-v1"
CAMPAIGN_COLUMNS = (
    "decoder",
    "q",
    "n",
    "k",
    "K",
    "p",
    "mu",
    "trials",
    "successes",
    "failures",
    "miscorrections",
    "avg_list_size",
    "psi_rate",
    "wall_ms",
)

_DECODER_CHOICES = ("kv", "majority", "both")
_CONFIG_KEYS = ("q", "n", "k", "K", "p", "mu", "trials", "master_seed", "decoder", "eta")
_CONFIG_REQUIRED = ("q", "n", "k", "K", "p", "trials", "master_seed")


@dataclass(frozen=True)
class RunConfig:
    """One campaign: code, channel, decoder selection, and seeding."""

    q: int
    n: int
    k: int
    K: int
    p: float
    trials: int
    master_seed: int
    mu: int = 2
    decoder: str = "kv"
    eta: float = 0.1

    def validate(self) -> None:
        if not 1 <= self.k <= self.n <= self.q:
            raise ValueError("need 1 <= k <= n <= q")
        if self.K < 2 or self.q <= self.K:
            raise ValueError("need q > K >= 2")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.mu < 1:
            raise ValueError("mu must be a positive integer")
        if not 0.0 < self.eta < 1.0:
            raise ValueError("eta must lie strictly inside (0, 1)")
        if self.decoder not in _DECODER_CHOICES:
            raise ValueError(f"decoder must be one of {_DECODER_CHOICES}")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must fit in 64 bits")

    def decoders(self) -> tuple[str, ...]:
        return ("kv", "majority") if self.decoder == "both" else (self.decoder,)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        unknown = set(data) - set(_CONFIG_KEYS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        missing = [key for key in _CONFIG_REQUIRED if key not in data]
        if missing:
            raise ValueError(f"missing config keys: {missing}")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("config JSON must be an object")
        return cls.from_dict(data)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


@dataclass(frozen=True)
class TrialRecord:
    """Everything observed in one decode of one transmitted codeword.

    score/cost fields are soft-decoder quantities and are zero for the
    majority baseline; score_of_winner is zero when nothing decoded.
    """

    trial_index: int
    outcome: str  # "success" | "failure" | "miscorrection"
    list_size: int
    score_of_true: int
    score_of_winner: int
    cost: int
    tally: PositionTally
    psi_holds: bool
    wall_time: float


@dataclass(frozen=True)
class CampaignSummary:
    """Aggregate of one decoder's records; failure_rate counts failures and
    miscorrections together, with a Wilson 95% interval."""

    decoder: str
    q: int
    n: int
    k: int
    K: int
    p: float
    mu: int
    trials: int
    successes: int
    failures: int
    miscorrections: int
    avg_list_size: float
    psi_rate: float
    wall_ms: float
    failure_rate: float
    ci_low: float
    ci_high: float


@dataclass
class CampaignResult:
    config: RunConfig
    records: dict[str, list[TrialRecord]]
    summaries: list[CampaignSummary]
    envelope: PsiEnvelope
    certificate: FiniteLengthCertificate | None
    c_star_exceedances: int
    o_star_exceedances: int

    def summary_for(self, decoder: str) -> CampaignSummary:
        for s in self.summaries:
            if s.decoder == decoder:
                return s
        raise KeyError(decoder)


def _decode_one(decoder, code, readset, codeword, mu):
    start = time.perf_counter()
    if decoder == "kv":
        matrix = build_multiplicity(readset, mu)
        res = reconstruct(readset, code, mu)
        elapsed = time.perf_counter() - start
        if res.status == "ok":
            outcome = (
                "success"
                if np.array_equal(res.codeword, codeword)
                else "miscorrection"
            )
        else:
            outcome = "failure"
        return (
            outcome,
            res.list_size,
            int(matrix.score(codeword)),
            int(res.winner_score),
            int(res.cost),
            elapsed,
        )
    decoded = code.majority_decode(readset.reads)
    elapsed = time.perf_counter() - start
    if decoded is None:
        return ("failure", 0, 0, 0, 0, elapsed)
    outcome = "success" if np.array_equal(decoded[0], codeword) else "miscorrection"
    return (outcome, 1, 0, 0, 0, elapsed)


def run_campaign(cfg: RunConfig, jobs: int = 1) -> CampaignResult:
    """Run cfg.trials seeded trials and aggregate per decoder.

    On every trial where the concentration event holds, the soft decoder's
    realized cost and true-codeword score are asserted against the
    certificate's per-trial chain; violations abort the campaign.
    """
    cfg.validate()
    if jobs < 1:
        raise ValueError("jobs must be positive")
    fld = Field(cfg.q)
    code = RSCode(fld, cfg.n, cfg.k)
    ch = ChannelSpec(cfg.q, cfg.K, cfg.p)
    envelope = concentration_interval(cfg.n, cfg.q, cfg.K, cfg.p, cfg.eta)
    certificate = None
    if 0.0 < cfg.p < 1.0:
        certificate = finite_length_certificate(
            cfg.n, cfg.k, cfg.q, cfg.K, cfg.p, cfg.mu, cfg.eta
        )
    decoders = cfg.decoders()

    def one_trial(t: int) -> dict[str, TrialRecord]:
        msg_rng = philox_stream(cfg.master_seed, 2 * t)
        message = msg_rng.integers(0, cfg.q, size=cfg.k, dtype=np.int64)
        codeword = code.encode(message)
        readset = transmit(codeword, ch, cfg.master_seed, stream=2 * t + 1)
        _, tally = classify_positions(readset, codeword)
        psi = psi_holds(tally, envelope)
        out = {}
        for dec in decoders:
            outcome, lsize, s_true, s_win, cost, elapsed = _decode_one(
                dec, code, readset, codeword, cfg.mu
            )
            out[dec] = TrialRecord(
                trial_index=t,
                outcome=outcome,
                list_size=lsize,
                score_of_true=s_true,
                score_of_winner=s_win,
                cost=cost,
                tally=tally,
                psi_holds=psi,
                wall_time=elapsed,
            )
        return out

    if jobs == 1:
        per_trial = [one_trial(t) for t in range(cfg.trials)]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            per_trial = list(pool.map(one_trial, range(cfg.trials)))

    records = {dec: [pt[dec] for pt in per_trial] for dec in decoders}
    c_exceed = 0
    o_exceed = 0
    if certificate is not None and "kv" in records:
        violations = []
        for rec in records["kv"]:
            if not rec.psi_holds:
                continue
            if rec.cost > certificate.c_star_adjusted:
                violations.append(
                    f"trial {rec.trial_index}: cost {rec.cost} > "
                    f"adjusted cap {certificate.c_star_adjusted:.2f}"
                )
            if rec.score_of_true < certificate.s_star:
                violations.append(
                    f"trial {rec.trial_index}: true score {rec.score_of_true} < "
                    f"s_star {certificate.s_star:.2f}"
                )
            if rec.cost > certificate.c_star:
                c_exceed += 1
            if rec.outcome == "miscorrection" and rec.score_of_winner > certificate.o_star:
                o_exceed += 1
        if violations:
            raise AssertionError(
                "per-trial certificate chain violated:\n" + "\n".join(violations)
            )

    summaries = [_summarize(cfg, dec, records[dec]) for dec in decoders]
    return CampaignResult(
        config=cfg,
        records=records,
        summaries=summaries,
        envelope=envelope,
        certificate=certificate,
        c_star_exceedances=c_exceed,
        o_star_exceedances=o_exceed,
    )


def _summarize(cfg: RunConfig, decoder: str, recs: list[TrialRecord]) -> CampaignSummary:
    recs = sorted(recs, key=lambda r: r.trial_index)
    successes = sum(r.outcome == "success" for r in recs)
    failures = sum(r.outcome == "failure" for r in recs)
    miscorrections = sum(r.outcome == "miscorrection" for r in recs)
    bad = failures + miscorrections
    ci = binomtest(bad, cfg.trials).proportion_ci(
        confidence_level=0.95, method="wilson"
    )
    return CampaignSummary(
        decoder=decoder,
        q=cfg.q,
        n=cfg.n,
        k=cfg.k,
        K=cfg.K,
        p=cfg.p,
        mu=cfg.mu,
        trials=cfg.trials,
        successes=successes,
        failures=failures,
        miscorrections=miscorrections,
        avg_list_size=sum(r.list_size for r in recs) / len(recs),
        psi_rate=sum(r.psi_holds for r in recs) / len(recs),
        wall_ms=sum(r.wall_time for r in recs) * 1000.0,
        failure_rate=bad / cfg.trials,
        ci_low=ci.low,
        ci_high=ci.high,
    )


def _open_sink(out):
    if hasattr(out, "write"):
        return out, False
    return open(out, "w", newline=""), True


def write_campaign_csv(result: CampaignResult, out, include_timing: bool = True) -> None:
    """Emit one summary row per decoder.  With include_timing=False the
    wall_ms column is written as 0 so output is byte-deterministic."""
    sink, owned = _open_sink(out)
    try:
        sink.write(f"# schema: {CAMPAIGN_SCHEMA}\n")
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(CAMPAIGN_COLUMNS)
        for s in result.summaries:
            writer.writerow(
                [
                    s.decoder,
                    s.q,
                    s.n,
                    s.k,
                    s.K,
                    s.p,
                    s.mu,
                    s.trials,
                    s.successes,
                    s.failures,
                    s.miscorrections,
                    f"{s.avg_list_size:.6f}",
                    f"{s.psi_rate:.6f}",
                    int(round(s.wall_ms)) if include_timing else 0,
                ]
            )
    finally:
        if owned:
            sink.close()


def campaign_csv_text(result: CampaignResult, include_timing: bool = True) -> str:
    buf = io.StringIO()
    write_campaign_csv(result, buf, include_timing=include_timing)
    return buf.getvalue()


def sweep(
    k_reads_values,
    p_values,
    q: int | None = None,
    n: int | None = None,
    k: int | None = None,
    mu: int = 2,
    eta: float = 0.1,
    trials: int = 0,
    master_seed: int | None = None,
    decoder: str = "both",
    jobs: int = 1,
) -> list[dict]:
    """Evaluate the three rate thresholds over a (K, p) grid.

    With q, n, k supplied each row also carries the finite-length
    certificate flag; with trials > 0 (master_seed then mandatory) each row
    additionally carries empirical success rates from a seeded campaign.
    """
    k_reads_values = list(k_reads_values)
    p_values = list(p_values)
    if not k_reads_values or not p_values:
        raise ValueError("sweep grid must be non-empty")
    empirical = trials > 0
    with_cert = q is not None and n is not None and k is not None
    if empirical:
        if not with_cert:
            raise ValueError("empirical sweeps need q, n, and k")
        if master_seed is None:
            raise ValueError("empirical sweeps need a master seed")
    n_rows = len(k_reads_values) * len(p_values)
    row_seeds = [None] * n_rows
    if empirical:
        children = np.random.SeedSequence(master_seed).spawn(n_rows)
        row_seeds = [int(c.generate_state(1, np.uint64)[0]) for c in children]

    rows = []
    idx = 0
    for k_reads in k_reads_values:
        bound = kv_validity_bound(k_reads)
        for p in p_values:
            row = {
                "K": k_reads,
                "p": p,
                "capacity_limit": capacity_limit(k_reads, p),
                "threshold_kv": rate_threshold_kv(k_reads, p),
                "kv_in_validity": int(p <= bound),
                "threshold_majority": rate_threshold_majority(k_reads, p),
            }
            if with_cert:
                cert = finite_length_certificate(n, k, q, k_reads, p, mu, eta)
                row["certificate_satisfied"] = int(cert.satisfied)
            if empirical:
                cfg = RunConfig(
                    q=q,
                    n=n,
                    k=k,
                    K=k_reads,
                    p=p,
                    trials=trials,
                    master_seed=row_seeds[idx],
                    mu=mu,
                    decoder=decoder,
                    eta=eta,
                )
                result = run_campaign(cfg, jobs=jobs)
                for s in result.summaries:
                    row[f"{s.decoder}_success_rate"] = s.successes / s.trials
            rows.append(row)
            idx += 1
    return rows


def write_sweep_csv(rows: list[dict], out) -> None:
    if not rows:
        raise ValueError("no sweep rows to write")
    sink, owned = _open_sink(out)
    try:
        sink.write(f"# schema: {SWEEP_SCHEMA}\n")
        fields = list(rows[0].keys())
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            formatted = []
            for name in fields:
                value = row[name]
                if isinstance(value, float) and name != "p":
                    formatted.append(f"{value:.6f}")
                else:
                    formatted.append(value)
            writer.writerow(formatted)
    finally:
        if owned:
            sink.close()


def sweep_csv_text(rows: list[dict]) -> str:
    buf = io.StringIO()
    write_sweep_csv(rows, buf)
    return buf.getvalue()
