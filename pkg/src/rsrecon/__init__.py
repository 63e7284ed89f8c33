"""Reed-Solomon codeword reconstruction from multiple noisy reads.

Module map:
  fields        finite field arithmetic (prime and 2^m) on log/antilog tables
  rscode        RS evaluation codes, errors-and-erasures and majority decoding
  channel       the K-read symmetric substitution channel and seeded sampling
  multiplicity  read aggregation into multiplicity matrices; outcome taxonomy
  kv            bivariate interpolation, factorization, soft list decoding
  theory        capacity, pmfs, bounds, concentration, certificates, thresholds
  harness       seeded Monte-Carlo campaigns, sweeps, CSV emission
  plots         rate-region figures (imported lazily by the CLI)
  cli           command line front end
"""

from .channel import ChannelSpec, ReadSet, channel_law, philox_stream, transmit
from .fields import Field
from .harness import (
    CampaignResult,
    CampaignSummary,
    RunConfig,
    TrialRecord,
    run_campaign,
    sweep,
    write_campaign_csv,
    write_sweep_csv,
)
from .kv import (
    DecodeList,
    ReconstructionResult,
    dense_interpolate,
    hasse_constraints_ok,
    koetter_interpolate,
    kv_decode,
    reconstruct,
    roth_ruckenstein,
)
from .multiplicity import (
    ERASURE_A,
    ERASURE_B,
    ERROR,
    SUCCESS,
    MultiplicityMatrix,
    PositionTally,
    build_multiplicity,
    classify_positions,
)
from .rscode import RSCode
from .theory import (
    FiniteLengthCertificate,
    OutcomePmf,
    PmfBounds,
    PsiEnvelope,
    TheoryReport,
    asymptotic_forms,
    capacity,
    capacity_bits,
    capacity_limit,
    concentration_interval,
    concentration_radius,
    entropy_q,
    epsilon_q,
    finite_length_certificate,
    kv_validity_bound,
    outcome_pmf,
    pmf_bounds,
    psi_holds,
    rate_threshold_kv,
    rate_threshold_majority,
    theory_report,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Field",
    "RSCode",
    "ChannelSpec",
    "ReadSet",
    "philox_stream",
    "transmit",
    "channel_law",
    "SUCCESS",
    "ERASURE_A",
    "ERASURE_B",
    "ERROR",
    "MultiplicityMatrix",
    "PositionTally",
    "build_multiplicity",
    "classify_positions",
    "DecodeList",
    "ReconstructionResult",
    "koetter_interpolate",
    "dense_interpolate",
    "hasse_constraints_ok",
    "roth_ruckenstein",
    "kv_decode",
    "reconstruct",
    "OutcomePmf",
    "PmfBounds",
    "PsiEnvelope",
    "FiniteLengthCertificate",
    "TheoryReport",
    "entropy_q",
    "epsilon_q",
    "capacity",
    "capacity_bits",
    "capacity_limit",
    "outcome_pmf",
    "pmf_bounds",
    "concentration_radius",
    "concentration_interval",
    "psi_holds",
    "finite_length_certificate",
    "asymptotic_forms",
    "rate_threshold_kv",
    "rate_threshold_majority",
    "kv_validity_bound",
    "theory_report",
    "RunConfig",
    "TrialRecord",
    "CampaignSummary",
    "CampaignResult",
    "run_campaign",
    "sweep",
    "write_campaign_csv",
    "write_sweep_csv",
]
