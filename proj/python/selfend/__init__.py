"""Selfish-endorsing attack analysis for Emmy+ style proof-of-stake."""

from ._core import (
    SLOTS_PER_YEAR,
    AttackTuple,
    DomainError,
    Len1Assessment,
    PrecisionError,
    ProtocolVariant,
    TupleAssessment,
    __version__,
    alpha_sweep,
    assess_len1,
    assess_len2,
    baking_reward,
    block_delay,
    delay_diff_len2,
    delay_diff_len2_oracle,
    endorsement_reward,
    enumerate_attacks,
    parse_variant,
    replay_episode,
    reward_diff_len2,
    reward_diff_len2_oracle,
    run_monte_carlo,
    tuple_probability,
)

__all__ = [
    "SLOTS_PER_YEAR",
    "AttackTuple",
    "DomainError",
    "Len1Assessment",
    "PrecisionError",
    "ProtocolVariant",
    "TupleAssessment",
    "__version__",
    "alpha_sweep",
    "assess_len1",
    "assess_len2",
    "baking_reward",
    "block_delay",
    "delay_diff_len2",
    "delay_diff_len2_oracle",
    "endorsement_reward",
    "enumerate_attacks",
    "parse_variant",
    "replay_episode",
    "reward_diff_len2",
    "reward_diff_len2_oracle",
    "run_monte_carlo",
    "tuple_probability",
]
