"""Entropy-objective ensemble pruning.

Selects a size-k sub-ensemble of classifiers that balances diversity
(normalized variation of information between members) against accuracy
(normalized mutual information to the true labels), with a centralized
greedy maximizer and a two-round distributed version that prunes balanced
random groups in parallel and keeps the best candidate.
"""

from entroprune._core import (
    DistributedResult,
    EnsemblePredictions,
    Partition,
    Selection,
    accuracy,
    benchmark_speedup,
    brute_force_optimum,
    cohen_kappa,
    comep,
    domep,
    entropy,
    epfd,
    joint_entropy,
    kappa_pruner,
    load_predictions,
    majority_vote,
    mutual_information,
    norm_mi,
    norm_vi,
    partition,
    plugin_names,
    random_pruner,
    reduce_error_pruner,
    save_predictions,
    synthetic_ensemble,
    tdac,
    tdas_decomposed,
    tdas_pairwise,
)

__all__ = [
    "DistributedResult",
    "EnsemblePredictions",
    "Partition",
    "Selection",
    "accuracy",
    "benchmark_speedup",
    "brute_force_optimum",
    "cohen_kappa",
    "comep",
    "domep",
    "entropy",
    "epfd",
    "joint_entropy",
    "kappa_pruner",
    "load_predictions",
    "majority_vote",
    "mutual_information",
    "norm_mi",
    "norm_vi",
    "partition",
    "plugin_names",
    "random_pruner",
    "reduce_error_pruner",
    "save_predictions",
    "synthetic_ensemble",
    "tdac",
    "tdas_decomposed",
    "tdas_pairwise",
]

__version__ = "0.1.0"
