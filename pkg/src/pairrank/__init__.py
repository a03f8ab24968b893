"""Multivariate filter feature ranking: Pairwise Correlation and Pairwise Consistency."""
from .baselines import ReliefFConfig, rank_relieff, rank_univariate
from .compare import best_count, paired_t, wins_losses
from .consistency import consistency_rate, inconsistency_rate, rank_pairwise_consistency
from .correlation import pair_merit, rank_pairwise_correlation, subset_merit
from .dataset import Dataset, class_distribution, load_arff, load_csv, project
from .discretize import discretize_dataset, mdl_cut_points
from .evaluation import cross_validate, evaluate_ranking, stratified_folds
from .ranking import Ranking

__version__ = "0.1.0"

__all__ = [
    "Dataset", "Ranking", "ReliefFConfig",
    "load_csv", "load_arff", "project", "class_distribution",
    "mdl_cut_points", "discretize_dataset",
    "subset_merit", "pair_merit", "rank_pairwise_correlation",
    "inconsistency_rate", "consistency_rate", "rank_pairwise_consistency",
    "rank_univariate", "rank_relieff",
    "stratified_folds", "cross_validate", "evaluate_ranking",
    "paired_t", "wins_losses", "best_count",
]
