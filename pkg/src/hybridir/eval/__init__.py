from hybridir.eval.analysis import (
    BinnedReport,
    OverlapReport,
    bin_by_query_length,
    length_bin,
    overlap_analysis,
    region_label,
)
from hybridir.eval.metrics import MetricReport, Qrels, average_precision, mean_average_precision, recall_at_k
from hybridir.eval.stats import TTestResult, paired_t_test, regularized_incomplete_beta, t_two_tailed_p

__all__ = [
    "BinnedReport",
    "MetricReport",
    "OverlapReport",
    "Qrels",
    "TTestResult",
    "average_precision",
    "bin_by_query_length",
    "length_bin",
    "mean_average_precision",
    "overlap_analysis",
    "paired_t_test",
    "recall_at_k",
    "region_label",
    "regularized_incomplete_beta",
    "t_two_tailed_p",
]
