"""Statistical summaries of benchmark runs."""

from spsp_search.stats.trends import crossover_point, dominance_fraction, loglog_slope

__all__ = ["crossover_point", "dominance_fraction", "loglog_slope"]
