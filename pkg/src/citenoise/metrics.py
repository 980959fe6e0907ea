"""Error-decomposition statistics for a citation system.

Conventions: per-paper error rates are means over the K cited papers,
author error rates are unweighted means over the author's papers, system
aggregates weight authors by their paper counts. Level noise is the
between-author standard deviation of error rates, pattern noise the
paper-weighted root-mean of within-author variances, and the two combine
in quadrature into the overall system noise.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .model import error_matrix


class BiasDirection(Enum):
    OVER = "over"
    UNDER = "under"
    NONE = "none"


@dataclass(frozen=True)
class CitingPaperStats:
    pr: float  # proportion of realized citations in the row
    pa: float  # proportion of correct decisions in the row
    pe: float  # 1 - pa


@dataclass(frozen=True)
class CitedPaperStats:
    pr: float  # column share of realized citations
    tc: int  # times cited (column sum of realized)
    ec: int  # expected citations (column sum of accurate)
    pa: float  # column share of correct decisions
    pe: float


@dataclass(frozen=True)
class BiasResult:
    mean_tc: float
    mean_ec: float
    bias: float
    direction: BiasDirection


@dataclass(frozen=True)
class NoiseReport:
    citing_paper_stats: tuple
    author_error_rates: tuple
    author_pattern_noise: tuple
    cited_paper_stats: tuple
    pa_mean: float
    pe_mean: float
    sigma_ln: float
    sigma_pn: float
    sigma_sys: float
    mean_tc: float
    mean_ec: float
    bias: float
    bias_direction: BiasDirection


def _row_error_rates(system):
    e = error_matrix(system).entries
    return e.mean(axis=1)


def citing_paper_stats(system, j):
    if not 0 <= j < system.n_citing:
        raise IndexError(f"citing paper index {j} out of range")
    row_r = system.realized[j]
    pe = float(np.abs(row_r - system.accurate[j]).mean())
    return CitingPaperStats(pr=float(row_r.mean()), pa=1.0 - pe, pe=pe)


def author_error_rate(system, i):
    """Mean per-paper error rate over author i's citing papers."""
    rows = system.papers_of_author(i)
    return float(_row_error_rates(system)[rows].mean())


def cited_paper_stats(system, k):
    if not 0 <= k < system.n_cited:
        raise IndexError(f"cited paper index {k} out of range")
    col_r = system.realized[:, k]
    col_a = system.accurate[:, k]
    pe = float(np.abs(col_r - col_a).mean())
    return CitedPaperStats(
        pr=float(col_r.mean()),
        tc=int(col_r.sum()),
        ec=int(col_a.sum()),
        pa=1.0 - pe,
        pe=pe,
    )


def system_accuracy(system):
    """(mean accuracy, mean error rate) across all citing papers."""
    pe = float(_row_error_rates(system).mean())
    return 1.0 - pe, pe


def level_noise(system):
    """Between-author standard deviation of error rates, paper-weighted."""
    pe_rows = _row_error_rates(system)
    pe_bar = pe_rows.mean()
    total = 0.0
    for i in range(system.n_authors):
        rows = system.papers_of_author(i)
        total += len(rows) * (pe_bar - pe_rows[rows].mean()) ** 2
    return math.sqrt(total / system.n_citing)


def author_pattern_noise(system, i):
    """Within-author standard deviation of per-paper error rates."""
    rows = system.papers_of_author(i)
    if len(rows) == 1:
        return 0.0
    pe_rows = _row_error_rates(system)[rows]
    return math.sqrt(float(((pe_rows.mean() - pe_rows) ** 2).mean()))


def pattern_noise(system):
    """Root of the paper-weighted mean of squared author pattern noises."""
    total = 0.0
    for i in range(system.n_authors):
        n_i = len(system.papers_of_author(i))
        total += n_i * author_pattern_noise(system, i) ** 2
    return math.sqrt(total / system.n_citing)


def system_noise(system):
    return math.sqrt(level_noise(system) ** 2 + pattern_noise(system) ** 2)


def citation_bias(system):
    """Signed gap between mean realized and mean expected citation counts."""
    mean_tc = float(system.realized.sum(axis=0).mean())
    mean_ec = float(system.accurate.sum(axis=0).mean())
    bias = mean_tc - mean_ec
    if bias > 0:
        direction = BiasDirection.OVER
    elif bias < 0:
        direction = BiasDirection.UNDER
    else:
        direction = BiasDirection.NONE
    return BiasResult(mean_tc=mean_tc, mean_ec=mean_ec, bias=bias, direction=direction)


def analyze(system):
    """Compute every decomposition statistic for one system."""
    pa_bar, pe_bar = system_accuracy(system)
    sigma_ln = level_noise(system)
    sigma_pn = pattern_noise(system)
    bias = citation_bias(system)
    return NoiseReport(
        citing_paper_stats=tuple(
            citing_paper_stats(system, j) for j in range(system.n_citing)
        ),
        author_error_rates=tuple(
            author_error_rate(system, i) for i in range(system.n_authors)
        ),
        author_pattern_noise=tuple(
            author_pattern_noise(system, i) for i in range(system.n_authors)
        ),
        cited_paper_stats=tuple(
            cited_paper_stats(system, k) for k in range(system.n_cited)
        ),
        pa_mean=pa_bar,
        pe_mean=pe_bar,
        sigma_ln=sigma_ln,
        sigma_pn=sigma_pn,
        sigma_sys=math.sqrt(sigma_ln**2 + sigma_pn**2),
        mean_tc=bias.mean_tc,
        mean_ec=bias.mean_ec,
        bias=bias.bias,
        bias_direction=bias.direction,
    )
