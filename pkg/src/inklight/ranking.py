"""Rating-to-ranking methods, ensemble aggregation, and agreement statistics.

Three rating engines (centroid differences, offense/defense ratios, iterated
medians), a dominance-matrix ensemble with local swap optimization, and the
spread/agreement measures used to describe rating tables.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy.stats import chi2 as _chi2_dist
from scipy.stats import rankdata

from .image import DegenerateInputWarning

MAX_CATEGORY_VALUE = 99  # majority values encode medians as two-digit groups


@dataclass(frozen=True)
class RankVector:
    """Items with ratings and competition ranks (1 is best, ties share).

    Ranks normally derive from sorting ratings descending; the swap
    optimizer emits vectors whose ranks are a corrected permutation while
    the ratings stay those of the aggregate.
    """

    items: tuple[str, ...]
    ratings: tuple[float, ...]
    ranks: tuple[int, ...]

    def __post_init__(self) -> None:
        if not (len(self.items) == len(self.ratings) == len(self.ranks)):
            raise ValueError("items, ratings, and ranks must align")

    @classmethod
    def from_ratings(cls, items: Sequence[str], ratings: Sequence[float]) -> "RankVector":
        r = np.asarray(ratings, dtype=np.float64)
        ranks = tuple(int(1 + np.sum(r > v)) for v in r)
        return cls(tuple(items), tuple(float(v) for v in r), ranks)

    def order(self) -> tuple[str, ...]:
        """Items best-first; equal ranks keep their input order."""
        idx = sorted(range(len(self.items)), key=lambda i: (self.ranks[i], i))
        return tuple(self.items[i] for i in idx)

    def scores(self) -> tuple[float, ...]:
        """Rank-derived scores s = n + 1 - k."""
        n = len(self.items)
        return tuple(float(n + 1 - k) for k in self.ranks)

    def rating_of(self, item: str) -> float:
        return self.ratings[self.items.index(item)]


@dataclass(frozen=True)
class ConcordanceResult:
    """Tie-corrected concordance with its significance test."""

    w: float
    chi2: float
    p: float
    tie_correction: float
    judges: int
    items: int


def _check_score_matrix(score_matrix: np.ndarray) -> np.ndarray:
    s = np.asarray(score_matrix, dtype=np.float64)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise ValueError(f"score matrix must be square, got shape {s.shape}")
    if s.shape[0] < 2:
        raise ValueError("need at least two items to rank")
    if np.any(np.diagonal(s) != 0.0):
        raise ValueError("score matrix diagonal must be zero")
    if np.any(s < 0.0):
        raise ValueError("score matrix entries must be nonnegative")
    return s


def _default_items(n: int, items: Sequence[str] | None) -> tuple[str, ...]:
    if items is None:
        return tuple(f"item{i}" for i in range(n))
    if len(items) != n:
        raise ValueError(f"{len(items)} labels for {n} items")
    return tuple(items)


def centroid_ratings(
    score_matrix: np.ndarray,
    items: Sequence[str] | None = None,
    round_output: bool = False,
) -> RankVector:
    """Row-averaged score differences: r = (S - S^T) e / n.

    Adding any constant to all off-diagonal scores cancels out; a symmetric
    matrix rates everything zero. Rounding to integers is optional and off
    by default so full precision survives.
    """
    s = _check_score_matrix(score_matrix)
    n = s.shape[0]
    r = (s - s.T).sum(axis=1) / n
    if round_output:
        r = np.rint(r)
    return RankVector.from_ratings(_default_items(n, items), r)


def rod_ratings(score_matrix: np.ndarray, items: Sequence[str] | None = None) -> RankVector:
    """Offense/defense ratios: row sums over column sums.

    An item nobody scores against but which itself scores is infinitely
    strong (+inf, ranked above all finite ratings); an item with neither
    offense nor defense rates 0 with a warning.
    """
    s = _check_score_matrix(score_matrix)
    offense = s.sum(axis=1)
    defense = s.sum(axis=0)
    undefined = (defense == 0.0) & (offense == 0.0)
    if undefined.any():
        warnings.warn(
            "items with no offense and no defense rate 0 by convention",
            DegenerateInputWarning,
        )
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(
            defense > 0.0,
            offense / np.where(defense > 0.0, defense, 1.0),
            np.where(offense > 0.0, np.inf, 0.0),
        )
    return RankVector.from_ratings(_default_items(s.shape[0], items), r)


def majority_value(ratings: Sequence[int]) -> float:
    """Iterated-lower-median encoding of a rating multiset.

    Medians are removed one at a time (lower median on even counts); the
    first becomes the integer part and the rest follow as zero-padded
    two-digit decimal groups, so {7, 9, 9, 11, 11} encodes to 9.09110711.
    """
    if len(ratings) == 0:
        raise ValueError("empty rating list has no majority value")
    pool = sorted(ratings)
    for v in pool:
        if v != int(v) or not 0 <= v <= MAX_CATEGORY_VALUE:
            raise ValueError(f"ratings must be integers in [0, {MAX_CATEGORY_VALUE}]: {v}")
    medians = []
    while pool:
        medians.append(pool.pop((len(pool) - 1) // 2))
    tail = "".join(f"{int(m):02d}" for m in medians[1:])
    return float(f"{int(medians[0])}.{tail}" if tail else f"{int(medians[0])}")


def majority_judgment(
    ratings: Mapping[str, Sequence] | Sequence[Sequence],
    category_values: Mapping[str, int] | None = None,
) -> RankVector:
    """Rank items by their iterated-median majority values.

    Ratings may be numeric already or category symbols translated through
    ``category_values``. Every item must carry the same number of ratings.
    """
    if isinstance(ratings, Mapping):
        items = tuple(str(k) for k in ratings)
        lists = [list(v) for v in ratings.values()]
    else:
        items = tuple(f"item{i}" for i in range(len(ratings)))
        lists = [list(v) for v in ratings]
    if not lists:
        raise ValueError("no items to rank")
    counts = {len(v) for v in lists}
    if counts == {0}:
        raise ValueError("empty rating list has no majority value")
    if len(counts) != 1:
        raise ValueError(f"items carry unequal rating counts: {sorted(counts)}")

    def translate(v):
        if category_values is not None and isinstance(v, str):
            if v not in category_values:
                raise ValueError(f"unknown category {v!r}")
            return category_values[v]
        return v

    values = [majority_value([translate(v) for v in lst]) for lst in lists]
    return RankVector.from_ratings(items, values)


def _as_rating_array(vector) -> np.ndarray:
    if isinstance(vector, RankVector):
        return np.asarray(vector.ratings, dtype=np.float64)
    return np.asarray(vector, dtype=np.float64)


def pairwise_dominance(rating_vectors: Sequence) -> np.ndarray:
    """Averaged normalized matrices of pairwise positive rating differences.

    Per vector, R(ij) = max(0, r_i - r_j), normalized by the sum of all its
    entries; infinite ratings are replaced by the vector's largest finite
    rating plus one before differencing. A fully tied vector has nothing to
    normalize and contributes a zero matrix, with a warning.
    """
    if len(rating_vectors) == 0:
        raise ValueError("need at least one rating vector")
    arrays = [_as_rating_array(v) for v in rating_vectors]
    n = len(arrays[0])
    if any(len(a) != n for a in arrays):
        raise ValueError("rating vectors must have equal lengths")
    acc = np.zeros((n, n))
    for r in arrays:
        r = r.copy()
        infinite = np.isinf(r)
        if infinite.any():
            finite = r[~infinite]
            ceiling = finite.max() + 1.0 if finite.size else 1.0
            r[infinite] = ceiling
        diff = np.maximum(r[:, None] - r[None, :], 0.0)
        total = diff.sum()
        if total == 0.0:
            warnings.warn(
                "fully tied rating vector contributes no dominance",
                DegenerateInputWarning,
            )
            continue
        acc += diff / total
    return acc / len(arrays)


def aggregate_ratings(
    rating_vectors: Sequence, items: Sequence[str] | None = None
) -> RankVector:
    """Ensemble rating: offense/defense ratios of the averaged dominance."""
    if items is None:
        for v in rating_vectors:
            if isinstance(v, RankVector):
                items = v.items
                break
    rbar = pairwise_dominance(rating_vectors)
    return rod_ratings(rbar, items)


def kemenize(aggregated: RankVector, input_vectors: Sequence[RankVector]) -> RankVector:
    """Adjacent-swap majority correction of an aggregated ranking.

    While any adjacent pair is ordered against a strict majority of the
    input rankings, swap it; each swap strictly lowers total pairwise
    disagreement, so the fixed point arrives within n^2 passes. Ratings are
    kept from the aggregate; only ranks are rewritten.
    """
    order = list(aggregated.order())
    n = len(order)
    voters = len(input_vectors)
    for _ in range(n * n):
        changed = False
        for i in range(n - 1):
            above, below = order[i], order[i + 1]
            prefer_below = sum(
                1 for v in input_vectors if v.rating_of(below) > v.rating_of(above)
            )
            if prefer_below * 2 > voters:
                order[i], order[i + 1] = below, above
                changed = True
        if not changed:
            break
    position = {item: k + 1 for k, item in enumerate(order)}
    ranks = tuple(position[item] for item in aggregated.items)
    return RankVector(aggregated.items, aggregated.ratings, ranks)


def kendall_w(scores: np.ndarray) -> ConcordanceResult:
    """Tie-corrected concordance of judge-by-item score rows.

    Rows are judges, columns are items; any monotone scores work since
    each row is mid-ranked internally. W = 12 S / (n^2 (m^3 - m) - n T)
    with T summing (t^3 - t) over tie runs; significance via
    chi^2 = n (m - 1) W on m - 1 degrees of freedom. If every judge ties
    every item there is no information and the result is NaN, with a
    warning.
    """
    table = np.asarray(scores, dtype=np.float64)
    if table.ndim != 2:
        raise ValueError(f"expected a 2-D judges-by-items table, got shape {table.shape}")
    n, m = table.shape
    if n < 2 or m < 2:
        raise ValueError(f"need >= 2 judges and >= 2 items, got {n} x {m}")

    ranks = np.vstack([rankdata(row, method="average") for row in table])
    totals = ranks.sum(axis=0)
    deviation_sq = float(((totals - totals.mean()) ** 2).sum())
    correction = 0.0
    for row in ranks:
        _, counts = np.unique(row, return_counts=True)
        correction += float((counts**3 - counts).sum())
    denominator = n * n * (m**3 - m) - n * correction
    if denominator == 0.0:
        warnings.warn("all judges tie all items; concordance is undefined", DegenerateInputWarning)
        return ConcordanceResult(float("nan"), float("nan"), float("nan"), correction, n, m)
    w = 12.0 * deviation_sq / denominator
    chi2 = n * (m - 1) * w
    p = float(_chi2_dist.sf(chi2, m - 1))
    return ConcordanceResult(float(w), float(chi2), p, correction, n, m)


def spatial_flatness(histogram: Sequence[float]) -> float:
    """Complement of the spectral flatness of a histogram's DFT magnitude.

    0 for an impulse (flat spectrum), 1 for a uniform histogram (spectral
    impulse). Magnitudes below n * eps * max are floating-point residue of
    exact zeros and are treated as such; any true zero magnitude collapses
    the geometric mean.
    """
    h = np.asarray(histogram, dtype=np.float64)
    if h.ndim != 1 or h.size < 2:
        raise ValueError("histogram must be a vector of length >= 2")
    if np.any(h < 0.0):
        raise ValueError("histogram bins must be nonnegative")
    if not np.any(h > 0.0):
        raise ValueError("all-zero histogram has no spectrum")
    mags = np.abs(np.fft.fft(h))
    n = mags.size
    tol = n * np.finfo(np.float64).eps * mags.max()
    mags = np.where(mags < tol, 0.0, mags)
    total = mags.sum()
    if np.any(mags == 0.0):
        gm = 0.0
    else:
        gm = float(np.exp(np.mean(np.log(mags))))
    sf = 1.0 - n * gm / total
    return float(min(1.0, max(0.0, sf)))


def shannon_entropy(histogram: Sequence[float]) -> float:
    """Entropy in bits of a histogram normalized to probabilities."""
    h = np.asarray(histogram, dtype=np.float64)
    total = h.sum()
    if total <= 0.0:
        raise ValueError("histogram must have positive mass")
    p = h[h > 0.0] / total
    return float(-(p * np.log2(p)).sum())
