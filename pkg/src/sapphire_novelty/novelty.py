"""The scoring pipeline: action gate, per-construct novelty, aggregation, banding, ranking.

Two problems are compared in full only when their Action texts are similar
enough (the action gate). For every other level present in both problems,
novelty = 1 - similarity; the pair's average novelty is the mean over those
shared non-Action levels, and the average is banded Low / Medium / High. A
current problem's headline score is its *minimum* average novelty over all
gated past problems; ranking orders current problems by that minimum,
most novel first.

Scores are kept at full precision internally; display and banding use
half-up rounding to two decimals. Novelty conversion is decimal-faithful so
that a similarity read from a report (say 0.314) converts to exactly the
complement a human would write down (0.686), with no binary-float drift.

Everything here is a pure function over immutable inputs; pairwise
assessments may run concurrently and the report is sorted before emission.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from functools import total_ordering
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from .problem_model import (
    ConstructLevel,
    ProblemCorpus,
    ProblemSapphire,
    construct_text,
)
from .similarity import SimilarityBackend, text_similarity

__all__ = [
    "DEFAULT_ACTION_THRESHOLD",
    "NoveltyBand",
    "PairAssessment",
    "ProblemNovelty",
    "NoveltyReport",
    "OScoreInput",
    "round_half_up",
    "construct_novelty",
    "classify_novelty",
    "aggregate_novelty",
    "action_match",
    "assess_pair",
    "rank_current_problems",
    "o_score",
]

#: Two action texts "match" when their similarity reaches this value.
DEFAULT_ACTION_THRESHOLD = 0.7


@total_ordering
class NoveltyBand(Enum):
    """Qualitative novelty label with the total order Low < Medium < High."""

    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"

    @property
    def label(self) -> str:
        return self.value.capitalize()

    def __lt__(self, other: "NoveltyBand") -> bool:
        if not isinstance(other, NoveltyBand):
            return NotImplemented
        return _BAND_RANK[self] < _BAND_RANK[other]


_BAND_RANK = {NoveltyBand.LOW: 0, NoveltyBand.MEDIUM: 1, NoveltyBand.HIGH: 2}


def round_half_up(value: float, ndigits: int = 2) -> float:
    """Decimal half-up rounding of the shortest decimal representation of ``value``.

    Avoids the binary-float trap where e.g. round(0.675, 2) rounds down.
    """
    quantum = Decimal(1).scaleb(-ndigits)
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def construct_novelty(similarity: float) -> float:
    """Novelty of one construct pair: 1 - similarity, computed decimal-faithfully."""
    if not 0.0 <= similarity <= 1.0:
        raise ValueError(f"similarity {similarity} outside [0, 1]")
    return float(Decimal(1) - Decimal(repr(similarity)))


def classify_novelty(score: float) -> NoveltyBand:
    """Band a novelty score: Low [0, 0.3), Medium [0.3, 0.7), High [0.7, 1].

    Banding applies to the display-rounded (two-decimal) score, so a label
    always agrees with the number a report prints next to it.
    """
    if not 0.0 <= score <= 1.0:
        raise ValueError(f"novelty score {score} outside [0, 1]")
    rounded = round_half_up(score, 2)
    if rounded < 0.3:
        return NoveltyBand.LOW
    if rounded < 0.7:
        return NoveltyBand.MEDIUM
    return NoveltyBand.HIGH


def aggregate_novelty(
    construct_scores: Mapping[ConstructLevel, float],
    included: Iterable[ConstructLevel],
) -> float:
    """Arithmetic mean of per-construct novelty over ``included`` levels.

    The Action level is the gate, not part of the average, and is rejected
    here. Summation follows the canonical level order so the result is
    bit-identical regardless of the order callers assembled the map in.
    """
    included_set = set(included)
    if not included_set:
        raise ValueError("cannot aggregate over an empty set of levels")
    if ConstructLevel.ACTION in included_set:
        raise ValueError("the Action level is gated, never averaged")
    missing = [level.key for level in included_set if level not in construct_scores]
    if missing:
        raise ValueError(f"no score for included level(s): {sorted(missing)}")
    ordered = [construct_scores[level] for level in ConstructLevel if level in included_set]
    return sum(ordered) / len(ordered)


@dataclass(frozen=True)
class PairAssessment:
    """Scores for one gated (past, current) pair.

    ``construct_similarity`` always carries the Action entry; other levels are
    present iff both problems carry that construct. ``included_levels`` are the
    non-Action levels that were averaged; when the pair shares none,
    ``no_comparable_constructs`` is set and the average and band are absent.
    """

    past_id: str
    current_id: str
    construct_similarity: Mapping[ConstructLevel, float]
    construct_novelty: Mapping[ConstructLevel, float]
    included_levels: tuple[ConstructLevel, ...]
    average_novelty: Optional[float]
    band: Optional[NoveltyBand]
    no_comparable_constructs: bool = False

    def __post_init__(self) -> None:
        if ConstructLevel.ACTION in self.included_levels:
            raise ValueError("the Action level cannot be part of the average")
        object.__setattr__(
            self, "construct_similarity", MappingProxyType(dict(self.construct_similarity))
        )
        object.__setattr__(
            self, "construct_novelty", MappingProxyType(dict(self.construct_novelty))
        )


@dataclass(frozen=True)
class ProblemNovelty:
    """One current problem's assessments, minimum novelty, band, and rank.

    ``rank`` (1 = most novel) and the scores are absent for unmatched
    problems, i.e. those with no gated pair carrying an average.
    """

    current_id: str
    assessments: tuple[PairAssessment, ...]
    min_novelty: Optional[float] = None
    band: Optional[NoveltyBand] = None
    rank: Optional[int] = None


@dataclass(frozen=True)
class NoveltyReport:
    """Ranking of a current corpus against a past corpus.

    ``ranked`` is ordered by descending minimum novelty (ties broken by
    ascending problem id); ``unmatched`` lists, in id order, the current
    problems with no scorable gated pair.
    """

    backend_kind: str
    threshold: float
    past_corpus: str
    current_corpus: str
    ranked: tuple[ProblemNovelty, ...] = ()
    unmatched: tuple[ProblemNovelty, ...] = ()

    @property
    def entries(self) -> tuple[ProblemNovelty, ...]:
        return self.ranked + self.unmatched


def action_match(
    past: ProblemSapphire,
    current: ProblemSapphire,
    backend: SimilarityBackend,
    threshold: float = DEFAULT_ACTION_THRESHOLD,
) -> tuple[bool, float]:
    """Compare the two Action texts; matched iff similarity >= threshold.

    Callers are expected to pass validated problems (Action present).
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold {threshold} outside [0, 1]")
    past_action = construct_text(past, ConstructLevel.ACTION)
    current_action = construct_text(current, ConstructLevel.ACTION)
    if past_action is None or current_action is None:
        raise ValueError("both problems must carry an Action construct")
    similarity = text_similarity(past_action, current_action, backend)
    return similarity >= threshold, similarity


def assess_pair(
    past: ProblemSapphire,
    current: ProblemSapphire,
    backend: SimilarityBackend,
    threshold: float = DEFAULT_ACTION_THRESHOLD,
) -> Optional[PairAssessment]:
    """Assess one (past, current) pair; None when the action gate fails.

    Action similarity and novelty are recorded but excluded from the average;
    the average runs over the non-Action levels present in both problems.
    """
    matched, action_similarity = action_match(past, current, backend, threshold)
    if not matched:
        return None

    similarities = {ConstructLevel.ACTION: action_similarity}
    novelties = {ConstructLevel.ACTION: construct_novelty(action_similarity)}
    shared: list[ConstructLevel] = []
    for level in ConstructLevel:
        if level is ConstructLevel.ACTION:
            continue
        past_text = construct_text(past, level)
        current_text = construct_text(current, level)
        if past_text is None or current_text is None:
            continue
        similarity = text_similarity(past_text, current_text, backend)
        similarities[level] = similarity
        novelties[level] = construct_novelty(similarity)
        shared.append(level)

    if not shared:
        return PairAssessment(
            past_id=past.id,
            current_id=current.id,
            construct_similarity=similarities,
            construct_novelty=novelties,
            included_levels=(),
            average_novelty=None,
            band=None,
            no_comparable_constructs=True,
        )

    average = aggregate_novelty(novelties, shared)
    return PairAssessment(
        past_id=past.id,
        current_id=current.id,
        construct_similarity=similarities,
        construct_novelty=novelties,
        included_levels=tuple(shared),
        average_novelty=average,
        band=classify_novelty(average),
    )


def rank_current_problems(
    past: ProblemCorpus,
    current: ProblemCorpus,
    backend: SimilarityBackend,
    threshold: float = DEFAULT_ACTION_THRESHOLD,
) -> NoveltyReport:
    """Assess every current problem against every past problem and rank them.

    A current problem's score is the minimum average novelty among its gated
    pairs; problems whose pairs all gate out (or share no scorable construct)
    land in the unmatched list with absent scores. Ordering is deterministic:
    descending minimum novelty, ties by ascending id.
    """
    if not past.problems:
        raise ValueError("the past corpus must be non-empty")

    scored: list[ProblemNovelty] = []
    unmatched: list[ProblemNovelty] = []
    for problem in current.problems:
        assessments = []
        for reference in past.problems:
            assessment = assess_pair(reference, problem, backend, threshold)
            if assessment is not None:
                assessments.append(assessment)
        averages = [a.average_novelty for a in assessments if a.average_novelty is not None]
        if averages:
            minimum = min(averages)
            scored.append(
                ProblemNovelty(
                    current_id=problem.id,
                    assessments=tuple(assessments),
                    min_novelty=minimum,
                    band=classify_novelty(minimum),
                )
            )
        else:
            unmatched.append(
                ProblemNovelty(current_id=problem.id, assessments=tuple(assessments))
            )

    scored.sort(key=lambda entry: (-entry.min_novelty, entry.current_id))
    ranked = tuple(
        ProblemNovelty(
            current_id=entry.current_id,
            assessments=entry.assessments,
            min_novelty=entry.min_novelty,
            band=entry.band,
            rank=position,
        )
        for position, entry in enumerate(scored, start=1)
    )
    unmatched.sort(key=lambda entry: entry.current_id)
    return NoveltyReport(
        backend_kind=backend.kind,
        threshold=threshold,
        past_corpus=past.name,
        current_corpus=current.name,
        ranked=ranked,
        unmatched=tuple(unmatched),
    )


@dataclass(frozen=True)
class OScoreInput:
    """Counts behind the frequency baseline: n similar ideas out of m total."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("m (total ideas) must be at least 1")
        if not 0 <= self.n <= self.m:
            raise ValueError(f"n must satisfy 0 <= n <= m, got n={self.n}, m={self.m}")


def o_score(counts: OScoreInput) -> float:
    """Frequency-based originality baseline: 1 - n/m."""
    return 1.0 - counts.n / counts.m
