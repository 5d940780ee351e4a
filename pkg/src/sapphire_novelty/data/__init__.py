"""Bundled electric-kettle case study: two past problems (PS1, PS2) harvested
from patent-style sources and three current problems (PS3, PS4, PS5) from a
stakeholder survey, all sharing the action "spilling of liquid", plus a
pinned-similarity table covering every construct pair between them."""

from importlib.resources import files
from pathlib import Path

from ..corpus_store import load_corpus
from ..problem_model import ProblemCorpus, Provenance
from ..similarity import FixtureBackend

__all__ = [
    "past_corpus_path",
    "current_corpus_path",
    "fixture_similarities_path",
    "load_case_study",
]


def _data_path(name: str) -> Path:
    return Path(str(files(__package__) / name))


def past_corpus_path() -> Path:
    return _data_path("kettle_past.jsonl")


def current_corpus_path() -> Path:
    return _data_path("kettle_current.jsonl")


def fixture_similarities_path() -> Path:
    return _data_path("kettle_similarities.tsv")


def load_case_study() -> tuple[ProblemCorpus, ProblemCorpus, FixtureBackend]:
    """Load (past corpus, current corpus, pinned-similarity backend)."""
    past = load_corpus(past_corpus_path(), Provenance.PAST, strict=True)
    current = load_corpus(current_corpus_path(), Provenance.CURRENT, strict=True)
    backend = FixtureBackend.from_file(fixture_similarities_path())
    return past, current, backend
