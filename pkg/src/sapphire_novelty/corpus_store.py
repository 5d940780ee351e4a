"""Loading, saving, validating, and importing problem corpora.

On-disk format is UTF-8 JSON Lines: one problem object per line with the keys
``id``, ``label``, ``provenance`` ("past" | "current"), ``source``,
``context``, and ``constructs`` (an object mapping the seven canonical
construct keys to phrases; keys other than ``action`` may be absent).

Strict mode aborts on the first file with any violation, naming line numbers;
lenient mode skips invalid records with warnings. Survey responses arrive as
CSV and are imported as a current-role corpus.
"""

from __future__ import annotations

import csv
import json
import warnings
from pathlib import Path

from .problem_model import (
    CANONICAL_LEVEL_KEYS,
    ConstructLevel,
    ProblemCorpus,
    ProblemSapphire,
    Provenance,
    validate_corpus,
    validate_problem,
)

__all__ = [
    "CorpusWarning",
    "CorpusFormatError",
    "load_corpus",
    "save_corpus",
    "import_survey_csv",
    "problem_to_record",
    "problem_from_record",
    "validate_corpus_file",
]

_RECORD_KEYS = ("id", "label", "provenance", "source", "context", "constructs")

# Construct columns after action are optional in survey files.
_SURVEY_REQUIRED_COLUMNS = ("id", "label", "source", "action")
_SURVEY_CONSTRUCT_COLUMNS = CANONICAL_LEVEL_KEYS


class CorpusWarning(UserWarning):
    """Recoverable corpus problems reported in lenient mode (and vacuous cases)."""


class CorpusFormatError(ValueError):
    """A corpus file that violates the schema; the message names line numbers."""


def problem_to_record(problem: ProblemSapphire) -> dict:
    """Serialize one problem to its JSONL object, keys in canonical order."""
    return {
        "id": problem.id,
        "label": problem.label,
        "provenance": problem.provenance.value,
        "source": problem.source,
        "context": problem.context,
        "constructs": {level.key: text for level, text in problem.constructs.items()},
    }


def problem_from_record(record: dict, *, line_no: int, strict: bool) -> ProblemSapphire:
    """Build one problem from a parsed JSONL object, enforcing the schema.

    Raises :class:`CorpusFormatError` for schema breaches; in lenient mode the
    breaches that have a safe reading (unknown keys) are warnings instead.
    """
    if not isinstance(record, dict):
        raise CorpusFormatError(f"line {line_no}: expected a JSON object, got {type(record).__name__}")

    unknown = sorted(set(record) - set(_RECORD_KEYS))
    if unknown:
        message = f"line {line_no}: unknown key(s) {unknown}"
        if strict:
            raise CorpusFormatError(message)
        warnings.warn(message + " (ignored)", CorpusWarning)

    raw_provenance = record.get("provenance")
    try:
        provenance = Provenance(raw_provenance)
    except ValueError:
        raise CorpusFormatError(
            f"line {line_no}: provenance must be 'past' or 'current', got {raw_provenance!r}"
        ) from None

    raw_constructs = record.get("constructs", {})
    if not isinstance(raw_constructs, dict):
        raise CorpusFormatError(f"line {line_no}: 'constructs' must be an object")
    constructs: dict[ConstructLevel, str] = {}
    for key, text in raw_constructs.items():
        if key not in CANONICAL_LEVEL_KEYS:
            message = f"line {line_no}: unknown construct key {key!r}"
            if strict:
                raise CorpusFormatError(message)
            warnings.warn(message + " (ignored)", CorpusWarning)
            continue
        if not isinstance(text, str):
            raise CorpusFormatError(f"line {line_no}: construct {key!r} must be a string")
        constructs[ConstructLevel.from_key(key)] = text

    for field_name in ("id", "label", "source", "context"):
        value = record.get(field_name, "")
        if not isinstance(value, str):
            raise CorpusFormatError(f"line {line_no}: {field_name!r} must be a string")

    return ProblemSapphire(
        id=record.get("id", ""),
        label=record.get("label", ""),
        provenance=provenance,
        source=record.get("source", ""),
        context=record.get("context", ""),
        constructs=constructs,
    )


def load_corpus(path: str | Path, role: Provenance, strict: bool = True) -> ProblemCorpus:
    """Load a JSONL corpus file; the corpus takes its name from the file stem.

    Every line is parsed and validated; ids must be unique and every record's
    provenance must agree with ``role``. Strict mode raises
    :class:`CorpusFormatError` naming the offending line; lenient mode skips
    bad records with a :class:`CorpusWarning`. An empty file yields an empty
    corpus with a warning.
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8") as handle:
        lines = handle.read().split("\n")
    # A trailing newline produces one final empty chunk; it is not a blank line.
    if lines and lines[-1] == "":
        lines = lines[:-1]

    last_content = max((i for i, line in enumerate(lines) if line.strip()), default=-1)
    problems: list[ProblemSapphire] = []
    seen_ids: dict[str, int] = {}
    for index, line in enumerate(lines):
        line_no = index + 1
        if not line.strip():
            if index < last_content:
                message = f"line {line_no}: blank interior line"
                if strict:
                    raise CorpusFormatError(f"{path}: {message}")
                warnings.warn(f"{path}: {message} (skipped)", CorpusWarning)
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as error:
            message = f"line {line_no}: malformed JSON ({error.msg})"
            if strict:
                raise CorpusFormatError(f"{path}: {message}") from None
            warnings.warn(f"{path}: {message} (skipped)", CorpusWarning)
            continue
        try:
            problem = problem_from_record(record, line_no=line_no, strict=strict)
        except CorpusFormatError as error:
            if strict:
                raise CorpusFormatError(f"{path}: {error}") from None
            warnings.warn(f"{path}: {error} (record skipped)", CorpusWarning)
            continue

        violations = validate_problem(problem)
        if violations:
            joined = "; ".join(str(v) for v in violations)
            message = f"line {line_no}: invalid record: {joined}"
            if strict:
                raise CorpusFormatError(f"{path}: {message}")
            warnings.warn(f"{path}: {message} (skipped)", CorpusWarning)
            continue
        if problem.provenance is not role:
            message = (
                f"line {line_no}: provenance {problem.provenance.value!r} "
                f"does not match the corpus role {role.value!r}"
            )
            if strict:
                raise CorpusFormatError(f"{path}: {message}")
            warnings.warn(f"{path}: {message} (skipped)", CorpusWarning)
            continue
        if problem.id in seen_ids:
            message = f"line {line_no}: duplicate id {problem.id!r} (first on line {seen_ids[problem.id]})"
            if strict:
                raise CorpusFormatError(f"{path}: {message}")
            warnings.warn(f"{path}: {message} (skipped)", CorpusWarning)
            continue
        seen_ids[problem.id] = line_no
        problems.append(problem)

    if not problems and last_content == -1:
        warnings.warn(f"{path}: empty corpus file", CorpusWarning)
    return ProblemCorpus(name=path.stem, role=role, problems=tuple(problems))


def save_corpus(corpus: ProblemCorpus, path: str | Path) -> None:
    """Write one JSON object per line, in corpus order, canonical key order.

    The corpus must be valid; a strict reload of the written file reproduces
    the corpus field-for-field (load names the corpus after the file stem).
    """
    violations = validate_corpus(corpus)
    if violations:
        joined = "; ".join(str(v) for v in violations)
        raise ValueError(f"refusing to save an invalid corpus: {joined}")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for problem in corpus.problems:
            handle.write(json.dumps(problem_to_record(problem), ensure_ascii=False))
            handle.write("\n")


def import_survey_csv(
    path: str | Path, context: str, strict: bool = True
) -> ProblemCorpus:
    """Import survey responses (CSV) as a current-role corpus.

    The header row must carry ``id``, ``label``, ``source`` and ``action``;
    the remaining construct columns are optional. Empty construct cells become
    absent levels; an empty id cell auto-generates ``CUR-<row>`` from the
    1-based data row number. A row with a blank action cell is an error in
    strict mode and skipped with a warning otherwise.
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise CorpusFormatError(f"{path}: missing header row") from None
        header = [column.strip() for column in header]
        missing = [column for column in _SURVEY_REQUIRED_COLUMNS if column not in header]
        if missing:
            raise CorpusFormatError(f"{path}: header lacks required column(s) {missing}")
        known = set(_SURVEY_REQUIRED_COLUMNS) | set(_SURVEY_CONSTRUCT_COLUMNS)
        unknown = [column for column in header if column not in known]
        if unknown:
            warnings.warn(f"{path}: ignoring unknown column(s) {unknown}", CorpusWarning)
        position = {column: i for i, column in enumerate(header)}

        problems: list[ProblemSapphire] = []
        seen_ids: dict[str, int] = {}
        row_no = 0
        for row in reader:
            if not any(cell.strip() for cell in row):
                continue
            row_no += 1

            def cell(column: str) -> str:
                index = position.get(column)
                if index is None or index >= len(row):
                    return ""
                return row[index].strip()

            action = cell("action")
            if not action:
                message = f"row {row_no}: empty action cell"
                if strict:
                    raise CorpusFormatError(f"{path}: {message}")
                warnings.warn(f"{path}: {message} (row skipped)", CorpusWarning)
                continue
            problem_id = cell("id") or f"CUR-{row_no}"
            if problem_id in seen_ids:
                message = (
                    f"row {row_no}: duplicate id {problem_id!r} "
                    f"(first on row {seen_ids[problem_id]})"
                )
                if strict:
                    raise CorpusFormatError(f"{path}: {message}")
                warnings.warn(f"{path}: {message} (row skipped)", CorpusWarning)
                continue
            seen_ids[problem_id] = row_no
            constructs = {ConstructLevel.ACTION: action}
            for key in _SURVEY_CONSTRUCT_COLUMNS:
                if key == ConstructLevel.ACTION.key:
                    continue
                text = cell(key)
                if text:
                    constructs[ConstructLevel.from_key(key)] = text
            problems.append(
                ProblemSapphire(
                    id=problem_id,
                    label=cell("label"),
                    provenance=Provenance.CURRENT,
                    source=cell("source"),
                    context=context,
                    constructs=constructs,
                )
            )

    if not problems:
        warnings.warn(f"{path}: survey file contains no data rows", CorpusWarning)
    return ProblemCorpus(name=path.stem, role=Provenance.CURRENT, problems=tuple(problems))


def validate_corpus_file(path: str | Path) -> list[str]:
    """Strictly check one corpus file and return every violation as a message.

    The corpus role is taken from the records themselves; a file mixing past
    and current provenance is reported as a violation. Used by the CLI's
    ``validate`` command, which wants the full list rather than a first-error
    abort.
    """
    path = Path(path)
    findings: list[str] = []
    with open(path, "r", encoding="utf-8") as handle:
        lines = handle.read().split("\n")
    if lines and lines[-1] == "":
        lines = lines[:-1]
    last_content = max((i for i, line in enumerate(lines) if line.strip()), default=-1)

    problems: list[tuple[int, ProblemSapphire]] = []
    for index, line in enumerate(lines):
        line_no = index + 1
        if not line.strip():
            if index < last_content:
                findings.append(f"line {line_no}: blank interior line")
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as error:
            findings.append(f"line {line_no}: malformed JSON ({error.msg})")
            continue
        try:
            problem = problem_from_record(record, line_no=line_no, strict=True)
        except CorpusFormatError as error:
            findings.append(str(error))
            continue
        for violation in validate_problem(problem):
            findings.append(f"line {line_no}: {violation}")
        problems.append((line_no, problem))

    seen: dict[str, int] = {}
    for line_no, problem in problems:
        if problem.id in seen:
            findings.append(
                f"line {line_no}: duplicate id {problem.id!r} (first on line {seen[problem.id]})"
            )
        else:
            seen[problem.id] = line_no

    roles = {problem.provenance for _, problem in problems}
    if len(roles) > 1:
        findings.append("file mixes 'past' and 'current' provenance records")
    return findings
