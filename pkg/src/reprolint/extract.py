"""S2R sentence labeling (BIO) and per-sentence step extraction.

The labeler is rule-based over discourse patterns (imperative-initial,
conditional clauses, first/second-person actions, sequential markers) and is
pluggable: precomputed labels can be supplied from a sidecar file. Extraction
classifies each labeled sentence and pulls ordered
[action][object][preposition][object2] tuples out of its clauses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Protocol

from . import lexicon
from .errors import LabelFileError
from .ingest import BugReport, Paragraph, Sentence, Token


class SentenceLabel(Enum):
    B_S2R = "B"
    I_S2R = "I"
    O = "O"


CONDITIONAL_ADVERBS = {"when", "if", "after", "once", "whenever", "while"}
CONTINUATION_MARKERS = {"then", "next", "and", "afterwards", "finally", "now", "later", "also"}
_STRIPPABLE = CONTINUATION_MARKERS | {"please", "first", "second", "third", "just"}
# verbs/modals that signal observed or expected behavior rather than a step
OBEB_VERBS = {"should", "would", "could", "might", "shall", "may", "expect", "seem"}
_PERSON_SUBJECTS = {"i", "you", "we"}


@dataclass
class S2R:
    """One extracted step: [action] [object] [preposition] [object2]."""

    action: str
    object: list[Token]
    preposition: Token | None
    object2: list[Token]
    sentence_index: int
    order_index: int = -1
    clause_index: int = 0
    after_clause: bool = False

    def object_terms(self) -> list[str]:
        return [t.lemma for t in self.object]

    def object2_terms(self) -> list[str]:
        return [t.lemma for t in self.object2]

    def prep_term(self) -> str | None:
        return self.preposition.lemma if self.preposition else None

    def all_terms(self) -> list[str]:
        """action + object + object2 lemmas, the full-step query sequence."""
        return [self.action, *self.object_terms(), *self.object2_terms()]

    def has_literal(self, which: str) -> bool:
        tokens = self.object if which == "object" else self.object2
        return any(t.pos == lexicon.LITERAL for t in tokens)

    def render(self) -> str:
        parts = [
            self.action,
            " ".join(self.object_terms()),
            self.prep_term() or "",
            " ".join(self.object2_terms()),
        ]
        return "".join(f"[{p}]" for p in parts)


class S2RLabeler(Protocol):
    """Pluggable sentence labeler; output length equals sentence count."""

    name: str

    def label(self, paragraph: Paragraph) -> list[SentenceLabel]: ...


def _strip_markers(tokens: list[Token]) -> tuple[list[Token], bool]:
    """Drop leading continuation markers/politeness; report whether any marker was seen."""
    had_marker = False
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok.pos == lexicon.OTHER and not tok.surface.isalnum():
            i += 1
            continue
        if tok.lemma in _STRIPPABLE:
            if tok.lemma in CONTINUATION_MARKERS:
                had_marker = True
            i += 1
            continue
        if tok.lemma in ("this", "that") and had_marker:
            i += 1  # "after that", "then this" style remnants
            continue
        break
    return tokens[i:], had_marker


def _is_base_verb(token: Token) -> bool:
    if token.pos != lexicon.VERB:
        return False
    return token.surface.lower() in (token.lemma, token.lemma.replace("-", " "))


def _content(tokens: list[Token]) -> list[Token]:
    return [t for t in tokens if t.pos != lexicon.OTHER or t.surface.isalnum()]


def _clause_body(tokens: list[Token]) -> list[Token]:
    """Tokens up to the next comma/semicolon or conditional adverb."""
    out = []
    for tok in tokens:
        if tok.surface in (",", ";") or tok.lemma in CONDITIONAL_ADVERBS:
            break
        out.append(tok)
    return out


def _conditional_clause_start(tokens: list[Token]) -> int | None:
    """Index of a conditional adverb that opens a clause containing a verb."""
    for i, tok in enumerate(tokens):
        if tok.lemma in CONDITIONAL_ADVERBS:
            if any(t.pos == lexicon.VERB for t in _clause_body(tokens[i + 1 :])):
                return i
    return None


def _first_verb(tokens: list[Token]) -> Token | None:
    for tok in tokens:
        if tok.pos == lexicon.VERB:
            return tok
    return None


def _person_subject(tokens: list[Token]) -> int | None:
    """Index just past a person subject ("I", "you", "we", "the user"), if present."""
    if not tokens:
        return None
    if tokens[0].pos == lexicon.PRON and tokens[0].lemma in _PERSON_SUBJECTS:
        return 1
    if tokens[0].pos == lexicon.DET and len(tokens) > 1 and tokens[1].lemma == "user":
        return 2
    if tokens[0].lemma == "user":
        return 1
    return None


def classify_sentence(sentence: Sentence) -> str:
    """Assign the grammatical kind used to pick an extraction strategy."""
    tokens, _ = _strip_markers(_content(sentence.tokens))
    if not tokens:
        return "Other"
    if _conditional_clause_start(tokens) is not None:
        return "Conditional"
    if _is_base_verb(tokens[0]):
        return "Imperative"
    subj = _person_subject(tokens)
    if subj is not None and _first_verb(tokens[subj:]) is not None:
        return "Declarative"
    if _passive_pattern(tokens) is not None:
        return "Passive"
    return "Other"


def _passive_pattern(tokens: list[Token]) -> tuple[int, Token] | None:
    """Find agentless "X is <verb>ed": returns (index of be-token, participle)."""
    for i, tok in enumerate(tokens[:-1]):
        if tok.pos == lexicon.VERB and tok.lemma == "be":
            nxt = tokens[i + 1]
            if nxt.pos == lexicon.VERB and nxt.surface.lower() != nxt.lemma:
                after = tokens[i + 2 :]
                if not any(t.lemma == "by" for t in after):
                    return i, nxt
    return None


class DiscoursePatternLabeler:
    """Default labeler: discourse-pattern rules, no trained model."""

    name = "discourse-patterns"

    def label(self, paragraph: Paragraph) -> list[SentenceLabel]:
        labels: list[SentenceLabel] = []
        for sentence in paragraph.sentences:
            matched, marker = self._matches(sentence)
            if not matched:
                labels.append(SentenceLabel.O)
            elif marker and labels and labels[-1] != SentenceLabel.O:
                labels.append(SentenceLabel.I_S2R)
            else:
                labels.append(SentenceLabel.B_S2R)
        return labels

    def _matches(self, sentence: Sentence) -> tuple[bool, bool]:
        tokens, marker = _strip_markers(_content(sentence.tokens))
        if not tokens:
            return False, marker
        if _conditional_clause_start(tokens) is not None:
            return True, marker
        first_verb = _first_verb(tokens)
        if first_verb is not None and first_verb.lemma in OBEB_VERBS:
            return False, marker  # observed/expected-behavior pattern wins
        if _is_base_verb(tokens[0]):
            return True, marker
        subj = _person_subject(tokens)
        if subj is not None:
            verb = _first_verb(tokens[subj : subj + 3])
            if verb is not None and verb.lemma not in OBEB_VERBS:
                return True, marker
        if _passive_pattern(tokens) is not None:
            return True, marker
        return False, marker


class FileLabeler:
    """Labels read from a sidecar file: one of B/I/O per sentence, in order."""

    name = "file"

    def __init__(self, lines: list[str]):
        cleaned = [ln.strip().upper() for ln in lines if ln.strip()]
        bad = [ln for ln in cleaned if ln not in ("B", "I", "O")]
        if bad:
            raise LabelFileError(f"unknown labels in sidecar file: {bad}")
        self._labels = [SentenceLabel(ln) for ln in cleaned]
        self._cursor = 0

    @classmethod
    def from_path(cls, path) -> "FileLabeler":
        with open(path, encoding="utf-8") as fh:
            return cls(fh.readlines())

    def label(self, paragraph: Paragraph) -> list[SentenceLabel]:
        n = len(paragraph.sentences)
        if self._cursor + n > len(self._labels):
            raise LabelFileError("label file has fewer lines than the report has sentences")
        out = self._labels[self._cursor : self._cursor + n]
        self._cursor += n
        return out


def _repair_bio(labels: list[SentenceLabel]) -> list[SentenceLabel]:
    repaired = list(labels)
    for i, lab in enumerate(repaired):
        if lab == SentenceLabel.I_S2R and (i == 0 or repaired[i - 1] == SentenceLabel.O):
            repaired[i] = SentenceLabel.B_S2R
    return repaired


def label_sentences(report: BugReport, labeler: S2RLabeler | None = None) -> list[SentenceLabel]:
    """Label every sentence in the report, flat in textual order, BIO-repaired."""
    labeler = labeler or DiscoursePatternLabeler()
    out: list[SentenceLabel] = []
    for paragraph in report.paragraphs:
        labels = labeler.label(paragraph)
        if len(labels) != len(paragraph.sentences):
            raise LabelFileError(
                f"labeler {labeler.name!r} returned {len(labels)} labels "
                f"for {len(paragraph.sentences)} sentences"
            )
        out.extend(_repair_bio(labels))
    return out


_OBJECT_POS = {lexicon.NOUN, lexicon.ADJ, lexicon.NUM, lexicon.LITERAL,
               lexicon.ADV, lexicon.VERB, lexicon.PRON}


def _capture_tuple(tokens: list[Token], start: int, action: Token,
                   sentence_index: int, clause_index: int, after: bool) -> tuple[S2R, int]:
    """Collect object / preposition / object2 after the action verb.

    Returns the step and the index where scanning stopped.
    """
    obj: list[Token] = []
    obj2: list[Token] = []
    prep: Token | None = None
    bucket = obj
    i = start
    while i < len(tokens):
        tok = tokens[i]
        nxt = _next_content(tokens, i + 1)
        if (tok.lemma in ("and", "then", "next") or tok.surface in (",", ";")) and (
            nxt is not None and _is_base_verb(nxt)
        ):
            break  # conjoined step follows
        if tok.surface in (",", ";"):
            break
        if tok.pos == lexicon.OTHER:
            i += 1
            if tok.surface.isalnum():
                break  # conjunction-like word ends the phrase
            continue
        if tok.pos == lexicon.ADP:
            if bucket is obj and prep is None:
                prep = tok
                bucket = obj2
                i += 1
                continue
            break
        if tok.pos == lexicon.DET:
            i += 1
            continue
        if tok.pos in _OBJECT_POS:
            bucket.append(tok)
        i += 1
    step = S2R(action=action.lemma, object=obj, preposition=prep, object2=obj2,
               sentence_index=sentence_index, clause_index=clause_index, after_clause=after)
    return step, i


def _next_content(tokens: list[Token], i: int) -> Token | None:
    for tok in tokens[i:]:
        if tok.pos != lexicon.OTHER or tok.surface.isalnum():
            return tok
    return None


def _extract_clause(tokens: list[Token], sentence_index: int, clause_index: int,
                    after: bool, conditional: bool) -> list[S2R]:
    tokens, _ = _strip_markers(tokens)
    if not tokens:
        return []

    action_idx: int | None = None
    obj_prefix: list[Token] = []

    passive = _passive_pattern(tokens)
    subj = _person_subject(tokens)
    if tokens and _is_base_verb(tokens[0]):
        action_idx = 0
    elif subj is not None:
        verb = _first_verb(tokens[subj : subj + 3])
        if verb is not None:
            action_idx = tokens.index(verb)
    elif passive is not None:
        be_idx, participle = passive
        obj_prefix = [t for t in tokens[:be_idx] if t.pos in _OBJECT_POS and t.pos != lexicon.VERB]
        step = S2R(action=participle.lemma, object=obj_prefix, preposition=None, object2=[],
                   sentence_index=sentence_index, clause_index=clause_index, after_clause=after)
        return [step]
    elif conditional and tokens[0].pos == lexicon.VERB:
        action_idx = 0  # gerund clause: "when creating an entry"

    if action_idx is None:
        return []

    action = tokens[action_idx]
    if action.lemma in OBEB_VERBS:
        return []

    steps: list[S2R] = []
    i = action_idx
    while i < len(tokens):
        tok = tokens[i]
        if tok.pos == lexicon.VERB and (i == action_idx or _is_base_verb(tok)):
            step, i = _capture_tuple(tokens, i + 1, tok, sentence_index, clause_index, after)
            if tok.lemma not in OBEB_VERBS:
                steps.append(step)
            continue
        i += 1
    return steps


def _split_clauses(tokens: list[Token]) -> list[tuple[list[Token], bool, bool]]:
    """Split on conditional adverbs: (clause tokens, is_conditional, is_after)."""
    clauses: list[tuple[list[Token], bool, bool]] = []
    rest = tokens
    while rest:
        idx = _conditional_clause_start(rest)
        if idx is None:
            if _content(rest):
                clauses.append((rest, False, False))
            break
        if idx > 0 and _content(rest[:idx]):
            clauses.append((rest[:idx], False, False))
        adverb = rest[idx]
        body = rest[idx + 1 :]
        clause = _clause_body(body)
        clauses.append((clause, True, adverb.lemma == "after"))
        rest = body[len(clause) :]
        if rest and rest[0].surface in (",", ";"):
            rest = rest[1:]
    return clauses


def extract_s2rs(sentence: Sentence, sentence_index: int = 0) -> list[S2R]:
    """Extract the steps of one labeled sentence; empty when no verb is usable."""
    sentence.kind = classify_sentence(sentence)
    steps: list[S2R] = []
    for clause_index, (clause, conditional, after) in enumerate(_split_clauses(sentence.tokens)):
        steps.extend(_extract_clause(clause, sentence_index, clause_index, after, conditional))
    return steps


def order_s2rs(steps: list[S2R]) -> list[S2R]:
    """Order steps textually, except "do x after y" clauses, which come first."""
    def sort_key(pair: tuple[int, S2R]) -> tuple[int, float, int]:
        position, step = pair
        clause_order = float(step.clause_index)
        if step.after_clause and step.clause_index > 0:
            clause_order = step.clause_index - 1.5
        return (step.sentence_index, clause_order, position)

    ordered = [step for _, step in sorted(enumerate(steps), key=sort_key)]
    for i, step in enumerate(ordered):
        step.order_index = i
    return ordered


@dataclass
class ExtractionResult:
    s2rs: list[S2R]
    labels: list[SentenceLabel]
    dropped: list[dict] = field(default_factory=list)


def extract_report(report: BugReport, labeler: S2RLabeler | None = None) -> ExtractionResult:
    """Label, extract and order all steps of a report; failures are recorded."""
    labels = label_sentences(report, labeler)
    sentences = report.sentences()
    steps: list[S2R] = []
    dropped: list[dict] = []
    for index, (sentence, label) in enumerate(zip(sentences, labels)):
        if label == SentenceLabel.O:
            continue
        found = extract_s2rs(sentence, index)
        if not found:
            dropped.append({"sentenceIndex": index, "text": sentence.raw,
                            "reason": "no actionable verb found"})
            continue
        steps.extend(found)
    return ExtractionResult(s2rs=order_s2rs(steps), labels=labels, dropped=dropped)
