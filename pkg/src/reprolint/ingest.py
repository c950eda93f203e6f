"""Bug-report ingestion: paragraph/sentence segmentation and tokenization.

Segmentation is deterministic and list-aware: blank lines split paragraphs,
list items ("1.", "-", "*") become their own paragraphs, and sentences split
on terminal punctuation outside quotes. Tokens carry a lowercase lemma and a
coarse part-of-speech tag from the shipped lexicon, with suffix-stripping
rules as fallback.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import lexicon
from .errors import EmptyReportError

SENTENCE_KINDS = ("Imperative", "Conditional", "Declarative", "Passive", "Other")

_LIST_MARKER = re.compile(r"^\s*(?:\d{1,3}[.)]|[-*•])\s+")
_TOKEN = re.compile(
    r"(?P<quoted>(?<![\w])(?:'[^']+'|\"[^\"]+\"|`[^`]+`)(?![\w]))"
    r"|(?P<number>\d+(?:[.,]\d+)*)"
    r"|(?P<word>[A-Za-z](?:[A-Za-z'-]*[A-Za-z])?)"
    r"|(?P<punct>\S)"
)
_TERMINAL = ".!?"
_QUOTES = "'\"`"


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    pos: str
    span: tuple[int, int]  # character offsets within the sentence raw text


@dataclass
class Sentence:
    raw: str
    tokens: list[Token]
    span: tuple[int, int]  # character offsets within the report body
    kind: str = "Other"  # assigned later by the extraction stage

    def content_tokens(self) -> list[Token]:
        """Tokens that are not bare punctuation."""
        return [t for t in self.tokens if t.pos != lexicon.OTHER or t.surface.isalnum()]


@dataclass
class Paragraph:
    sentences: list[Sentence]
    span: tuple[int, int]


@dataclass
class BugReport:
    id: str
    title: str
    body: str
    paragraphs: list[Paragraph] = field(default_factory=list)

    def sentences(self) -> list[Sentence]:
        return [s for p in self.paragraphs for s in p.sentences]

    def to_text(self) -> str:
        """Render back to plain text: one paragraph per blank-line block."""
        return "\n\n".join(" ".join(s.raw for s in p.sentences) for p in self.paragraphs)


def _is_quote_open(text: str, i: int) -> bool:
    before_ok = i == 0 or not (text[i - 1].isalnum() or text[i - 1] == "_")
    after_ok = i + 1 < len(text) and not text[i + 1].isspace()
    return before_ok and after_ok


def _split_sentences(text: str, base: int) -> list[tuple[str, int, int]]:
    """Split one line of text into sentences, ignoring terminators in quotes.

    Returns (raw, absolute_start, absolute_end) triples.
    """
    out: list[tuple[str, int, int]] = []
    start = 0
    quote: str | None = None
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if quote is not None:
            if ch == quote:
                quote = None
        elif ch in _QUOTES:
            if _is_quote_open(text, i):
                quote = ch
        elif ch in _TERMINAL:
            j = i
            while j + 1 < n and text[j + 1] in _TERMINAL:
                j += 1
            rest = text[j + 1 :]
            stripped = rest.lstrip()
            if not stripped or (rest[:1].isspace() and (stripped[0].isupper() or stripped[0].isdigit())):
                piece = text[start : j + 1]
                if piece.strip():
                    lead = len(piece) - len(piece.lstrip())
                    trail = len(piece) - len(piece.rstrip())
                    out.append((piece.strip(), base + start + lead, base + j + 1 - trail))
                start = j + 1
                i = j
        i += 1
    piece = text[start:]
    if piece.strip():
        lead = len(piece) - len(piece.lstrip())
        trail = len(piece) - len(piece.rstrip())
        out.append((piece.strip(), base + start + lead, base + len(text) - trail))
    return out


def parse_report(raw: str, report_id: str = "", title: str = "") -> BugReport:
    """Parse free-form bug-report text into paragraphs, sentences and tokens."""
    if not raw or not raw.strip():
        raise EmptyReportError("bug report text is empty")

    report = BugReport(id=report_id, title=title, body=raw)
    pending: list[Sentence] = []
    pending_start: int | None = None

    def flush(end: int) -> None:
        nonlocal pending, pending_start
        if pending:
            start = pending_start if pending_start is not None else pending[0].span[0]
            report.paragraphs.append(Paragraph(sentences=pending, span=(start, end)))
        pending = []
        pending_start = None

    offset = 0
    last_end = 0
    for line in raw.splitlines(keepends=True):
        content = line.rstrip("\n").rstrip("\r")
        line_start = offset
        offset += len(line)
        if not content.strip():
            flush(last_end)
            continue
        marker = _LIST_MARKER.match(content)
        if marker:
            flush(last_end)
            item = content[marker.end() :]
            sents = [
                Sentence(raw=s, tokens=tokenize(s), span=(a, b))
                for s, a, b in _split_sentences(item, line_start + marker.end())
            ]
            if sents:
                report.paragraphs.append(Paragraph(sentences=sents, span=(line_start, line_start + len(content))))
                last_end = line_start + len(content)
            continue
        sents = [
            Sentence(raw=s, tokens=tokenize(s), span=(a, b))
            for s, a, b in _split_sentences(content, line_start)
        ]
        if sents:
            if pending_start is None:
                pending_start = line_start
            pending.extend(sents)
            last_end = line_start + len(content)
    flush(last_end)

    if not report.paragraphs:
        raise EmptyReportError("bug report text contains no sentences")
    return report


_SUFFIX_RULES = (("ies", "y"), ("sses", "ss"), ("shes", "sh"), ("ches", "ch"),
                 ("xes", "x"), ("zes", "z"), ("ing", ""), ("ed", ""), ("es", ""), ("s", ""))


def _strip_suffix(word: str) -> str:
    """Rule fallback for words outside the lexicon, with doubling repair."""
    for suffix, repl in _SUFFIX_RULES:
        if word.endswith(suffix) and len(word) - len(suffix) >= 2:
            stem = word[: len(word) - len(suffix)] + repl
            if suffix in ("ing", "ed"):
                if len(stem) >= 3 and stem[-1] == stem[-2] and stem[-1] not in "aeiouls":
                    stem = stem[:-1]
                elif lexicon.verb_lemma(stem + "e"):
                    stem = stem + "e"
            return stem
    return word


def _resolve_ambiguous(word: str, prev_pos: str | None) -> tuple[str, str]:
    """Pick the verb or noun reading of an ambiguous word by position."""
    noun_like_prev = (lexicon.DET, lexicon.ADJ, lexicon.NUM, lexicon.ADP,
                      lexicon.NOUN, lexicon.VERB, lexicon.LITERAL)
    if prev_pos in noun_like_prev:
        return word, lexicon.NOUN
    return lexicon.verb_lemma(word) or word, lexicon.VERB


def tokenize(sentence_text: str) -> list[Token]:
    """Tokenize one sentence; quoted spans and numerals become LITERAL tokens."""
    tokens: list[Token] = []
    prev_pos: str | None = None
    for m in _TOKEN.finditer(sentence_text):
        surface = m.group(0)
        span = (m.start(), m.end())
        if m.lastgroup == "quoted":
            lemma = surface[1:-1].strip().lower()
            pos = lexicon.LITERAL
        elif m.lastgroup == "number":
            lemma = surface
            pos = lexicon.LITERAL
        elif m.lastgroup == "word":
            word = surface.lower()
            if lexicon.is_ambiguous(word):
                lemma, pos = _resolve_ambiguous(word, prev_pos)
            else:
                hit = lexicon.lookup(word)
                if hit:
                    lemma, pos = hit
                elif word.endswith("ly"):
                    lemma, pos = word, lexicon.ADV
                else:
                    stem = _strip_suffix(word)
                    base = lexicon.verb_lemma(stem)
                    if base and word != stem:
                        lemma, pos = base, lexicon.VERB
                    elif lexicon.lookup(stem):
                        lemma, pos = lexicon.lookup(stem)  # type: ignore[misc]
                    else:
                        lemma, pos = stem, lexicon.NOUN
        else:
            lemma, pos = surface.lower(), lexicon.OTHER
        tokens.append(Token(surface=surface, lemma=lemma, pos=pos, span=span))
        prev_pos = pos
    return _merge_long_gestures(tokens, sentence_text)


_LONG_GESTURES = {"press", "tap", "click", "touch"}


def _merge_long_gestures(tokens: list[Token], raw: str) -> list[Token]:
    """Fold "long press"-style pairs into one verb token (lemma "long-press")."""
    out: list[Token] = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        nxt = tokens[i + 1] if i + 1 < len(tokens) else None
        if (
            tok.lemma == "long"
            and nxt is not None
            and nxt.surface.lower() in _LONG_GESTURES
            and not raw[tok.span[1] : nxt.span[0]].strip()
        ):
            span = (tok.span[0], nxt.span[1])
            out.append(Token(surface=raw[span[0] : span[1]],
                             lemma=f"long-{nxt.surface.lower()}",
                             pos=lexicon.VERB, span=span))
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def lemmas(text: str) -> list[str]:
    """Lemma sequence of a free-text phrase, punctuation dropped.

    Used wherever label/description/query text is compared for similarity.
    """
    return [t.lemma for t in tokenize(text) if t.pos != lexicon.OTHER or t.surface.isalnum()]
