"""Readability and reading-time measures for policy text.

Reading time follows the 250 words-per-minute model; difficulty uses the
standard Flesch Reading Ease formula:

    FRE = 206.835 - 1.015 * (words / sentences) - 84.6 * (syllables / words)

Sentence and syllable counting are heuristic and pinned by tests; see
``syllable_count`` for the rules.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

WORDS_PER_MINUTE = 250

_WORD_CHARS = re.compile(r"[A-Za-z0-9À-ɏ]")
_SENTENCE_END = re.compile(r"[.!?]+(?=[\s\"')\]]|$)")
_VOWEL_GROUP = re.compile(r"[aeiouy]+")

# tokens whose trailing "." is an abbreviation, not a sentence boundary
_ABBREVIATIONS = {
    "mr", "mrs", "ms", "dr", "prof", "rev", "hon", "st", "jr", "sr",
    "vs", "etc", "e.g", "i.e", "cf", "al", "inc", "ltd", "co", "corp",
    "no", "u.s", "u.k", "approx",
}

# irregular words the vowel-group heuristic gets wrong
_SYLLABLE_EXCEPTIONS = {
    "business": 2,
    "businesses": 3,
    "cookie": 2,
    "cookies": 2,
    "every": 3,
    "everyone": 3,
    "evening": 3,
    "interesting": 4,
    "people": 2,
    "science": 2,
    "area": 3,
    "idea": 3,
    "being": 2,
    "doing": 2,
    "going": 2,
    "quiet": 2,
    "create": 2,
    "created": 3,
    "really": 3,
}

# small function-word set for the English-likeness check
_STOP_WORDS = frozenset(
    "the a an and or of to in on at is are was were be been it its this "
    "that these those we you your our they their for with as by from not "
    "no if when which who whom will would may might can could shall "
    "should have has had do does did but so than then there here".split()
)
_MIN_WORDS_FOR_LANGUAGE_CHECK = 20
_STOP_RATIO_THRESHOLD = 0.10


@dataclass(frozen=True)
class ReadabilityScore:
    fre: float
    words: int
    sentences: int
    syllables: int
    fre_unreliable: bool = False


@dataclass(frozen=True)
class ReadingTime:
    """Reading time in exact minutes (words / 250)."""

    minutes: Fraction

    @property
    def as_float(self) -> float:
        return float(self.minutes)

    def rounded(self, ndigits: int = 1) -> float:
        return round(float(self.minutes), ndigits)


def _tokens(text: str) -> list[str]:
    out = []
    for raw in text.split():
        token = raw.strip("\"'.,;:!?()[]{}<>«»“”‘’…–—")
        if token and _WORD_CHARS.search(token):
            out.append(token)
    return out


def count_words(text: str) -> int:
    """Whitespace-delimited tokens after punctuation stripping.

    Hyphenated tokens count as one word.
    """
    return len(_tokens(text))


def count_sentences(text: str) -> int:
    """Sentence boundaries on ., !, ? with an abbreviation exception list."""
    text = text.strip()
    if not text:
        return 0
    count = 0
    last_end = 0
    for match in _SENTENCE_END.finditer(text):
        if match.group().startswith("."):
            preceding = text[last_end:match.start()].split()
            if preceding:
                prev = preceding[-1].lower().strip("(\"'“”‘’")
                if prev in _ABBREVIATIONS or prev.rstrip(".") in _ABBREVIATIONS:
                    continue
        count += 1
        last_end = match.end()
    if text[last_end:].strip():
        count += 1  # trailing sentence without terminal punctuation
    return max(count, 1)


def syllable_count(word: str) -> int:
    """Heuristic syllable count for one word.

    Rules: count maximal vowel groups (a, e, i, o, u, y); a final "e" is
    silent unless part of a consonant-"le" ending; "ed"/"es" endings are
    silent unless pronunciation requires them (wanted, boxes, tables);
    irregulars come from a small exception dictionary. Minimum one.
    """
    cleaned = re.sub(r"[^a-z]", "", word.lower())
    if not cleaned:
        return 1
    if cleaned in _SYLLABLE_EXCEPTIONS:
        return _SYLLABLE_EXCEPTIONS[cleaned]
    groups = len(_VOWEL_GROUP.findall(cleaned))
    if groups <= 1:
        return max(groups, 1)
    if cleaned.endswith("e"):
        if not _keeps_final_e(cleaned):
            groups -= 1
    elif cleaned.endswith("es") and not _pronounced_es(cleaned):
        groups -= 1
    elif cleaned.endswith("ed") and not _pronounced_ed(cleaned):
        groups -= 1
    return max(groups, 1)


def _keeps_final_e(word: str) -> bool:
    # consonant + "le" endings are pronounced: ta-ble, can-dle
    return len(word) >= 3 and word.endswith("le") and word[-3] not in "aeiouy"


def _pronounced_es(word: str) -> bool:
    stem = word[:-2]
    if not stem:
        return True
    if stem.endswith(("ch", "sh")):
        return True
    if stem[-1] in "scxzg":
        return True  # houses, places, boxes, judges
    if stem[-1] == "l" and len(stem) >= 2 and stem[-2] not in "aeiouy":
        return True  # tables, candles
    return False


def _pronounced_ed(word: str) -> bool:
    stem = word[:-2]
    return bool(stem) and stem[-1] in "td"  # wanted, needed


def count_syllables(text: str) -> int:
    return sum(syllable_count(token) for token in _tokens(text))


def _stop_word_ratio(tokens: list[str]) -> float:
    if not tokens:
        return 0.0
    hits = sum(1 for t in tokens if t.lower().strip("-'") in _STOP_WORDS)
    return hits / len(tokens)


def flesch_reading_ease(text: str) -> ReadabilityScore:
    """Flesch Reading Ease over the module's own tokenization.

    Raises ValueError on text without any words (score undefined).
    Non-English text still gets a value but is flagged unreliable via a
    stop-word ratio test, since the formula is calibrated for English.
    """
    tokens = _tokens(text)
    if not tokens:
        raise ValueError("Flesch Reading Ease is undefined for empty text")
    words = len(tokens)
    sentences = count_sentences(text)
    syllables = sum(syllable_count(t) for t in tokens)
    # exact ratio arithmetic keeps the score invariant under repetition
    fre = float(
        Fraction("206.835")
        - Fraction("1.015") * Fraction(words, sentences)
        - Fraction("84.6") * Fraction(syllables, words)
    )
    unreliable = (
        words >= _MIN_WORDS_FOR_LANGUAGE_CHECK
        and _stop_word_ratio(tokens) < _STOP_RATIO_THRESHOLD
    )
    return ReadabilityScore(fre, words, sentences, syllables, unreliable)


def reading_time(words: int) -> ReadingTime:
    """Minutes to read `words` at 250 words per minute, unrounded."""
    if words < 0:
        raise ValueError("word count must be non-negative")
    return ReadingTime(Fraction(words, WORDS_PER_MINUTE))


def total_policy_time(fp_words: int, tp_words: list[int]) -> ReadingTime:
    """Minutes to read a site's policy plus all its third-party policies."""
    if fp_words < 0 or any(w < 0 for w in tp_words):
        raise ValueError("word counts must be non-negative")
    return ReadingTime(Fraction(fp_words + sum(tp_words), WORDS_PER_MINUTE))
