"""Public Suffix List parsing and first-/third-party classification.

A request is third-party when its registrable domain (public suffix plus
one label) differs from the page's. Sub-domains therefore never count as
third parties, while country-style suffixes such as "co.uk" are handled
via the PSL rules instead of naive label counting.
"""

from __future__ import annotations

import ipaddress
import re
from dataclasses import dataclass
from urllib.parse import urlsplit

ICANN_BEGIN = "// ===BEGIN ICANN DOMAINS==="
PRIVATE_BEGIN = "// ===BEGIN PRIVATE DOMAINS==="

# request classifications
FIRST_PARTY = "first_party"
THIRD_PARTY = "third_party"
NON_NETWORK = "non_network"

_LABEL_RE = re.compile(r"^[a-z0-9_](?:[a-z0-9_-]*[a-z0-9_])?$")


class PslParseError(ValueError):
    """Raised for a malformed suffix list, naming the offending line."""

    def __init__(self, line_no: int, line: str, reason: str):
        super().__init__(f"line {line_no}: {reason}: {line!r}")
        self.line_no = line_no


@dataclass(frozen=True)
class SuffixRule:
    labels: tuple[str, ...]
    is_wildcard: bool = False
    is_exception: bool = False
    is_private: bool = False


class SuffixRuleSet:
    """Immutable set of suffix rules with O(host labels) lookup."""

    def __init__(self, rules: list[SuffixRule]):
        self.rules = tuple(rules)
        self._exact: set[tuple[str, ...]] = set()
        self._wildcard: set[tuple[str, ...]] = set()  # labels after the "*"
        self._exception: set[tuple[str, ...]] = set()
        for rule in rules:
            if rule.is_exception:
                self._exception.add(rule.labels)
            elif rule.is_wildcard:
                self._wildcard.add(rule.labels[1:])
            else:
                self._exact.add(rule.labels)

    def __len__(self) -> int:
        return len(self.rules)

    def suffix_label_count(self, labels: tuple[str, ...]) -> int:
        """Number of trailing labels forming the public suffix.

        Implements the canonical PSL algorithm: exception rules prevail,
        otherwise the longest matching rule, otherwise the implicit "*".
        """
        n = len(labels)
        best = 1  # implicit "*" rule: the rightmost label
        for k in range(1, n + 1):
            window = labels[n - k:]
            if window in self._exception:
                # exception rule: public suffix is the rule minus its
                # leftmost label
                return k - 1
            if window in self._exact:
                best = max(best, k)
            if k >= 2 and window[1:] in self._wildcard:
                best = max(best, k)
        return best


def parse_suffix_list(text: str, include_private: bool = True) -> SuffixRuleSet:
    """Parse PSL-format text into a rule set.

    Comment ("//") and blank lines are ignored; rules are lowercased and
    IDN labels normalized to their punycode form. ``include_private=False``
    drops everything after the private-domains marker.
    """
    rules: list[SuffixRule] = []
    seen: set[tuple[str, ...]] = set()
    wildcard_scopes: set[tuple[str, ...]] = set()
    exceptions: list[tuple[int, str, SuffixRule]] = []
    in_private = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("//"):
            if line.startswith(PRIVATE_BEGIN):
                in_private = True
            continue
        if in_private and not include_private:
            continue
        if any(ch.isspace() for ch in line):
            raise PslParseError(line_no, raw, "whitespace inside rule")
        rule_text = line.lower()

        is_exception = rule_text.startswith("!")
        if is_exception:
            rule_text = rule_text[1:]
        if not rule_text or rule_text.startswith(".") or rule_text.endswith("."):
            raise PslParseError(line_no, raw, "empty or dot-delimited rule")

        labels = []
        for label in rule_text.split("."):
            if label == "*":
                labels.append(label)
                continue
            label = _to_ascii_label(label)
            if label is None or not _LABEL_RE.match(label):
                raise PslParseError(line_no, raw, "non-domain characters")
            labels.append(label)
        labels = tuple(labels)

        is_wildcard = "*" in labels
        if is_wildcard and (is_exception or labels[0] != "*" or "*" in labels[1:]):
            raise PslParseError(line_no, raw, "unsupported wildcard placement")
        if labels in seen:
            raise PslParseError(line_no, raw, "duplicate rule")
        seen.add(labels)

        rule = SuffixRule(labels, is_wildcard, is_exception, in_private)
        if is_wildcard:
            wildcard_scopes.add(labels[1:])
        if is_exception:
            exceptions.append((line_no, raw, rule))
        rules.append(rule)

    for line_no, raw, rule in exceptions:
        if rule.labels[1:] not in wildcard_scopes:
            raise PslParseError(line_no, raw, "exception without a wildcard rule")
    return SuffixRuleSet(rules)


def load_suffix_list(path, include_private: bool = True) -> SuffixRuleSet:
    with open(path, encoding="utf-8") as fh:
        return parse_suffix_list(fh.read(), include_private=include_private)


def _to_ascii_label(label: str) -> str | None:
    """Lowercase a label and convert IDN labels to punycode."""
    label = label.lower()
    if label.isascii():
        return label
    try:
        return label.encode("idna").decode("ascii")
    except UnicodeError:
        return None


def _host_labels(hostname: str) -> tuple[tuple[str, ...], tuple[str, ...]] | None:
    """Split a hostname into (original, ascii) label tuples, or None if invalid."""
    hostname = hostname.strip().lower().rstrip(".")
    if not hostname:
        return None
    original = tuple(hostname.split("."))
    ascii_labels = []
    for label in original:
        if not label:
            return None  # leading dot or empty label
        ascii_label = _to_ascii_label(label)
        if ascii_label is None or not _LABEL_RE.match(ascii_label):
            return None
        ascii_labels.append(ascii_label)
    return original, tuple(ascii_labels)


def _is_ip_literal(hostname: str) -> bool:
    try:
        ipaddress.ip_address(hostname.strip("[]"))
        return True
    except ValueError:
        return False


def registrable_domain(hostname: str, rules: SuffixRuleSet) -> str | None:
    """Public suffix plus one label, or None.

    None when the hostname *is* a public suffix, is an IP literal, or is
    not a valid hostname. Matching happens on punycode labels; the result
    preserves the input's label form (lowercased).
    """
    if not hostname:
        return None
    if _is_ip_literal(hostname):
        return None
    split = _host_labels(hostname)
    if split is None:
        return None
    original, ascii_labels = split
    suffix_len = rules.suffix_label_count(ascii_labels)
    if suffix_len >= len(original):
        return None
    return ".".join(original[-(suffix_len + 1):])


def classify_request(page_url: str, request_url: str, rules: SuffixRuleSet) -> str:
    """Classify a request as first-party, third-party, or non-network.

    Requests without a host (data: URIs and friends) are non-network.
    Hosts without a registrable domain (IP literals, bare public
    suffixes) fall back to exact host comparison.
    """
    request_host = _url_host(request_url)
    if not request_host:
        return NON_NETWORK
    page_host = _url_host(page_url)
    if not page_host:
        return NON_NETWORK
    page_domain = registrable_domain(page_host, rules)
    request_domain = registrable_domain(request_host, rules)
    if page_domain is None or request_domain is None:
        same = page_host.lower().rstrip(".") == request_host.lower().rstrip(".")
        return FIRST_PARTY if same else THIRD_PARTY
    return FIRST_PARTY if page_domain == request_domain else THIRD_PARTY


def is_third_party(page_url: str, request_url: str, rules: SuffixRuleSet) -> bool:
    """True iff the registrable domains of page and request differ."""
    return classify_request(page_url, request_url, rules) == THIRD_PARTY


def _url_host(url: str) -> str | None:
    try:
        return urlsplit(url).hostname
    except ValueError:
        return None
