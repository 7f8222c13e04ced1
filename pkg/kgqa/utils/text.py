import re
import unicodedata
from dataclasses import dataclass
from typing import List

# only these are split off token edges; hyphens, digits and '<' '>' stay inside
EDGE_PUNCTUATION = frozenset(".,?!;:()[]\"'")

_CHUNK = re.compile(r"\S+")


@dataclass(frozen=True)
class Token:
    text: str
    start: int
    end: int

    def __post_init__(self):
        if not self.text or not 0 <= self.start < self.end:
            raise ValueError(f"Invalid token {self.text!r} at {self.start}:{self.end}")


def tokenize(source: str) -> List[Token]:
    """Split on whitespace, then detach edge punctuation as one-character tokens.

    Offsets are exact: source[token.start:token.end] == token.text.
    """
    tokens: List[Token] = []
    for match in _CHUNK.finditer(source):
        chunk, offset = match.group(), match.start()
        left, right = 0, len(chunk)
        while left < right and chunk[left] in EDGE_PUNCTUATION:
            left += 1
        while right > left and chunk[right - 1] in EDGE_PUNCTUATION:
            right -= 1

        for i in range(left):
            tokens.append(Token(chunk[i], offset + i, offset + i + 1))
        if left < right:
            tokens.append(Token(chunk[left:right], offset + left, offset + right))
        for i in range(right, len(chunk)):
            tokens.append(Token(chunk[i], offset + i, offset + i + 1))
    return tokens


def normalize(token_text: str) -> str:
    return unicodedata.normalize("NFC", token_text).lower()


def tokenize_words(source: str) -> List[str]:
    """Token texts of `source`; shorthand used by the matcher and the metrics."""
    return [token.text for token in tokenize(source)]
