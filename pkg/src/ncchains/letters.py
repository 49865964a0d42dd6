"""Canonical ordering and printing for opaque letters.

Letters throughout the package are strings, integers or (nested) tuples of
those, e.g. ``"a"`` or ``("t", (1, 0, 1))``.  Python refuses to compare a
string with a tuple, so every sort goes through :func:`letter_key`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence


def letter_key(x: Any) -> tuple:
    if isinstance(x, (bool, int, Fraction)):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, (tuple, list)):
        return (2, tuple(letter_key(v) for v in x))
    if isinstance(x, frozenset):
        return (3, tuple(sorted(letter_key(v) for v in x)))
    return (4, repr(x))


def word_key(word: Sequence) -> tuple:
    """Shortlex order: length first, then letter by letter."""
    return (len(word), tuple(letter_key(a) for a in word))


def letter_str(x: Any) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (tuple, list)):
        if x and isinstance(x[0], str) and len(x) > 1:
            return x[0] + "[" + ",".join(letter_str(v) for v in x[1:]) + "]"
        return "(" + ",".join(letter_str(v) for v in x) + ")"
    return str(x)


def word_str(word: Sequence) -> str:
    if all(isinstance(a, str) and len(a) == 1 for a in word):
        return "".join(word) or "()"
    return " ".join(letter_str(a) for a in word) or "()"


def detuple(x: Any) -> Any:
    """Invert the list-for-tuple substitution made by JSON serialization."""
    if isinstance(x, list):
        return tuple(detuple(v) for v in x)
    return x
