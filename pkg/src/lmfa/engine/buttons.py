"""Controller buttons and chords.

The pad has exactly eight buttons. A chord is the set of buttons held on
one frame; conflicting directions (Left+Right, Up+Down) cancel each other
at engine ingestion so every downstream rule sees a consistent input.
"""

from __future__ import annotations

import enum
from typing import FrozenSet, Iterable


class Button(enum.Enum):
    UP = "U"
    DOWN = "D"
    LEFT = "L"
    RIGHT = "R"
    A = "A"
    B = "B"
    C = "C"
    START = "S"


Chord = FrozenSet[Button]

EMPTY_CHORD: Chord = frozenset()

# Canonical encoding order for traces/logs.
_CODE_ORDER = "UDLRABCS"
_BY_CODE = {b.value: b for b in Button}


def chord(*buttons: Button) -> Chord:
    return frozenset(buttons)


def normalize_chord(c: Iterable[Button]) -> Chord:
    """Cancel conflicting direction pairs (horizontal and vertical axes)."""
    s = set(c)
    if Button.LEFT in s and Button.RIGHT in s:
        s.discard(Button.LEFT)
        s.discard(Button.RIGHT)
    if Button.UP in s and Button.DOWN in s:
        s.discard(Button.UP)
        s.discard(Button.DOWN)
    return frozenset(s)


def encode_chord(c: Chord) -> str:
    """Canonical compact string, fixed button order; empty chord is ''."""
    return "".join(code for code in _CODE_ORDER if _BY_CODE[code] in c)


def decode_chord(text: str) -> Chord:
    try:
        return frozenset(_BY_CODE[ch] for ch in text)
    except KeyError as exc:
        raise ValueError(f"unknown button code in chord {text!r}") from exc


def mirror_chord(c: Chord) -> Chord:
    """Swap Left and Right; used by mirror-image runs."""
    out = set(c)
    if Button.LEFT in out or Button.RIGHT in out:
        has_left = Button.LEFT in out
        has_right = Button.RIGHT in out
        out.discard(Button.LEFT)
        out.discard(Button.RIGHT)
        if has_left:
            out.add(Button.RIGHT)
        if has_right:
            out.add(Button.LEFT)
    return frozenset(out)
