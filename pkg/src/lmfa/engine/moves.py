"""Move table and special-move trigger matching.

The table lives in move_table.json (shipped with the package) so tests,
docs, and the engine share one source of truth. Triggers are written in
facing-relative tokens; the matcher translates a fighter's recent button
presses into that space before comparing.

Trigger semantics:
  * A chord trigger fires when every trigger button is held this frame and
    at least one of them was freshly pressed this frame.
  * A sequence trigger additionally requires earlier steps to match fresh
    press events at strictly increasing frames, with at most
    ``gap_window_frames`` between consecutive steps.

Table order is priority order: first match wins.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from importlib import resources
from typing import FrozenSet, Optional, Sequence, Tuple

from lmfa.engine.buttons import Button, Chord


class MoveKind(enum.Enum):
    HIGH = "high"
    LOW = "low"
    AERIAL = "aerial"
    PROJECTILE = "projectile"
    THROW_RANGE = "throw-range"


class TriggerToken(enum.Enum):
    UP = "Up"
    DOWN = "Down"
    LEFT = "Left"
    RIGHT = "Right"
    FORWARD = "Forward"
    BACK = "Back"
    A = "A"
    B = "B"
    C = "C"


TokenSet = FrozenSet[TriggerToken]


@dataclass(frozen=True)
class MoveDef:
    """One entry of the move table; constants are the documented stand-ins."""

    id: str
    trigger: Tuple[TokenSet, ...]
    startup: int
    active: int
    recovery: int
    damage: int
    reach: int
    kind: MoveKind
    knockback: int
    knockdown: bool
    advance_per_active_frame: int = 0
    projectile_speed: int = 0
    projectile_spawn_offset: int = 0
    projectile_hit_radius: int = 0
    projectile_clear_height: int = 0

    @property
    def total_frames(self) -> int:
        return self.startup + self.active + self.recovery

    def is_active_frame(self, t: int) -> bool:
        return self.startup <= t < self.startup + self.active

    def __post_init__(self) -> None:
        if self.startup < 1 or self.active < 1 or self.recovery < 0:
            raise ValueError(f"move {self.id}: bad frame data")
        if self.damage < 0:
            raise ValueError(f"move {self.id}: negative damage")
        if not 1 <= len(self.trigger) <= 3:
            raise ValueError(f"move {self.id}: trigger must have 1-3 steps")


def _parse_move(raw: dict) -> MoveDef:
    return MoveDef(
        id=raw["id"],
        trigger=tuple(
            frozenset(TriggerToken(tok) for tok in step) for step in raw["trigger"]
        ),
        startup=raw["startup"],
        active=raw["active"],
        recovery=raw["recovery"],
        damage=raw["damage"],
        reach=raw["reach"],
        kind=MoveKind(raw["kind"]),
        knockback=raw["knockback"],
        knockdown=raw["knockdown"],
        advance_per_active_frame=raw.get("advance_per_active_frame", 0),
        projectile_speed=raw.get("projectile_speed", 0),
        projectile_spawn_offset=raw.get("projectile_spawn_offset", 0),
        projectile_hit_radius=raw.get("projectile_hit_radius", 0),
        projectile_clear_height=raw.get("projectile_clear_height", 0),
    )


def _load_table() -> Tuple[Tuple[MoveDef, ...], int]:
    data = json.loads(
        resources.files("lmfa.engine").joinpath("move_table.json").read_text()
    )
    if data.get("schema") != "lmfa-moves/1":
        raise ValueError("unsupported move table schema")
    return tuple(_parse_move(m) for m in data["moves"]), data["gap_window_frames"]


MOVE_TABLE, GAP_WINDOW_FRAMES = _load_table()
MOVES_BY_ID = {m.id: m for m in MOVE_TABLE}


_ABSOLUTE_TOKENS = {
    Button.UP: TriggerToken.UP,
    Button.DOWN: TriggerToken.DOWN,
    Button.A: TriggerToken.A,
    Button.B: TriggerToken.B,
    Button.C: TriggerToken.C,
}


def chord_tokens(c: Chord, facing_sign: int) -> TokenSet:
    """Translate held buttons into facing-relative trigger tokens.

    Left/Right become Forward/Back depending on which way the fighter
    faces; all other buttons map one-to-one (Start has no token).
    """
    out = set()
    for b in c:
        tok = _ABSOLUTE_TOKENS.get(b)
        if tok is not None:
            out.add(tok)
        elif b is Button.RIGHT:
            out.add(TriggerToken.FORWARD if facing_sign > 0 else TriggerToken.BACK)
        elif b is Button.LEFT:
            out.add(TriggerToken.BACK if facing_sign > 0 else TriggerToken.FORWARD)
    return frozenset(out)


PressEvent = Tuple[int, Chord]  # (frame, freshly pressed buttons)


def match_trigger(
    move: MoveDef,
    presses: Sequence[PressEvent],
    now: int,
    facing_sign: int,
    held: Chord,
    fresh: Chord,
) -> bool:
    """True when the move's trigger completes on the current frame.

    ``presses`` is the fighter's fresh-press history, ascending by frame
    and including the current frame's event if any.
    """
    last = move.trigger[-1]
    held_tokens = chord_tokens(held, facing_sign)
    fresh_tokens = chord_tokens(fresh, facing_sign)
    if not (last <= held_tokens and last & fresh_tokens):
        return False
    # Earlier steps: backwards-greedy over press events, strictly older frames.
    t = now
    for step in reversed(move.trigger[:-1]):
        matched: Optional[int] = None
        for frame, pressed in reversed(presses):
            if frame >= t:
                continue
            if t - frame > GAP_WINDOW_FRAMES:
                break
            if step <= chord_tokens(pressed, facing_sign):
                matched = frame
                break
        if matched is None:
            return False
        t = matched
    return True


def first_triggered_move(
    presses: Sequence[PressEvent],
    now: int,
    facing_sign: int,
    held: Chord,
    fresh: Chord,
    fireball_available: bool,
) -> Optional[MoveDef]:
    """Scan the table in priority order; honors the one-projectile rule.

    A fireball trigger whose owner already has a live projectile is
    skipped, letting lower-priority triggers (the bare punch) claim the
    press instead.
    """
    if not fresh:
        return None
    for move in MOVE_TABLE:
        if move.kind is MoveKind.PROJECTILE and not fireball_available:
            continue
        if match_trigger(move, presses, now, facing_sign, held, fresh):
            return move
    return None
