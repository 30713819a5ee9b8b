"""Deterministic two-player engine: one pure step function over chords.

All arithmetic is integer; the engine consumes no randomness and no
wall-clock time, so a (config, seed, input script) triple fully determines
every state. The per-frame order of operations is fixed:

  1. chord normalization and press-edge bookkeeping
  2. independent fighter updates (phase ticks, movement, trigger starts)
  3. projectile motion, then new spawns
  4. simultaneous hit resolution from the post-move snapshot
  5. facing re-evaluation for grounded, non-locked fighters
  6. timer decrement and round-end check

Both fighters are updated from the same pre-frame snapshot and damage is
applied to both sides at once, so no rule ever depends on player order;
this is what makes mirrored runs exact mirror images.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Dict, List, Optional, Tuple

from lmfa.config import MatchConfig
from lmfa.engine.buttons import Button, Chord, normalize_chord
from lmfa.engine.moves import (
    MOVES_BY_ID,
    MoveDef,
    MoveKind,
    first_triggered_move,
)
from lmfa.engine.state import (
    BLOCKING,
    Blocking,
    EndReason,
    Facing,
    FighterState,
    GameState,
    HEALTH_MAX,
    Hitstun,
    IDLE,
    Jumping,
    KnockedDown,
    MoveActive,
    Player,
    Projectile,
    RoundOutcome,
    WALKING,
    Winner,
    mirror_fighter,
    mirror_outcome,
)

WALK_SPEED = 3
JUMP_FRAMES = 36
JUMP_PEAK = 80
JUMP_DRIFT = 90
HITSTUN_FRAMES = 18
KNOCKDOWN_FRAMES = 45
CHIP_DIVISOR = 10  # blocked damage lands at floor(damage / 10)
PRESS_HISTORY_FRAMES = 48


class EngineError(Exception):
    pass


class RoundOverError(EngineError):
    """Raised when stepping a round that has already ended."""


def new_match(config: MatchConfig, seed: int) -> GameState:
    """Symmetric initial state: full health, mirrored positions, timer set."""
    config = config.validated()
    half = config.arena_width // 2
    p1 = FighterState(
        health=HEALTH_MAX,
        x=half - config.start_offset,
        y=0,
        facing=Facing.RIGHT,
        phase=IDLE,
    )
    p2 = FighterState(
        health=HEALTH_MAX,
        x=half + config.start_offset,
        y=0,
        facing=Facing.LEFT,
        phase=IDLE,
    )
    return GameState(
        frame=0,
        timer_frames=config.match_length_frames,
        arena_width=config.arena_width,
        p1=p1,
        p2=p2,
        projectiles=(),
        rng_seed=seed,
    )


def outcome(state: GameState) -> Optional[RoundOutcome]:
    return state.round_over


def record_action(state: GameState, player: Player, command_text: str) -> GameState:
    """Append an executed command to a fighter's last-actions ring buffer."""
    fs = state.fighter(player)
    actions = (fs.last_actions + (command_text,))[-5:]
    fs = replace(fs, last_actions=actions)
    return replace(state, p1=fs) if player is Player.P1 else replace(state, p2=fs)


def mirror(state: GameState) -> GameState:
    """Swap players and reflect all x coordinates about the arena center."""
    w = state.arena_width
    projectiles = tuple(
        sorted(
            (
                Projectile(owner=p.owner.other, x=w - p.x, y=p.y, vx=-p.vx)
                for p in state.projectiles
            ),
            key=lambda p: p.owner.value,
        )
    )
    return replace(
        state,
        p1=mirror_fighter(state.p2, w),
        p2=mirror_fighter(state.p1, w),
        projectiles=projectiles,
        round_over=mirror_outcome(state.round_over),
    )


def _scaled_drift(drift: int, t: int) -> int:
    """Horizontal jump displacement after t frames; odd in the drift sign."""
    if drift >= 0:
        return drift * t // JUMP_FRAMES
    return -((-drift) * t // JUMP_FRAMES)


def jump_height(t: int) -> int:
    """Ballistic arc height at frame t of the jump, 0 at both ends."""
    half = JUMP_FRAMES // 2
    return (half * half - (t - half) ** 2) * JUMP_PEAK // (half * half)


def _clamp_x(x: int, width: int) -> int:
    return 0 if x < 0 else width if x > width else x


def _advance_fighter(
    fs: FighterState,
    chord_in: Chord,
    frame: int,
    width: int,
    fireball_available: bool,
) -> Tuple[FighterState, Optional[MoveDef]]:
    """Per-fighter update for one frame; returns (fighter, projectile spawn).

    Depends only on the fighter's own state and input, never on the
    opponent, so both sides advance from the same snapshot.
    """
    held = normalize_chord(chord_in)
    fresh = held - fs.prev_chord
    cutoff = frame - PRESS_HISTORY_FRAMES
    presses = tuple(ev for ev in fs.presses if ev[0] > cutoff)
    if fresh:
        presses = presses + ((frame, fresh),)
    fs = replace(fs, prev_chord=held, presses=presses)

    phase = fs.phase

    if isinstance(phase, Hitstun):
        left = phase.left - 1
        return replace(fs, phase=IDLE if left <= 0 else Hitstun(left)), None

    if isinstance(phase, KnockedDown):
        left = phase.left - 1
        return replace(fs, phase=IDLE if left <= 0 else KnockedDown(left)), None

    if isinstance(phase, MoveActive):
        move = MOVES_BY_ID[phase.move_id]
        t = phase.t + 1
        if t >= move.total_frames:
            return replace(fs, phase=IDLE), None
        x = fs.x
        spawn: Optional[MoveDef] = None
        if move.is_active_frame(t):
            if move.advance_per_active_frame:
                x = _clamp_x(x + move.advance_per_active_frame * fs.facing.sign, width)
            if move.kind is MoveKind.PROJECTILE and t == move.startup:
                spawn = move
        return replace(fs, x=x, phase=MoveActive(move.id, t, phase.hit_done)), spawn

    if isinstance(phase, Jumping):
        t = phase.t + 1
        x = _clamp_x(phase.origin_x + _scaled_drift(phase.drift, t), width)
        if t >= JUMP_FRAMES:
            return replace(fs, x=x, y=0, phase=IDLE), None
        return (
            replace(fs, x=x, y=jump_height(t), phase=Jumping(t, phase.origin_x, phase.drift)),
            None,
        )

    # Grounded and actionable: idle, walking, or blocking.
    move = first_triggered_move(
        presses, frame, fs.facing.sign, held, fresh, fireball_available
    )
    if move is not None:
        return replace(fs, phase=MoveActive(move.id, 0)), None
    if Button.C in held:
        return replace(fs, phase=BLOCKING), None
    if Button.UP in held:
        drift = JUMP_DRIFT if Button.RIGHT in held else -JUMP_DRIFT if Button.LEFT in held else 0
        return replace(fs, phase=Jumping(0, fs.x, drift)), None
    if Button.RIGHT in held:
        return replace(fs, x=_clamp_x(fs.x + WALK_SPEED, width), phase=WALKING), None
    if Button.LEFT in held:
        return replace(fs, x=_clamp_x(fs.x - WALK_SPEED, width), phase=WALKING), None
    return replace(fs, phase=IDLE), None


class _Hit:
    """One connecting attack: damage, knockback push, knockdown flag."""

    __slots__ = ("damage", "knockback", "direction", "knockdown")

    def __init__(self, damage: int, knockback: int, direction: int, knockdown: bool):
        self.damage = damage
        self.knockback = knockback
        self.direction = direction
        self.knockdown = knockdown


def _melee_hit(attacker: FighterState, target: FighterState) -> Optional[MoveDef]:
    """The attacker's move if it connects this frame, else None."""
    phase = attacker.phase
    if not isinstance(phase, MoveActive) or phase.hit_done:
        return None
    move = MOVES_BY_ID[phase.move_id]
    if move.kind is MoveKind.PROJECTILE or not move.is_active_frame(phase.t):
        return None
    if isinstance(target.phase, KnockedDown):
        return None
    if target.y > 0 and move.kind is not MoveKind.AERIAL:
        return None
    dx = (target.x - attacker.x) * attacker.facing.sign
    if not 0 <= dx <= move.reach:
        return None
    return move


def _resolve_damage(fs: FighterState, hits: List[_Hit], width: int) -> FighterState:
    if not hits:
        return fs
    blocking = isinstance(fs.phase, Blocking)
    health = fs.health
    x = fs.x
    knockdown = False
    for hit in hits:
        health -= hit.damage // CHIP_DIVISOR if blocking else hit.damage
        x = _clamp_x(x + hit.knockback * hit.direction, width)
        knockdown = knockdown or hit.knockdown
    health = max(0, health)
    if blocking:
        # Chip damage, pushback, no stun; the guard holds.
        return replace(fs, health=health, x=x)
    if fs.y > 0:
        knockdown = True  # air hits ground the target
    phase = KnockedDown(KNOCKDOWN_FRAMES) if knockdown else Hitstun(HITSTUN_FRAMES)
    return replace(fs, health=health, x=x, y=0, phase=phase)


def _refresh_facing(fs: FighterState, opponent_x: int) -> FighterState:
    if fs.y != 0 or not fs.actionable:
        return fs
    if fs.x < opponent_x:
        facing = Facing.RIGHT
    elif fs.x > opponent_x:
        facing = Facing.LEFT
    else:
        # Exact ties keep the previous facing; any fixed choice would break
        # mirror symmetry.
        facing = fs.facing
    return fs if facing is fs.facing else replace(fs, facing=facing)


def _check_round_end(
    p1: FighterState, p2: FighterState, timer: int, frame: int
) -> Optional[RoundOutcome]:
    if p1.health == 0 and p2.health == 0:
        return RoundOutcome(Winner.DRAW, None, EndReason.DOUBLE_KO, frame)
    if p2.health == 0:
        return RoundOutcome(Winner.P1, p1.health, EndReason.KNOCKOUT, frame)
    if p1.health == 0:
        return RoundOutcome(Winner.P2, p2.health, EndReason.KNOCKOUT, frame)
    if timer <= 0:
        if p1.health > p2.health:
            return RoundOutcome(Winner.P1, p1.health, EndReason.TIMEOUT, frame)
        if p2.health > p1.health:
            return RoundOutcome(Winner.P2, p2.health, EndReason.TIMEOUT, frame)
        return RoundOutcome(Winner.DRAW, None, EndReason.TIMEOUT, frame)
    return None


def step(state: GameState, input_p1: Chord, input_p2: Chord) -> GameState:
    """Advance exactly one frame; pure function of (state, inputs)."""
    if state.round_over is not None:
        raise RoundOverError("cannot step a finished round")

    frame = state.frame
    width = state.arena_width
    live_owner = {p.owner for p in state.projectiles}

    p1, spawn1 = _advance_fighter(
        state.p1, input_p1, frame, width, Player.P1 not in live_owner
    )
    p2, spawn2 = _advance_fighter(
        state.p2, input_p2, frame, width, Player.P2 not in live_owner
    )

    # Projectiles move before new ones spawn; off-arena shots despawn.
    projectiles = [
        replace(p, x=p.x + p.vx)
        for p in state.projectiles
        if 0 <= p.x + p.vx <= width
    ]
    for owner, fighter, spawn in ((Player.P1, p1, spawn1), (Player.P2, p2, spawn2)):
        if spawn is not None:
            px = _clamp_x(
                fighter.x + spawn.projectile_spawn_offset * fighter.facing.sign, width
            )
            projectiles.append(
                Projectile(
                    owner=owner,
                    x=px,
                    y=0,
                    vx=spawn.projectile_speed * fighter.facing.sign,
                )
            )
    projectiles.sort(key=lambda p: p.owner.value)

    # Collect all hits from the post-move snapshot, then apply both sides at
    # once; simultaneous trades land for both players (double KO possible).
    fighters: Dict[Player, FighterState] = {Player.P1: p1, Player.P2: p2}
    hits_on: Dict[Player, List[_Hit]] = {Player.P1: [], Player.P2: []}
    for attacker_id in (Player.P1, Player.P2):
        target_id = attacker_id.other
        move = _melee_hit(fighters[attacker_id], fighters[target_id])
        if move is not None:
            attacker = fighters[attacker_id]
            hits_on[target_id].append(
                _Hit(move.damage, move.knockback, attacker.facing.sign, move.knockdown)
            )
            fighters[attacker_id] = replace(
                attacker, phase=replace(attacker.phase, hit_done=True)
            )

    surviving: List[Projectile] = []
    for proj in projectiles:
        target_id = proj.owner.other
        target = fighters[target_id]
        move = MOVES_BY_ID["fireball"]
        if (
            not isinstance(target.phase, KnockedDown)
            and target.y <= move.projectile_clear_height
            and abs(proj.x - target.x) <= move.projectile_hit_radius
        ):
            hits_on[target_id].append(
                _Hit(move.damage, move.knockback, 1 if proj.vx > 0 else -1, False)
            )
        else:
            surviving.append(proj)

    p1 = _resolve_damage(fighters[Player.P1], hits_on[Player.P1], width)
    p2 = _resolve_damage(fighters[Player.P2], hits_on[Player.P2], width)

    p2_x = p2.x
    p1_x = p1.x
    p1 = _refresh_facing(p1, p2_x)
    p2 = _refresh_facing(p2, p1_x)

    frame += 1
    timer = state.timer_frames - 1
    round_over = _check_round_end(p1, p2, timer, frame)

    return replace(
        state,
        frame=frame,
        timer_frames=timer,
        p1=p1,
        p2=p2,
        projectiles=tuple(surviving),
        round_over=round_over,
    )
