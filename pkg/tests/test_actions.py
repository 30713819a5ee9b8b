"""Command grammar: parsing, normalization, timing, reply extraction."""

from __future__ import annotations

import random
import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lmfa.actions import (
    Command,
    CommandError,
    CommandToken,
    ConflictingDirectionsError,
    EmptyCommandError,
    HOLD_FRAMES,
    MAX_PLAN_FRAMES,
    NoCommandFoundError,
    TooManyStepsError,
    TooManyTokensError,
    UnknownTokenError,
    extract_command,
    format_command,
    parse,
    resolve,
)
from lmfa.engine import Button, Facing

T = CommandToken


class TestParse:
    def test_chord_with_plus(self):
        cmd = parse("Left + A")
        assert cmd.steps == (frozenset({T.LEFT, T.A}),)
        assert cmd.normalized == "Left + A"

    def test_sequence_with_commas(self):
        cmd = parse("Down, Forward, A")
        assert cmd.steps == (
            frozenset({T.DOWN}),
            frozenset({T.FORWARD}),
            frozenset({T.A}),
        )
        assert cmd.normalized == "Down, Forward, A"

    def test_case_and_whitespace_insensitive(self):
        cmd = parse("forward , forward ,c")
        assert cmd.normalized == "Forward, Forward, C"
        assert cmd.steps == (
            frozenset({T.FORWARD}),
            frozenset({T.FORWARD}),
            frozenset({T.C}),
        )

    def test_aliases_collapse(self):
        assert parse("Block").normalized == "C"
        assert parse("Jump").normalized == "Up"
        assert parse("Crouch + B").normalized == "Down + B"

    def test_conflicting_directions_rejected(self):
        with pytest.raises(ConflictingDirectionsError):
            parse("Left + Right")
        with pytest.raises(ConflictingDirectionsError):
            parse("Up + Down")
        with pytest.raises(ConflictingDirectionsError):
            parse("Forward + Back")
        with pytest.raises(ConflictingDirectionsError):
            parse("Left + Forward")

    def test_empty_command_rejected(self):
        with pytest.raises(EmptyCommandError):
            parse("")
        with pytest.raises(EmptyCommandError):
            parse("   ")

    def test_unknown_token_reports_token(self):
        with pytest.raises(UnknownTokenError) as e:
            parse("Left + Punch")
        assert e.value.token == "Punch"

    def test_too_many_steps(self):
        with pytest.raises(TooManyStepsError):
            parse("A, A, A, A, A, A")

    def test_too_many_tokens_in_chord(self):
        with pytest.raises(TooManyTokensError):
            parse("Up + A + B + C")

    def test_empty_chord_segment_rejected(self):
        with pytest.raises(CommandError):
            parse("A,,B")


class TestResolve:
    def test_forward_maps_by_facing(self):
        plan_r = resolve(parse("Forward"), Facing.RIGHT)
        plan_l = resolve(parse("Forward"), Facing.LEFT)
        assert plan_r.steps[0].chord == frozenset({Button.RIGHT})
        assert plan_r.steps[0].hold_frames == HOLD_FRAMES
        assert plan_l.steps[0].chord == frozenset({Button.LEFT})

    def test_back_maps_opposite(self):
        plan = resolve(parse("Back"), Facing.RIGHT)
        assert plan.steps[0].chord == frozenset({Button.LEFT})

    def test_three_step_plan_is_13_frames(self):
        plan = resolve(parse("Down, Forward, A"), Facing.RIGHT)
        assert plan.total_frames == 13
        chords = plan.frame_chords()
        assert len(chords) == 13
        assert chords[0] == frozenset({Button.DOWN})
        assert chords[3] == frozenset()
        assert chords[5] == frozenset({Button.RIGHT})
        assert chords[10] == frozenset({Button.A})

    def test_facing_antisymmetry_for_relative_commands(self):
        # commands without absolute Left/Right: flipping the facing swaps
        # Left and Right in every compiled chord
        for text in ("Forward", "Back + A", "Down, Forward, A", "Forward, Forward, C"):
            cmd = parse(text)
            swap = {Button.LEFT: Button.RIGHT, Button.RIGHT: Button.LEFT}
            plan_r = resolve(cmd, Facing.RIGHT)
            plan_l = resolve(cmd, Facing.LEFT)
            for sr, sl in zip(plan_r.steps, plan_l.steps):
                assert {swap.get(b, b) for b in sr.chord} == set(sl.chord)

    def test_plans_bounded(self):
        plan = resolve(parse("A, B, C, Up, Down"), Facing.RIGHT)
        assert 1 <= plan.total_frames <= MAX_PLAN_FRAMES


def _random_valid_command(rng: random.Random) -> str:
    # generator for the round-trip property; may produce alias tokens
    tokens = [t.value for t in CommandToken] + ["Block", "Jump", "Crouch"]
    steps = []
    for _ in range(rng.randint(1, 5)):
        tries = 0
        while True:
            tries += 1
            pick = rng.sample(tokens, rng.randint(1, 3))
            try:
                parse(" + ".join(pick))
                break
            except CommandError:
                if tries > 50:
                    pick = ["A"]
                    break
        steps.append(" + ".join(pick))
    text = ", ".join(steps)
    # randomize casing and spacing
    mangled = "".join(
        ch.upper() if rng.random() < 0.3 else ch.lower() for ch in text
    )
    return mangled.replace(", ", rng.choice([",", " , ", ", "]))


class TestRoundTrip:
    def test_ten_thousand_random_commands_round_trip(self):
        rng = random.Random(20240601)
        for _ in range(10_000):
            raw = _random_valid_command(rng)
            cmd = parse(raw)
            again = parse(format_command(cmd))
            assert again.steps == cmd.steps
            assert again.normalized == cmd.normalized

    @given(st.text(alphabet=string.printable, max_size=256))
    @settings(max_examples=500, deadline=None)
    def test_parse_is_total_over_arbitrary_text(self, text):
        try:
            cmd = parse(text)
            assert isinstance(cmd, Command)
        except CommandError:
            pass


class TestExtractCommand:
    def test_command_after_prose_sentence(self):
        cmd = extract_command("I will advance and strike. Left + A")
        assert cmd.normalized == "Left + A"

    def test_backticked_command(self):
        cmd = extract_command("`Down, Forward, A`")
        assert cmd.normalized == "Down, Forward, A"

    def test_last_line_wins(self):
        reply = "Thinking about Forward...\nBut actually:\nB"
        assert extract_command(reply).normalized == "B"

    def test_trailing_punctuation_stripped(self):
        assert extract_command("Forward, Forward, C!").normalized == "Forward, Forward, C"

    def test_quoted_command(self):
        assert extract_command('My move is "Block".').normalized == "C"

    def test_pure_prose_raises(self):
        with pytest.raises(NoCommandFoundError):
            extract_command("I ponder the situation and wait for an opening.")

    def test_empty_reply_raises(self):
        with pytest.raises(NoCommandFoundError):
            extract_command("")
