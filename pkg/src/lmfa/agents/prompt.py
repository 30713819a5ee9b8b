"""The shared system prompt: one fixed, versioned text per config.

Every agent in a tournament receives this byte-identical prompt; results
should cite PROMPT_VERSION since prompt drift would invalidate
comparisons across runs.
"""

from __future__ import annotations

from lmfa.actions import VOCABULARY
from lmfa.config import MatchConfig

PROMPT_VERSION = "prompt-v1"

_TEMPLATE = """\
ARENA SYSTEM PROMPT {version}

OBJECTIVE
You control one fighter in a mirror match. Reduce your opponent's health
from 1.000 to 0.000 before the {seconds}-second timer runs out, or hold
the higher health at timeout. Health never regenerates.

OBSERVATIONS
Each decision you receive up to 10 game frames (base64-encoded binary
PPM, "P6"), oldest first, sampled every 4th engine frame, with marker
boxes labeled P1/P2 above the fighters, plus a state report in exactly
this form:
TIMER: <seconds> seconds
YOU: health <h.hhh>, position (<x>,<y>), facing <left|right>
OPPONENT: health <h.hhh>, position (<x>,<y>), facing <left|right>
YOUR LAST 5 ACTIONS: <oldest>; ...; <newest>
OPPONENT LAST 5 ACTIONS: <oldest>; ...; <newest>

ACTIONS
A command is 1-5 chords separated by commas; each chord is 1-3 tokens
joined by "+". Tokens: Up, Down, Left, Right, Forward, Back, A, B, C,
Block, Jump, Crouch. Forward and Back are relative to your facing.
Aliases: Block=C, Jump=Up, Crouch=Down.
Moves: A = punch. B = kick (longer reach). Hold C = block (reduces damage
to chip, prevents stun). Down + A = uppercut (hits jumping opponents).
Down + B = crouch kick. Down, Forward, A = fireball projectile.
Forward, Forward, C = flying kick (long advance, big damage).
Movement: Forward/Back walk. Jump leaves the ground and clears fireballs
at its peak; Jump + Forward or Jump + Back arcs sideways.

REPLY FORMAT
Reason as much as you like, then end your reply with exactly one command
on the final line, for example:
Left + A
"""


def build_system_prompt(config: MatchConfig) -> str:
    """Deterministic prompt text; identical for every agent in a run."""
    text = _TEMPLATE.format(
        version=PROMPT_VERSION,
        seconds=(config.match_length_frames + 59) // 60,
    )
    missing = [tok for tok in VOCABULARY if tok not in text]
    assert not missing, f"prompt lost vocabulary tokens: {missing}"
    assert len(text.encode()) < 4000
    return text
