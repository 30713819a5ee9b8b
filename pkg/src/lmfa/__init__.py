"""lmfa: a deterministic, frame-stepped fighting arena for agent evaluation.

Scripted bots or remote multimodal models fight mirror matches in a pure
integer-arithmetic engine; matches are fully reproducible from (config,
seed, inputs) and every tournament artifact can be regenerated bit-exactly
from the archived logs.
"""

__version__ = "0.1.0"
