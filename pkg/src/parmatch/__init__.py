"""Streaming parameterized matching in sublinear space.

Report, for every arriving stream symbol, whether the last m symbols are
an injective relabelling of an m-length pattern, in constant work per
symbol.  The randomized engine uses O(|alphabet| * log m) words; the
deterministic one O(|alphabet| + rho) words, rho being the pattern's
parameterized period.
"""

from .alphabet_filter import AlphabetFilter, densify_pattern
from .det_matcher import DetMatcher, det_matcher_for
from .errors import AlphabetError, ConfigError, StructuralViolation, UsageError
from .fingerprint import (
    FieldContext,
    Fingerprint,
    ZeroEntry,
    context_new,
    fp_append,
    fp_of_sequence,
    fp_split,
    fp_zero,
)
from .pattern import PatternProfile, build_profile
from .predecessor import (
    NEVER,
    LastOccurrence,
    pmatch_compare,
    pred_string,
    window_relative,
)
from .stream_matcher import StreamMatcher, stream_new

__version__ = "0.1.0"

__all__ = [
    "AlphabetError",
    "AlphabetFilter",
    "ConfigError",
    "DetMatcher",
    "FieldContext",
    "Fingerprint",
    "LastOccurrence",
    "NEVER",
    "PatternProfile",
    "StreamMatcher",
    "StructuralViolation",
    "UsageError",
    "ZeroEntry",
    "build_profile",
    "context_new",
    "densify_pattern",
    "det_matcher_for",
    "fp_append",
    "fp_of_sequence",
    "fp_split",
    "fp_zero",
    "pmatch_compare",
    "pred_string",
    "stream_new",
    "window_relative",
]
