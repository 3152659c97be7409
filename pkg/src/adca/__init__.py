"""Static and dynamic antidictionary compression."""

from .antidictionary import Antidictionary, compute_mfws, dictionary, validate
from .automaton import automaton_for, build_f, build_g, classify, state_of, step
from .dynamic_codec import decode_dynamic, encode_dynamic
from .markov_source import SourceModel, entropy_rate, sample, stationary
from .static_codec import decode_static, encode_static

__version__ = "0.1.0"
