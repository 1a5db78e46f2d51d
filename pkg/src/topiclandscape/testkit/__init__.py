"""Bundled reference tables and a synthetic corpus generator for tests and demos."""

from .appendix_b import APPENDIX_A_LABELS, AppendixBFixture, appendix_b_fixture
from .synth import Drift, SynthSpec, SynthSpecError, generate_synthetic, synthesize

__all__ = [
    "APPENDIX_A_LABELS",
    "AppendixBFixture",
    "Drift",
    "SynthSpec",
    "SynthSpecError",
    "appendix_b_fixture",
    "generate_synthetic",
    "synthesize",
]
