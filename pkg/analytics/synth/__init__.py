"""
Synth module: deterministic synthetic corpora and built-in scenarios.

Usage:
    from analytics.synth import default_config, generate_corpus

    corpus = generate_corpus(default_config(seed=7))
    corpus.canonical() == generate_corpus(default_config(seed=7)).canonical()   # True
"""
from .config import NoiseModel, SynthConfig, SynthDiscipline, SynthUnit, config_from_dict, load_synth_config
from .generator import generate_corpus, make_rng, rescale_discipline, round_half_up
from .scenarios import TABLE1_AREAS, ab_config, ab_scenario, default_config, table1_corpus

__all__ = [
    "NoiseModel",
    "SynthConfig",
    "SynthDiscipline",
    "SynthUnit",
    "config_from_dict",
    "load_synth_config",
    "generate_corpus",
    "make_rng",
    "rescale_discipline",
    "round_half_up",
    "TABLE1_AREAS",
    "ab_config",
    "ab_scenario",
    "default_config",
    "table1_corpus",
]
