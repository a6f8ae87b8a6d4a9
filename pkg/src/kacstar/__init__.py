"""Roots of the star-shaped Kac-Moody root system and tuples of partitions."""
from .fundamental import benchmark_ablation, classify, oracle_classify
from .irregular import IrregularSpectrum, analyze_irregular, parse_irregular, refinements
from .roots import RootKind, RootVector, TupleClass, classify_root, inner, root_to_tuple, tuple_to_root
from .tuples import IllegalPartitions, SpectralParseError, SpectralTuple, idx, parse, parse_tuple
from .weyl import (NotRealizable, analyze, construct, orbit_generate, reduce_step, reduce_to_fundamental,
                   reflect_leg, root_construction)

__all__ = [
    "IllegalPartitions", "IrregularSpectrum", "NotRealizable", "RootKind", "RootVector", "SpectralParseError",
    "SpectralTuple", "TupleClass", "analyze", "analyze_irregular", "benchmark_ablation", "classify",
    "classify_root", "construct", "idx", "inner", "oracle_classify", "orbit_generate", "parse",
    "parse_irregular", "parse_tuple", "reduce_step", "reduce_to_fundamental", "refinements", "reflect_leg",
    "root_construction", "root_to_tuple", "tuple_to_root",
]
