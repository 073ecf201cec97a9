"""Presentations of mapping class groups of nonorientable surfaces and their twist subgroups."""

from .words import GeneratorSymbol, ParityMap, Word, W, conjugate, concat, invert, parity, reduce, substitute
from .presentation import Meta, Presentation, Relator, parse, relators_equal_cyclically, serialize
from .derivation import DerivationScript, check_derivation
from .catalog import CatalogKey, build, derived_words, embedding_map
from .abelian import abelian_invariants, exponent_matrix, smith_normal_form

__version__ = "0.1.0"
