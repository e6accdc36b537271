"""Exact laboratory for star-extensions of the naturals.

The decidable fragment: eventually periodic sets, eventually
quasi-polynomial functions, ultrafilter handles with coherent residue
oracles, the induced star operations on hyper-points, and an exhaustive
finite-universe search for star-map axioms.
"""

from .epsets import Classification, EpSet, FiniteSetError
from .eqp import (ComparePartition, EqpFunction, InvalidFunctionError,
                  NotNatValuedError, ZPiecewise, cantor_pair, cantor_unpair,
                  char_function, compare, compose, equalizer, pair,
                  poly_combine, preimage)
from .extension import (AxiomReport, ComputableMap, Context, DirWitness,
                        HyperNat, IndiscernibilityReport, OrbitReport,
                        PossWitness, orbit_explore, pair_index_set)
from .finitelab import (FiniteStone, FiniteUniverse, SatisfiabilityMatrix,
                        finite_stone, search_extensions, stone_trace,
                        verify_candidate)
from .formulas import (Formula, FormulaEnv, ParseError, TransferReport,
                       UnboundVariableError, parse_formula, star_eval,
                       transfer_check, truth_set)
from .polys import Poly
from .rep2 import (GraphPoly, LinearCongruence, ProductSet, Rep2Set, StripX,
                   StripY, diagonal, section_family)
from .ultra import (Distinct, EqualCertified, EqualUpTo, HausdorffReport,
                    TensorHandle, UltrafilterHandle, hausdorff_check, tensor,
                    tensor_member, tensor_proj, uf_equal, uf_member,
                    uf_pushforward)

__version__ = "0.1.0"

__all__ = [
    "EpSet", "Classification", "FiniteSetError",
    "EqpFunction", "ZPiecewise", "ComparePartition",
    "InvalidFunctionError", "NotNatValuedError",
    "compose", "equalizer", "preimage", "char_function", "pair",
    "poly_combine", "compare", "cantor_pair", "cantor_unpair",
    "Poly",
    "Rep2Set", "LinearCongruence", "StripX", "StripY", "GraphPoly",
    "ProductSet", "diagonal", "section_family",
    "UltrafilterHandle", "uf_member", "uf_pushforward", "uf_equal",
    "Distinct", "EqualCertified", "EqualUpTo",
    "HausdorffReport", "hausdorff_check",
    "TensorHandle", "tensor", "tensor_member", "tensor_proj",
    "Context", "HyperNat", "ComputableMap", "DirWitness",
    "IndiscernibilityReport", "PossWitness", "AxiomReport", "OrbitReport",
    "orbit_explore", "pair_index_set",
    "Formula", "FormulaEnv", "ParseError", "UnboundVariableError",
    "parse_formula", "truth_set", "star_eval", "transfer_check",
    "TransferReport",
    "FiniteUniverse", "verify_candidate", "search_extensions",
    "SatisfiabilityMatrix", "FiniteStone", "finite_stone", "stone_trace",
    "__version__",
]
