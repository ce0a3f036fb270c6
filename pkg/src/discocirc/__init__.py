"""Text diagrams, text circuits and English/Bengali translation through them."""

from .circuit import (TextCircuit, apply_update, circuits_equal, diagram_to_circuit,
                      infer_attributes)
from .conjlogic import (classify_conjunction, compile_conjunction, eval_circuit,
                        truth_table)
from .diagram import (TextDiagram, compose_sequential, diagrams_isomorphic, normalize,
                      tree_to_diagram)
from .grammar import Grammar, ParseTree, linearize, load_grammar, merge_pronominal, parse
from .lexicon import (Lexicon, apply_morphology, check_bijection, check_surjection_condition,
                      load_lexicon)
from .resources import default_grammar, default_lexicon
from .translate import TranslationResult, linearize_target, relabel, translate_text

__version__ = "0.1.0"

__all__ = [
    "TextCircuit", "apply_update", "circuits_equal", "diagram_to_circuit", "infer_attributes",
    "classify_conjunction", "compile_conjunction", "eval_circuit", "truth_table",
    "TextDiagram", "compose_sequential", "diagrams_isomorphic", "normalize", "tree_to_diagram",
    "Grammar", "ParseTree", "linearize", "load_grammar", "merge_pronominal", "parse",
    "Lexicon", "apply_morphology", "check_bijection", "check_surjection_condition",
    "load_lexicon", "default_grammar", "default_lexicon",
    "TranslationResult", "linearize_target", "relabel", "translate_text",
]
