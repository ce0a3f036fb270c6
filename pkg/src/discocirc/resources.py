"""Locating and loading the bundled grammars, lexicon and corpus.

``DISCO_GRAMMAR_DIR`` points at a directory laid out like ``data/``
(``grammars/en.gr``, ``grammars/bn.gr``, ``lexicon/en-bn.tsv``); files
found there win over the bundled ones.
"""

import os
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .grammar import load_grammar
from .lexicon import BN, EN, load_lexicon, normalize_lang

ENV_VAR = "DISCO_GRAMMAR_DIR"
GRAMMAR_FILES = {EN: "grammars/en.gr", BN: "grammars/bn.gr"}
LEXICON_FILE = "lexicon/en-bn.tsv"


def data_path(relative):
    override = os.environ.get(ENV_VAR)
    if override:
        p = Path(override) / relative
        if p.exists():
            return p
    return Path(str(resources.files("discocirc") / "data" / relative))


def read_data(relative):
    return data_path(relative).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def _cached_grammar(path, lang):
    return load_grammar(Path(path).read_text(encoding="utf-8"), lang)


@lru_cache(maxsize=None)
def _cached_lexicon(path):
    return load_lexicon(Path(path).read_text(encoding="utf-8"))


def default_grammar(lang):
    lang = normalize_lang(lang)
    return _cached_grammar(str(data_path(GRAMMAR_FILES[lang])), lang)


def default_lexicon():
    return _cached_lexicon(str(data_path(LEXICON_FILE)))


def default_corpus_path():
    return data_path("corpus/examples.tsv")
