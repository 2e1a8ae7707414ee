import contextlib
import io
import json
import os
import unittest

from cli import *
from kernel import *
from srcheck import *
from syntax import *
from terms import *
from utils import *


CORPUS_NAMES = [
    "vectors",
    "stlc",
    "stlc_noinj",
    "stlc_opaque",
    "stlc_opaque_noinj",
    "peano",
    "nonpattern",
    "incomplete",
    "shared_names",
]
CORPUS = {name: corpus_path(name) for name in CORPUS_NAMES}

VECTORS_PATH = CORPUS["vectors"]
PEANO_PATH = CORPUS["peano"]
NONPATTERN_PATH = CORPUS["nonpattern"]

# vectors with an inhabitant of R, so that cons can be applied
VECTORS_WITH_REAL = "\nsymbol r : R;\n"

NAT_TEXT = """
symbol N : TYPE;
symbol 0 : N;
symbol s : N -> N;
"""


def t(text: str) -> Term:
    return parse_term(text)


def ft(text: str) -> Term:
    # frozen term: rule variables become `$x` constants
    return freeze(parse_term(text))


def hat_symbol(name: str) -> Symbol:
    return Symbol(hat(name))


def hat_var(name: str) -> Var:
    return Var(hat(name))


def load(name: str, extra: str = "") -> Signature:
    return Signature.from_source(parse(read_source(CORPUS[name]) + extra))


def load_text(text: str) -> Signature:
    return Signature.from_source(parse(text))
