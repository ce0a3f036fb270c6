"""Non-causal conjunctions compiled to AND/NOT gate networks."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import (ArityUnsupported, CausalUnsupported, MissingVariable, TooManyVariables,
                     UnknownConjunction)

CLASSES = ("additive", "inclusive_choice", "exclusive_choice", "exclusion", "contrast", "causal")
BINARY_ONLY = ("exclusive_choice", "contrast")
MAX_TABLE_VARIABLES = 20

# Surface patterns; "..." stands for the material between the two parts.
SURFACE_FORMS = {
    "additive": ("and", "both ... and", "not only ... but also", "as well as"),
    "exclusive_choice": ("either ... or",),
    "exclusion": ("nor", "neither ... nor"),
    "contrast": ("but", "yet", "however", "but not"),
    "causal": ("because", "since", "as", "so", "therefore", "thus", "if", "unless",
               "when", "while", "before", "after", "so that", "in order that"),
}
# Bare "or" can be inclusive or exclusive; the caller has to say which.
AMBIGUOUS_FORMS = ("or",)


@dataclass(frozen=True)
class ConjunctionClass:
    name: str
    surface: str = ""

    def __post_init__(self):
        if self.name not in CLASSES:
            raise UnknownConjunction(f"unknown conjunction class {self.name!r}")


@dataclass(frozen=True)
class Gate:
    op: str          # "AND" or "NOT"
    inputs: tuple    # variable names or earlier gate indices


@dataclass(frozen=True)
class BoolCircuit:
    inputs: tuple
    gates: tuple
    output: int

    def gate_ops(self):
        return {g.op for g in self.gates}


def _patterns():
    out = []
    for cls, forms in SURFACE_FORMS.items():
        for f in forms:
            out.append((tuple(f.split()), cls, f))
    # longest first so "but not" beats "but" and "either ... or" beats "or"
    out.sort(key=lambda p: -len([x for x in p[0] if x != "..."]))
    return out


def _matches(pattern, tokens):
    """Does ``pattern`` occur in ``tokens`` (with "..." as a gap of >= 0 tokens)?"""
    parts, cur = [], []
    for x in pattern:
        if x == "...":
            parts.append(tuple(cur))
            cur = []
        else:
            cur.append(x)
    parts.append(tuple(cur))
    pos = 0
    for k, part in enumerate(parts):
        n = len(part)
        found = None
        for i in range(pos, len(tokens) - n + 1):
            if tuple(tokens[i:i + n]) == part:
                found = i
                break
        if found is None:
            return False
        if k == 0 and len(parts) == 1:
            return True
        pos = found + n
    return True


def classify_conjunction(tokens):
    """Class of the conjunction in ``tokens`` (a string or token list).

    Class names themselves and underscore-joined forms such as
    ``either_or`` are accepted too.
    """
    if isinstance(tokens, str):
        text = tokens.strip().lower()
        if text in CLASSES:
            return ConjunctionClass(text, text)
        tokens = text.replace("_", " ").split()
    tokens = [t.lower().strip(",.") for t in tokens]
    for pattern, cls, form in _patterns():
        if "..." in pattern:
            if _matches(pattern, tokens):
                return ConjunctionClass(cls, form)
    joined = " " + " ".join(tokens) + " "
    # compact forms like "either or" / "neither nor" typed without a gap
    for pattern, cls, form in _patterns():
        bare = " " + " ".join(x for x in pattern if x != "...") + " "
        if "..." in pattern and bare == joined:
            return ConjunctionClass(cls, form)
    for pattern, cls, form in _patterns():
        if "..." not in pattern and _matches(pattern, tokens):
            return ConjunctionClass(cls, form)
    if any(t in AMBIGUOUS_FORMS for t in tokens):
        raise UnknownConjunction("'or' is ambiguous; choose inclusive_choice or exclusive_choice")
    raise UnknownConjunction(f"no conjunction in {' '.join(tokens)!r}")


class _Net:
    def __init__(self, inputs):
        self.inputs = tuple(inputs)
        self.gates = []

    def add(self, op, *ins):
        self.gates.append(Gate(op, tuple(ins)))
        return len(self.gates) - 1

    def AND(self, *ins):
        return self.add("AND", *ins)

    def NOT(self, x):
        return self.add("NOT", x)

    def done(self, out):
        return BoolCircuit(self.inputs, tuple(self.gates), out)


def compile_conjunction(cls, n, names=None):
    """AND/NOT network for class ``cls`` over ``n`` operands."""
    if isinstance(cls, ConjunctionClass):
        cls = cls.name
    if cls not in CLASSES:
        cls = classify_conjunction(cls).name
    if cls == "causal":
        raise CausalUnsupported("causal conjunctions have no Boolean compilation")
    if n < 2:
        raise ArityUnsupported(f"{cls} needs at least 2 operands, got {n}")
    if cls in BINARY_ONLY and n != 2:
        raise ArityUnsupported(f"{cls} is binary only, got {n} operands")
    names = tuple(names) if names else tuple(f"A{i + 1}" for i in range(n))
    net = _Net(names)
    if cls == "additive":
        return net.done(net.AND(*names))
    if cls == "exclusion":
        return net.done(net.AND(*(net.NOT(a) for a in names)))
    if cls == "inclusive_choice":
        return net.done(net.NOT(net.AND(*(net.NOT(a) for a in names))))
    a, b = names
    if cls == "exclusive_choice":
        both = net.NOT(net.AND(a, b))
        neither = net.NOT(net.AND(net.NOT(a), net.NOT(b)))
        return net.done(net.AND(both, neither))
    return net.done(net.AND(a, net.NOT(b)))   # contrast


def eval_circuit(c, assignment):
    for name in c.inputs:
        if name not in assignment:
            raise MissingVariable(f"no value for {name!r}")
    values = []

    def val(x):
        return values[x] if isinstance(x, int) else int(bool(assignment[x]))

    for g in c.gates:
        ins = [val(x) for x in g.inputs]
        values.append(int(all(ins)) if g.op == "AND" else 1 - ins[0])
    return values[c.output]


def assignments(n):
    """All bit tuples of length n in binary counting order (first variable most significant)."""
    return list(product((0, 1), repeat=n))


def truth_table(c):
    n = len(c.inputs)
    if n > MAX_TABLE_VARIABLES:
        raise TooManyVariables(f"{n} variables exceeds {MAX_TABLE_VARIABLES}")
    return [eval_circuit(c, dict(zip(c.inputs, bits))) for bits in assignments(n)]
