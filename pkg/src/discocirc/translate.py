"""English <-> Bengali translation through text circuits.

Source sentences are parsed, linked into one text, turned into a circuit,
enriched with inferred noun attributes, relabelled through the lexicon and
read back out along the target grammar, one target sentence per source
sentence.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace

from .circuit import apply_update, diagram_to_circuit, infer_attributes
from .diagram import normalize, tree_to_diagram
from .errors import (DiscoError, IdiomDetected, NoRealizingRule, UntranslatableTerminal)
from .grammar import NonTerminal, Terminal, link_text, parse, roles_for, tokenize
from .lexicon import (BN, COPULA, COPULA_DROP, EN, SILENT_ADPOSITION, UNKNOWN,
                      check_surjection_condition, inflect, normalize_lang)

INFO, WARNING, ERROR = "info", "warning", "error"


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    code: str
    message: str
    location: str | None = None

    def __str__(self):
        where = f" [{self.location}]" if self.location else ""
        return f"{self.severity}: {self.code}: {self.message}{where}"


@dataclass
class TranslationResult:
    sentences: list
    diagnostics: list = field(default_factory=list)
    source_circuit: object = None
    target_circuit: object = None

    @property
    def ok(self):
        return all(s is not None for s in self.sentences) and not self.errors()

    def errors(self):
        return [d for d in self.diagnostics if d.severity == ERROR]

    def first_error(self):
        errs = self.errors()
        return errs[0] if errs else None

    def lines(self):
        return [" ".join(s) if s is not None else None for s in self.sentences]

    @property
    def text(self):
        return ". ".join(line for line in self.lines() if line is not None)


def parse_context(spec):
    """``"Billie:animacy=inanimate;Lily:gender=female"`` -> nested dict."""
    out = {}
    if not spec:
        return out
    if isinstance(spec, dict):
        return {k: dict(v) for k, v in spec.items()}
    for item in spec.replace(",", ";").split(";"):
        item = item.strip()
        if not item:
            continue
        noun, _, assignment = item.partition(":")
        name, _, value = assignment.partition("=")
        if not name or not value:
            raise ValueError(f"bad context item {item!r}")
        out.setdefault(noun.strip(), {})[name.strip()] = value.strip()
    return out


def _direction(direction):
    if isinstance(direction, str):
        for sep in ("->", "→", ">", "-"):
            if sep in direction:
                a, b = direction.split(sep, 1)
                return normalize_lang(a.strip()), normalize_lang(b.strip())
        raise ValueError(f"bad direction {direction!r}")
    a, b = direction
    return normalize_lang(a), normalize_lang(b)


def _image(lex, lemma, src, tgt):
    if not lemma:
        return lemma
    images = lex.translations(lemma, src, tgt)
    if not images:
        raise UntranslatableTerminal(lemma)
    return images[0]


def relabel(c, lex, direction):
    """Replace every box terminal and wire label by its lexicon image."""
    src, tgt = _direction(direction)
    if src == tgt:
        return c

    def box(b):
        return replace(b, terminal=_image(lex, b.terminal, src, tgt),
                       adverbs=tuple(_image(lex, a, src, tgt) for a in b.adverbs),
                       nested=tuple(box(x) for x in b.nested))

    wires = tuple(replace(w, label=_image(lex, w.label, src, tgt)) for w in c.wires)
    terminals = tuple(_image(lex, lex.lookup(t, src).lemma, src, tgt) for t in c.terminals
                      if t.lower() != COPULA)
    return replace(c, wires=wires, boxes=tuple(box(b) for b in c.boxes), terminals=terminals,
                   language=tgt)


class _Realizer:
    """Reads a relabelled circuit out along the target grammar."""

    def __init__(self, c, tgt, lex, source_lang, notes):
        self.c, self.g, self.lex = c, tgt, lex
        self.lang = normalize_lang(tgt.language)
        self.source_lang = source_lang
        self.notes = notes

    def entry(self, lemma, pos=None):
        for e in self.lex._index[self.lang].get(lemma, ()):
            if pos is None or e.pos == pos:
                return e
        raise UntranslatableTerminal(lemma)

    def mention(self, wire, clause, role=None):
        found = [m for m in self.c.mentions if m.wire == wire and m.clause == clause]
        for m in found:
            if role is None or m.role == role:
                return m
        return found[0] if found else None

    def noun(self, wire, role, clause, sentence):
        m = self.mention(wire, clause, role)
        attrs = self.c.wires[wire].attributes
        if m is not None and m.pronoun == "reflexive" and role != "subject":
            surface = self.lex.pronoun_for(self.lang, "reflexive", attrs, "obj")
            return surface, attrs
        if m is not None and m.pronoun is not None:
            own = m.analysis.base_attributes if m.analysis is not None else None
            if own is not None:
                merged = attrs
                for name, value in own.as_dict().items():
                    if value != UNKNOWN and name in ("person", "number"):
                        merged = replace(merged, **{name: value})
                    elif value != UNKNOWN:
                        try:
                            merged = merged.refine(**{name: value})
                        except DiscoError:
                            pass
                attrs = merged
            case = "subj" if role == "subject" else "obj"
            kind = "personal" if m.pronoun in ("relative", "reflexive") and role == "subject" else m.pronoun
            try:
                surface = self.lex.pronoun_for(self.lang, kind, attrs, case)
            except DiscoError:
                if case == "obj":
                    surface = self.lex.pronoun_for(self.lang, kind, attrs, "subj")
                else:
                    raise
            chosen = next(e for e in self.lex.entries if e.surface(self.lang) == surface
                          and e.pronoun == kind)
            return surface, chosen.attributes
        e = self.entry(self.c.wires[wire].label, "NP")
        surface, applied = inflect(e, role, attrs, self.lang)
        for rule in applied:
            self.notes.append(Diagnostic(INFO, rule, f"{e.surface(self.lang)} -> {surface}",
                                         f"sentence {sentence + 1}"))
        return surface, attrs

    def pick_rule(self, cats, adverb=None):
        want = Counter(cats)
        found = []
        for r in self.g.rules:
            if r.lhs.category != "S":
                continue
            rhs_cats = [s.category for s in r.rhs if isinstance(s, NonTerminal)]
            literals = [s.surface for s in r.rhs if isinstance(s, Terminal)]
            if Counter(rhs_cats) != want or any(x != COPULA for x in literals):
                continue
            found.append(r)
        if not found:
            raise NoRealizingRule(f"no {self.lang} rule realises {' '.join(sorted(cats))}")
        if adverb is not None and len(found) > 1:
            placement = adverb.placement or "either"
            for r in found:
                labels = [s.category if isinstance(s, NonTerminal) else None for s in r.rhs]
                adv = labels.index("ADV")
                verb = next(i for i, x in enumerate(labels) if x in ("TVP", "IVP"))
                if placement == "preverbal" and adv < verb:
                    return r
                if placement == "postverbal" and adv > verb:
                    return r
        return found[0]

    def clause(self, b, sentence):
        """Tokens for one top-level box."""
        if b.kind == "conjunction_frame":
            rule = self.pick_rule(["S", "CNJ", "S"])
            parts = [self.group(g, sentence) for g in b.nested]
            conj = self.entry(b.terminal, "CNJ").surface(self.lang)
            out, k = [], 0
            for sym in rule.rhs:
                if isinstance(sym, NonTerminal) and sym.category == "S":
                    out += parts[k]
                    k += 1
                else:
                    out.append(conj)
            return out
        if b.kind == "verb" and b.nested:
            rule = self.pick_rule(["NP", "SCV", "S"])
            subj, _ = self.noun(b.operands[0], "subject", b.clause, sentence)
            verb = self.entry(b.terminal, "SCV").surface(self.lang)
            comp = self.group(b.nested[0], sentence)
            fill = {"subject": [subj], "scv": [verb], "complement": comp}
            return self.fill(rule, fill)
        return self.simple(b, sentence)

    def group(self, g, sentence):
        if len(g.nested) != 1:
            raise NoRealizingRule("clause with several processes has no single rule")
        return self.clause(g.nested[0], sentence)

    def simple(self, b, sentence):
        roles = {}
        verb_box, frame = b, None
        if b.kind == "adposition_frame":
            frame, verb_box = b, b.nested[0]
        if verb_box.kind == "adjective":
            roles["subject"] = verb_box.operands[0]
            cats = ["NP", "ADJ"]
        else:
            names = ("subject", "object")[: len(verb_box.operands)]
            roles.update(zip(names, verb_box.operands))
            cats = ["NP"] * len(names) + ["TVP" if len(names) == 2 else "IVP"]
        silent = False
        if frame is not None:
            rec = frame.operands[1]
            roles_key = "adp_object"
            if self.lang == BN and frame.terminal == SILENT_ADPOSITION and "object" in roles:
                animacy = self.c.wires[rec].attributes.animacy
                if animacy == UNKNOWN and self.mention(rec, b.clause) is not None \
                        and self.mention(rec, b.clause).pronoun:
                    animacy = "animate"
                if animacy == "animate":
                    silent = True
                    roles_key = "recipient"
            roles[roles_key] = rec
            cats += ["NP"] if silent else ["ADP", "NP"]
        adverb = None
        if verb_box.adverbs:
            adverb = self.entry(verb_box.adverbs[0], "ADV")
            cats.append("ADV")
        rule = self.pick_rule(cats, adverb)
        labels = [s.category if isinstance(s, NonTerminal) else s for s in rule.rhs]
        rule_roles = roles_for(labels, self.lang)
        fill = {}
        subj_attrs = None
        order = sorted(range(len(rule_roles)), key=lambda i: rule_roles[i] != "subject")
        for i in order:
            role = rule_roles[i]
            if role in ("subject", "object", "recipient", "adp_object"):
                surface, attrs = self.noun(roles[role], role, b.clause, sentence)
                if role == "subject":
                    subj_attrs = attrs
                fill[role] = [surface]
            elif role == "verb":
                e = self.entry(verb_box.terminal)
                surface, applied = inflect(e, "verb", subj_attrs, self.lang)
                self._note(applied, e, surface, sentence)
                fill[role] = [surface]
            elif role == "predicate":
                e = self.entry(verb_box.terminal, "ADJ")
                surface, applied = inflect(e, "predicate", subj_attrs, self.lang)
                self._note(applied, e, surface, sentence)
                fill[role] = [surface]
            elif role == "adverb":
                fill[role] = [adverb.surface(self.lang)]
            elif role == "adposition":
                fill[role] = [self.entry(frame.terminal, "ADP").surface(self.lang)]
            elif role == "copula":
                fill[role] = [COPULA]
                self.notes.append(Diagnostic(INFO, "copula_insertion",
                                             "copula inserted by the target rule",
                                             f"sentence {sentence + 1}"))
        if verb_box.kind == "adjective" and self.lang == BN and self.source_lang == EN:
            self.notes.append(Diagnostic(INFO, COPULA_DROP, "copula not realised",
                                         f"sentence {sentence + 1}"))
        if silent:
            self.notes.append(Diagnostic(INFO, "silent_adposition",
                                         "prati left implicit for an animate recipient",
                                         f"sentence {sentence + 1}"))
        return self.fill(rule, fill)

    def _note(self, applied, entry, surface, sentence):
        for rule in applied:
            self.notes.append(Diagnostic(INFO, rule, f"{entry.surface(self.lang)} -> {surface}",
                                         f"sentence {sentence + 1}"))

    def fill(self, rule, fill):
        labels = [s.category if isinstance(s, NonTerminal) else s for s in rule.rhs]
        out = []
        for role in roles_for(labels, self.lang):
            out += fill[role]
        return out

    def sentence(self, s):
        boxes = [b for b in self.c.boxes if b.sentence == s]
        if not boxes:
            raise NoRealizingRule("sentence has no process to realise")
        if len(boxes) > 1:
            self.pick_rule(["S", "S"])
        tokens = []
        for b in boxes:
            tokens += self.clause(b, s)
        if tokens:
            tokens[0] = tokens[0][:1].upper() + tokens[0][1:]
        return tokens


def linearize_target(c, tgt, lex, source_lang=None, notes=None):
    """Token lists, one per source sentence (``None`` where realisation fails)."""
    notes = notes if notes is not None else []
    r = _Realizer(c, tgt, lex, source_lang, notes)
    sentences = sorted({b.sentence for b in c.boxes} | {m.sentence for m in c.mentions})
    out = {}
    for s in sentences:
        out[s] = r.sentence(s)
    return [out[s] for s in sentences]


def _source_terminal_check(tree, lex, src, tgt):
    """First leaf with no translation (copula and grammar literals excepted)."""
    for _, leaf in tree.leaves():
        a = leaf.analysis
        if a is None:
            continue
        if not lex.translations(a.lemma, src, tgt):
            raise UntranslatableTerminal(leaf.label.surface)


def translate_text(text, src, tgt, lex, context=None):
    src_lang, tgt_lang = normalize_lang(src.language), normalize_lang(tgt.language)
    if src_lang == tgt_lang:
        raise ValueError("source and target language are the same")
    sentences = tokenize(text) if isinstance(text, str) else [list(s) for s in text]
    diags = []
    result = TranslationResult([None] * len(sentences), diags)

    def error(exc, where):
        diags.append(Diagnostic(ERROR, getattr(exc, "code", type(exc).__name__), str(exc), where))

    trees, index = [], []
    for i, tokens in enumerate(sentences):
        where = f"sentence {i + 1}"
        try:
            spans = lex.idiom_spans(tokens, src_lang)
            if spans:
                start, stop, _ = spans[0]
                raise IdiomDetected(f"idiom {' '.join(tokens[start:stop])!r} has no "
                                    "compositional translation")
            t = parse(src, tokens, lex)
            _source_terminal_check(t, lex, src_lang, tgt_lang)
        except DiscoError as exc:
            error(exc, where)
            continue
        for _, leaf in t.leaves():
            a = leaf.analysis
            if a is None:
                continue
            for kind in a.stripped:
                diags.append(Diagnostic(INFO, kind, f"{leaf.label.surface} -> {a.lemma}", where))
            for note in a.notes:
                diags.append(Diagnostic(WARNING, "untranslated_marker", note, where))
        trees.append(t)
        index.append(i)
    if not trees:
        return result
    try:
        text_tree = link_text(trees, lex, src_lang)
        circuit = diagram_to_circuit(normalize(tree_to_diagram(text_tree)))
    except DiscoError as exc:
        for i in index:
            error(exc, f"sentence {i + 1}")
        return result
    result.source_circuit = circuit
    for noun, assignment in parse_context(context).items():
        try:
            wire = circuit.wire_index(noun)
        except KeyError:
            continue
        for name, value in assignment.items():
            circuit = apply_update(circuit, wire, (name, value))
            diags.append(Diagnostic(INFO, "context", f"{noun}: {name}={value}"))
    for event in infer_attributes(circuit, src_lang):
        circuit = apply_update(circuit, event.wire, event, position=event.sentence)
        diags.append(Diagnostic(INFO, "update", f"[{event}]",
                                f"sentence {index[event.sentence] + 1}"))
    try:
        relabelled = relabel(circuit, lex, (src_lang, tgt_lang))
    except DiscoError as exc:
        for i in index:
            error(exc, f"sentence {i + 1}")
        return result
    result.target_circuit = relabelled
    r = _Realizer(relabelled, tgt, lex, src_lang, diags)
    for k, i in enumerate(index):
        where = f"sentence {i + 1}"
        try:
            tokens = r.sentence(k)
        except DiscoError as exc:
            error(exc, where)
            continue
        en_terms, bn_terms = (sentences[i], tokens) if src_lang == EN else (tokens, sentences[i])
        check = check_surjection_condition(lex, en_terms, bn_terms)
        if not check:
            diags.append(Diagnostic(WARNING, "ConditionFailed",
                                    f"terminal condition fails at {check.witness!r}", where))
        result.sentences[i] = tokens
    return result
