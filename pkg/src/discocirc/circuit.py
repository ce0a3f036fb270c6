"""Text circuits: noun wires with process boxes and attribute updates."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .diagram import GateVertex, topological_order
from .errors import AttributeConflict, ConditionFailed, UnresolvedPronoun, UnsupportedConstruct
from .lexicon import (ACCUSATIVE_KE, BN, COPULA, EN, GENDER_SUFFIX_I, SILENT_ADPOSITION,
                      UNKNOWN, NounAttributes, check_surjection_condition, normalize_lang)

BOX_KINDS = ("verb", "adjective", "adposition_frame", "conjunction_frame", "clause")


@dataclass(frozen=True)
class NounWire:
    label: str
    attributes: NounAttributes = NounAttributes()


@dataclass(frozen=True)
class ProcessBox:
    kind: str
    terminal: str
    operands: tuple
    nested: tuple = ()
    adverbs: tuple = ()
    surface: str = ""
    sentence: int = 0
    clause: tuple = ()
    roles: tuple = ()
    analysis: object = field(default=None, compare=False, repr=False)

    def walk(self):
        yield self
        for inner in self.nested:
            yield from inner.walk()


@dataclass(frozen=True)
class UpdateNode:
    wire: int
    attribute: str
    value: str
    label: str
    position: int = 0


@dataclass(frozen=True)
class Mention:
    wire: int
    surface: str
    lemma: str
    pronoun: str | None
    role: str | None
    sentence: int
    clause: tuple
    markers: tuple = ()
    analysis: object = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class UpdateEvent:
    wire: int
    noun: str
    attribute: str
    value: str
    label: str
    sentence: int = 0

    def __str__(self):
        return f"{self.noun}: {self.label}"


@dataclass(frozen=True)
class TextCircuit:
    wires: tuple
    boxes: tuple
    updates: tuple = ()
    mentions: tuple = ()
    terminals: tuple = ()
    language: str | None = None

    def all_boxes(self):
        for b in self.boxes:
            yield from b.walk()

    def boxes_on(self, wire):
        return [b for b in self.boxes if wire in b.operands]

    def wire_index(self, label):
        for i, w in enumerate(self.wires):
            if w.label == label:
                return i
        raise KeyError(label)


def _trace_wires(d):
    """Wire index carried by every vertex port, following NP wires from the top."""
    port_wire = {}
    by_src = {w.src: w for w in d.wires}
    for i in range(d.n_inputs):
        todo = [by_src[("in", i)]]
        seen = set()
        while todo:
            w = todo.pop()
            if w.tgt[0] != "v" or w.tgt in seen:
                continue
            seen.add(w.tgt)
            _, vid, port = w.tgt
            v = d.vertices[vid]
            port_wire[(vid, port)] = i
            if not isinstance(v, GateVertex):
                todo.append(by_src[("v", vid, port)])
            elif v.kind == "swap":
                todo.append(by_src[("v", vid, 1 - port)])
            elif v.kind == "copy":
                todo += [by_src[("v", vid, 1)], by_src[("v", vid, 0)]]
            elif v.kind == "merge":
                todo.append(by_src[("v", vid, 0)])
            else:
                raise UnsupportedConstruct(f"{v.kind} gate left in a normalised diagram")
    return port_wire


def diagram_to_circuit(d):
    """Read a normalised text diagram as a circuit."""
    port_wire = _trace_wires(d)
    order = topological_order(d)
    rank = {vid: k for k, vid in enumerate(sorted(d.vertices))}
    order = sorted(d.vertices, key=lambda v: rank[v]) if order else []
    words = {vid: v for vid, v in d.vertices.items() if not isinstance(v, GateVertex)}

    first_np, mentions = {}, []
    for vid in order:
        v = words.get(vid)
        if v is None or v.pos != "NP":
            continue
        wire = port_wire[(vid, 0)]
        first_np.setdefault(wire, v)
        a = v.analysis
        markers = tuple(a.stripped) if a is not None else ()
        mentions.append(Mention(wire, v.terminal, v.lemma, v.pronoun, v.role, v.sentence,
                                v.clause, markers, a))
    wires = []
    for i in range(d.n_inputs):
        v = first_np.get(i)
        if v is None:
            wires.append(NounWire(f"w{i}"))
            continue
        deictic = (v.analysis is not None and v.analysis.attributes is not None
                   and v.analysis.attributes.person != "third")
        if v.pronoun is not None and not deictic:
            raise UnresolvedPronoun(f"pronoun {v.terminal!r} has no antecedent", pronoun=v.terminal)
        attrs = v.analysis.base_attributes if v.analysis is not None else None
        wires.append(NounWire(v.lemma, attrs or NounAttributes()))

    adverbs, frames = {}, {}
    for mod, target in d.attachments:
        m = words[mod]
        if m.pos == "ADV":
            adverbs.setdefault(target, []).append(mod)
        else:
            frames[target] = mod
    attached = {mod for mod, _ in d.attachments}

    def operands(vid):
        v = words[vid]
        return tuple(port_wire[(vid, k)] for k in range(v.arity))

    def bubble_groups(owner):
        return [b for b in d.bubbles if b.owner == owner]

    def simple_box(vid, kind, nested=()):
        v = words[vid]
        advs = tuple(words[a].lemma for a in sorted(adverbs.get(vid, ())))
        return ProcessBox(kind, v.lemma, operands(vid), tuple(nested), advs, v.terminal,
                          v.sentence, v.clause, v.roles, v.analysis)

    def build(vid):
        v = words[vid]
        if v.pos == "ADJ":
            return simple_box(vid, "adjective")
        if v.pos in ("TVP", "IVP"):
            box = simple_box(vid, "verb")
            if v.arity == 3:
                # silent recipient: make the implicit adposition explicit
                subj, obj, rec = box.operands
                inner = replace(box, operands=(subj, obj), roles=("subject", "object"))
                return ProcessBox("adposition_frame", SILENT_ADPOSITION, (subj, rec), (inner,),
                                  (), "", v.sentence, v.clause, ("subject", "adp_object"))
            if vid in frames:
                return simple_box(frames[vid], "adposition_frame", (box,))
            return box
        if v.pos in ("CNJ", "SCV"):
            groups = []
            for b in bubble_groups(vid):
                inner = assemble(b.members)
                ops = tuple(sorted({o for x in inner for o in x.operands}))
                groups.append(ProcessBox("clause", "", ops, tuple(inner), sentence=v.sentence,
                                         clause=v.clause))
            if v.pos == "SCV":
                return simple_box(vid, "verb", groups)
            ops = tuple(sorted({o for g in groups for o in g.operands}))
            return ProcessBox("conjunction_frame", v.lemma, ops, tuple(groups), (), v.terminal,
                              v.sentence, v.clause, (), v.analysis)
        return None   # nouns, pronouns, copula

    def assemble(members):
        members = set(members)
        inner = set()
        for b in d.bubbles:
            if b.owner in members:
                inner |= set(b.members)
        out = []
        for vid in order:
            if vid not in members or vid in inner or vid in attached or vid not in words:
                continue
            box = build(vid)
            if box is not None:
                out.append(box)
        return out

    boxes = assemble(d.vertices)
    # pronouns and relative markers live on their antecedent's wire
    terminals = tuple(words[v].terminal for v in order
                      if v in words and words[v].pronoun is None)
    return TextCircuit(tuple(wires), tuple(boxes), (), tuple(mentions), terminals, d.language)


def _pair_ok(correspondence, lex, lang1, lang2):
    if correspondence is not None and not callable(correspondence):
        mapping = dict(correspondence)
        return lambda a, b: mapping.get(a, a) == b
    if callable(correspondence):
        return correspondence
    if lex is not None and lang1 and lang2 and lang1 != lang2:
        return lambda a, b: lex.correspond(a, b, lang1, lang2)
    return lambda a, b: a == b


def circuits_equal(c1, c2, correspondence=None, lex=None, attributes=False):
    """Equal up to wire reordering and a translation of terminals.

    ``correspondence`` is a lemma mapping, a predicate ``(a, b) -> bool``
    or ``None``; with ``lex`` and circuits of different languages the
    lexicon decides which terminals correspond, after checking the
    surjection condition on the two terminal sets (ConditionFailed).
    With ``attributes=True`` wire attributes and update nodes must
    coincide too.
    """
    l1, l2 = c1.language, c2.language
    if lex is not None and l1 and l2 and l1 != l2:
        en, bn = (c1, c2) if normalize_lang(l1) == EN else (c2, c1)
        res = check_surjection_condition(lex, en.terminals, bn.terminals)
        if not res:
            raise ConditionFailed(f"condition fails at {res.witness!r}", witness=res.witness)
    ok = _pair_ok(correspondence, lex, l1, l2)
    if len(c1.wires) != len(c2.wires) or len(c1.boxes) != len(c2.boxes):
        return False

    def box_match(b1, b2, perm):
        if b1.kind != b2.kind or len(b1.nested) != len(b2.nested):
            return False
        if b1.terminal != b2.terminal and not ok(b1.terminal, b2.terminal):
            return False
        if tuple(perm[o] for o in b1.operands) != b2.operands:
            return False
        if len(b1.adverbs) != len(b2.adverbs):
            return False
        if not all(a == b or ok(a, b) for a, b in zip(b1.adverbs, b2.adverbs)):
            return False
        return all(box_match(x, y, perm) for x, y in zip(b1.nested, b2.nested))

    def wire_ok(i, j):
        w1, w2 = c1.wires[i], c2.wires[j]
        if w1.label != w2.label and not ok(w1.label, w2.label):
            return False
        if attributes:
            if w1.attributes != w2.attributes:
                return False
            u1 = [(u.attribute, u.value, u.position) for u in c1.updates if u.wire == i]
            u2 = [(u.attribute, u.value, u.position) for u in c2.updates if u.wire == j]
            if u1 != u2:
                return False
        return True

    def full_check(perm):
        used = set()
        for b1 in c1.boxes:
            for k, b2 in enumerate(c2.boxes):
                if k not in used and box_match(b1, b2, perm):
                    used.add(k)
                    break
            else:
                return False
        for i in range(len(c1.wires)):
            s1, s2 = c1.boxes_on(i), c2.boxes_on(perm[i])
            if len(s1) != len(s2) or not all(box_match(x, y, perm) for x, y in zip(s1, s2)):
                return False
        return True

    perm, used = {}, set()

    def search(i):
        if i == len(c1.wires):
            return full_check(perm)
        for j in range(len(c2.wires)):
            if j in used or not wire_ok(i, j):
                continue
            perm[i] = j
            used.add(j)
            if search(i + 1):
                return True
            del perm[i]
            used.discard(j)
        return False

    return search(0)


def _assignment(attr):
    if isinstance(attr, UpdateEvent):
        return attr.attribute, attr.value, attr.label
    if isinstance(attr, dict):
        (name, value), = attr.items()
        return name, value, value
    name, value = attr
    return name, value, value


def apply_update(c, wire, attr, position=None):
    """Append an update node to ``wire`` and refine its attributes.

    ``wire`` is an index or a noun label; ``attr`` an UpdateEvent, a
    one-item dict or a ``(name, value)`` pair.
    """
    if not isinstance(wire, int):
        wire = c.wire_index(wire)
    name, value, label = _assignment(attr)
    w = c.wires[wire]
    if getattr(w.attributes, name) == value:
        return c
    refined = w.attributes.refine(**{name: value})
    if position is None:
        position = max((b.sentence for b in c.boxes if wire in b.operands), default=0)
    wires = list(c.wires)
    wires[wire] = replace(w, attributes=refined)
    node = UpdateNode(wire, name, value, label, position)
    return replace(c, wires=tuple(wires), updates=c.updates + (node,))


def _adjective_gender(box):
    a = box.analysis
    if a is None:
        return None
    if GENDER_SUFFIX_I in a.stripped:
        return "female"
    g = a.entry.adj_gender
    return g if g in ("male", "female") else None


def infer_attributes(c, source_lang=None):
    """Attribute events implied by the text, in sentence order.

    Only events that add information are emitted; an event that would
    contradict what is already known is dropped.
    """
    lang = normalize_lang(source_lang or c.language)
    state = {i: w.attributes for i, w in enumerate(c.wires)}
    events = []

    def emit(wire, name, value, label, sentence):
        current = getattr(state[wire], name)
        if current == value:
            return
        try:
            state[wire] = state[wire].refine(**{name: value})
        except AttributeConflict:
            return
        events.append(UpdateEvent(wire, c.wires[wire].label, name, value, label, sentence))

    sentences = sorted({m.sentence for m in c.mentions} | {b.sentence for b in c.all_boxes()})
    for s in sentences:
        ms = [m for m in c.mentions if m.sentence == s]
        bs = [b for b in c.all_boxes() if b.sentence == s]
        subjects = {m.clause: m for m in ms if m.role == "subject"}
        for m in ms:
            if lang == BN and ACCUSATIVE_KE in m.markers:
                emit(m.wire, "animacy", "animate", "animate", s)
        if lang == EN:
            for b in bs:
                subj = subjects.get(b.clause)
                if b.kind == "adjective" and subj is not None and subj.pronoun is not None:
                    emit(b.operands[0], "animacy", "animate", "person", s)
            for m in ms:
                if m.pronoun == "personal" and m.analysis is not None:
                    g = m.analysis.entry.attributes.gender if m.analysis.entry.attributes else None
                    if g in ("male", "female"):
                        emit(m.wire, "gender", g, g, s)
        for b in bs:
            if b.kind == "adjective":
                g = _adjective_gender(b)
                if g:
                    emit(b.operands[0], "gender", g, g, s)
        if lang == BN:
            for b in bs:
                a = b.analysis
                if b.kind == "verb" and a is not None and a.subject_honorific:
                    emit(b.operands[0], "honorific", a.subject_honorific, a.subject_honorific, s)
    return events


def apply_events(c, events):
    for e in events:
        c = apply_update(c, e.wire, e, position=e.sentence)
    return c


def circuit_lemmas(c):
    """Terminal lemmas used by boxes and wires (copula excluded)."""
    out = [w.label for w in c.wires]
    out += [b.terminal for b in c.all_boxes() if b.terminal]
    out += [a for b in c.all_boxes() for a in b.adverbs]
    return [x for x in out if x != COPULA and x != UNKNOWN]
