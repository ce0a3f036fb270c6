"""Text diagrams: a typed-wire graph built from parse trees.

Every noun participant is one NP wire running top to bottom.  Words sit on
the wires they act on: nouns and pronouns on their own wire, an
intransitive verb or an adjective on one wire, a transitive verb on two.
Adverbs and adpositions attach to the verb they modify.  Conjunctions and
sentential-complement verbs own phase bubbles around whole clauses.

Wire endpoints are tuples: ``("in", i)`` / ``("out", i)`` for the top and
bottom boundary, ``("v", vertex_id, port)`` for a vertex port.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping

from .errors import DanglingPlug, DiagramError, NotBijective, TypeMismatch, UnsupportedConstruct
from .grammar import TEXT_RULE, _noun_leaf_path, clause_roles, mentions
from .lexicon import CheckResult

NP_WIRE = "NP"
GATE_PORTS = {"swap": (2, 2), "cup": (2, 0), "cap": (0, 2), "merge": (2, 1), "copy": (1, 2)}


@dataclass(frozen=True)
class WordVertex:
    terminal: str
    pos: str | None
    lemma: str
    arity: int
    roles: tuple = ()
    sentence: int = 0
    clause: tuple = ()
    role: str | None = None
    pronoun: str | None = None
    analysis: object = field(default=None, compare=False, repr=False)

    @property
    def ports(self):
        return self.arity, self.arity


@dataclass(frozen=True)
class GateVertex:
    kind: str

    def __post_init__(self):
        if self.kind not in GATE_PORTS:
            raise DiagramError(f"unknown gate {self.kind!r}")

    @property
    def ports(self):
        return GATE_PORTS[self.kind]


@dataclass(frozen=True)
class Wire:
    src: tuple
    tgt: tuple
    type: str = NP_WIRE


@dataclass(frozen=True)
class PhaseBubble:
    owner: int
    members: frozenset


@dataclass(frozen=True)
class TextDiagram:
    vertices: Mapping[int, object]
    wires: tuple
    n_inputs: int
    n_outputs: int
    bubbles: tuple = ()
    attachments: tuple = ()
    language: str | None = None

    def vertex(self, vid):
        return self.vertices[vid]

    def word_vertices(self):
        return [(vid, v) for vid, v in sorted(self.vertices.items()) if isinstance(v, WordVertex)]

    def wire_into(self, endpoint):
        for w in self.wires:
            if w.tgt == endpoint:
                return w
        raise DiagramError(f"nothing plugged into {endpoint}")

    def wire_from(self, endpoint):
        for w in self.wires:
            if w.src == endpoint:
                return w
        raise DiagramError(f"nothing plugged out of {endpoint}")


def _endpoint_key(e):
    order = {"in": 0, "v": 1, "out": 2}
    return (order[e[0]],) + tuple(e[1:])


def canonical(d):
    """Same diagram with wires, bubbles and attachments in sorted order."""
    wires = tuple(sorted(d.wires, key=lambda w: (_endpoint_key(w.src), _endpoint_key(w.tgt))))
    bubbles = tuple(sorted(d.bubbles, key=lambda b: (b.owner, sorted(b.members))))
    vertices = dict(sorted(d.vertices.items()))
    return replace(d, vertices=vertices, wires=wires, bubbles=bubbles,
                   attachments=tuple(sorted(d.attachments)))


def validate(d):
    """Raise DiagramError unless ``d`` is well formed."""
    seen_src, seen_tgt = set(), set()
    for w in d.wires:
        if w.type != NP_WIRE:
            raise TypeMismatch(f"wire typed {w.type}")
        if w.src in seen_src or w.tgt in seen_tgt:
            raise DiagramError(f"port used twice: {w}")
        seen_src.add(w.src)
        seen_tgt.add(w.tgt)
    expected_src = {("in", i) for i in range(d.n_inputs)}
    expected_tgt = {("out", i) for i in range(d.n_outputs)}
    for vid, v in d.vertices.items():
        n_in, n_out = v.ports
        expected_tgt |= {("v", vid, k) for k in range(n_in)}
        expected_src |= {("v", vid, k) for k in range(n_out)}
        if isinstance(v, WordVertex):
            _check_arity(v)
    if seen_src != expected_src or seen_tgt != expected_tgt:
        raise DiagramError("dangling or unknown ports")
    for mod, target in d.attachments:
        if mod not in d.vertices or target not in d.vertices:
            raise DiagramError("attachment to a missing vertex")
    _check_bubbles(d)
    topological_order(d)


def _check_arity(v):
    allowed = {"NP": (1,), "IVP": (1,), "ADJ": (1,), "TVP": (2, 3), "ADP": (2,),
               "ADV": (0,), "CNJ": (0,), "SCV": (1,), None: (1,)}
    if v.arity not in allowed.get(v.pos, (v.arity,)):
        raise DiagramError(f"{v.pos} vertex {v.terminal!r} has arity {v.arity}")


def _neighbours(d):
    adj = {vid: set() for vid in d.vertices}
    for w in d.wires:
        if w.src[0] == "v" and w.tgt[0] == "v":
            adj[w.src[1]].add(w.tgt[1])
            adj[w.tgt[1]].add(w.src[1])
    for a, b in d.attachments:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _check_bubbles(d):
    adj = _neighbours(d)
    for b in d.bubbles:
        members = set(b.members)
        if not members:
            continue
        start = min(members)
        seen, todo = {start}, [start]
        while todo:
            for n in adj[todo.pop()] & members:
                if n not in seen:
                    seen.add(n)
                    todo.append(n)
        if seen != members:
            raise DiagramError(f"bubble of vertex {b.owner} is not connected")
    for b1 in d.bubbles:
        for b2 in d.bubbles:
            m1, m2 = set(b1.members), set(b2.members)
            if m1 & m2 and not (m1 <= m2 or m2 <= m1):
                raise DiagramError("bubbles overlap partially")


def topological_order(d):
    indeg = {vid: 0 for vid in d.vertices}
    succ = {vid: [] for vid in d.vertices}
    for w in d.wires:
        if w.src[0] == "v" and w.tgt[0] == "v":
            succ[w.src[1]].append(w.tgt[1])
            indeg[w.tgt[1]] += 1
    ready = sorted(v for v, n in indeg.items() if n == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for s in succ[v]:
            indeg[s] -= 1
            if indeg[s] == 0:
                ready.append(s)
                ready.sort()
    if len(order) != len(d.vertices):
        raise DiagramError("diagram has a cycle")
    return order


class _Builder:
    def __init__(self, referents):
        self.vertices = {}
        self.wires = []
        self.bubbles = []
        self.attachments = []
        self.frontier = {key: ("in", i) for i, key in enumerate(referents)}
        self.referents = list(referents)

    def _vertex(self, vertex):
        vid = len(self.vertices)
        self.vertices[vid] = vertex
        return vid

    def add(self, vertex, operands=()):
        # a referent filling two ports (reflexives) is copied in and merged out
        ends = {}
        for key in set(operands):
            k = operands.count(key)
            if k == 1:
                ends[key] = [self.frontier[key]]
                continue
            strands = [self.frontier[key]]
            while len(strands) < k:
                cp = self._vertex(GateVertex("copy"))
                self.wires.append(Wire(strands.pop(), ("v", cp, 0)))
                strands += [("v", cp, 0), ("v", cp, 1)]
            ends[key] = strands
        vid = self._vertex(vertex)
        outs = {}
        for port, key in enumerate(operands):
            self.wires.append(Wire(ends[key].pop(0), ("v", vid, port)))
            outs.setdefault(key, []).append(("v", vid, port))
        for key, strands in outs.items():
            while len(strands) > 1:
                mg = self._vertex(GateVertex("merge"))
                self.wires.append(Wire(strands.pop(0), ("v", mg, 0)))
                self.wires.append(Wire(strands.pop(0), ("v", mg, 1)))
                strands.insert(0, ("v", mg, 0))
            self.frontier[key] = strands[0]
        return vid

    def finish(self, language):
        for i, key in enumerate(self.referents):
            self.wires.append(Wire(self.frontier[key], ("out", i)))
        n = len(self.referents)
        return canonical(TextDiagram(dict(self.vertices), tuple(self.wires), n, n,
                                     tuple(self.bubbles), tuple(self.attachments), language))


def _tree_language(t):
    for _, leaf in t.leaves():
        return leaf.label.lang
    return None


def tree_to_diagram(t):
    """Text diagram of a sentence, compound sentence or linked text tree."""
    lang = _tree_language(t)
    if lang is None:
        return TextDiagram({}, (), 0, 0)
    ref_of, info = {}, {}
    for m in mentions(t, lang):
        leaf, path = m["leaf"], m["path"]
        a = leaf.analysis
        if leaf.link is not None:
            key = ref_of.get(leaf.link.antecedent, ("leaf", leaf.link.antecedent))
        elif m["role"] == "marker":
            key = ref_of[m["head"]]
        elif a is not None and a.pronoun is None:
            key = ("noun", a.lemma)
        else:
            key = ("leaf", path)
        ref_of[path] = key
        info[path] = m
    # a link may name a leaf that resolved to a noun key later in the pass
    for path, key in list(ref_of.items()):
        if key[0] == "leaf" and key[1] in ref_of and ref_of[key[1]] != key:
            ref_of[path] = ref_of[key[1]]
    referents = list(dict.fromkeys(ref_of[p] for p in sorted(ref_of)))
    b = _Builder(referents)

    def np_vertex(leaf, path, sentence):
        m = info[path]
        a = leaf.analysis
        pron = a.pronoun if a is not None else ("relative" if m["role"] == "marker" else None)
        lemma = a.lemma if a is not None else leaf.label.surface
        return b.add(WordVertex(leaf.label.surface, "NP", lemma, 1, ("self",), sentence,
                                m["clause"], m["role"], pron, a), [ref_of[path]])

    def visit(node, prefix, sentence):
        created = []
        if node.rule_id == TEXT_RULE:
            for i, child in enumerate(node.children):
                visit(child, prefix + (i,), i)
            return created
        roles = clause_roles(node, lang)
        cats = [c.label.category if not c.is_leaf else None for c in node.children]

        def add(vertex, operands=()):
            vid = b.add(vertex, operands)
            created.append(vid)
            return vid

        def add_np(child, path):
            for lp, leaf in child.leaves(path):
                if lp in info:
                    created.append(np_vertex(leaf, lp, sentence))

        def word(child, role, arity, operands, roles_=()):
            leaf = child.children[0] if not child.is_leaf else child
            a = leaf.analysis
            lemma = a.lemma if a is not None else leaf.label.surface
            pos = None if child.is_leaf else child.label.category
            return add(WordVertex(leaf.label.surface, pos, lemma, arity, roles_, sentence,
                                  prefix, role, None, a), operands)

        if "CNJ" in cats:
            k = cats.index("CNJ")
            owner = word(node.children[k], "conjunction", 0, ())
            for i, child in enumerate(node.children):
                if cats[i] == "S":
                    members = visit(child, prefix + (i,), sentence)
                    created.extend(members)
                    b.bubbles.append(PhaseBubble(owner, frozenset(members)))
            return created
        if "SCV" in cats:
            subj = cats.index("NP")
            add_np(node.children[subj], prefix + (subj,))
            key = ref_of[_noun_leaf_path(node.children[subj], prefix + (subj,))]
            owner = word(node.children[cats.index("SCV")], "scv", 1, [key], ("subject",))
            comp = cats.index("S")
            members = visit(node.children[comp], prefix + (comp,), sentence)
            created.extend(members)
            b.bubbles.append(PhaseBubble(owner, frozenset(members)))
            return created
        if cats and all(c == "S" for c in cats):
            for i, child in enumerate(node.children):
                created.extend(visit(child, prefix + (i,), sentence))
            return created
        # simple clause
        keys = {}
        for i, child in enumerate(node.children):
            if cats[i] == "NP":
                add_np(child, prefix + (i,))
                keys[roles[i]] = ref_of[_noun_leaf_path(child, prefix + (i,))]
        verb = None
        for i, child in enumerate(node.children):
            role = roles[i]
            if cats[i] == "TVP":
                if "recipient" in keys and "ADP" not in cats:
                    order = ("subject", "object", "recipient")
                else:
                    order = ("subject", "object")
                verb = word(child, "verb", len(order), [keys[r] for r in order], order)
            elif cats[i] == "IVP":
                verb = word(child, "verb", 1, [keys["subject"]], ("subject",))
            elif role == "copula":
                word(child, "copula", 1, [keys["subject"]], ("subject",))
            elif cats[i] == "ADJ":
                word(child, "predicate", 1, [keys["subject"]], ("subject",))
        for i, child in enumerate(node.children):
            if cats[i] == "ADV":
                vid = word(child, "adverb", 0, ())
                if verb is None:
                    raise UnsupportedConstruct("adverb without a verb")
                b.attachments.append((vid, verb))
            elif cats[i] == "ADP":
                if verb is None or "adp_object" not in keys:
                    raise UnsupportedConstruct("adposition without verb or object")
                vid = word(child, "adposition", 2, [keys["subject"], keys["adp_object"]],
                           ("subject", "adp_object"))
                b.attachments.append((vid, verb))
            elif cats[i] not in ("NP", "TVP", "IVP", "ADJ") and roles[i] not in ("copula",):
                raise UnsupportedConstruct(f"no diagram schema for {cats[i] or roles[i]}")
        return created

    if t.is_leaf or t.label.category != "S":
        # a bare phrase, e.g. NP(Millie)
        for path, leaf in t.leaves():
            if path in info:
                np_vertex(leaf, path, 0)
        return b.finish(lang)
    visit(t, (), 0)
    return b.finish(lang)


def compose_sequential(d1, d2, plugging):
    """Plug d2's top boundary into d1's bottom boundary.

    ``plugging`` maps d2 input index -> d1 output index.  Unplugged d1
    outputs come first in the new bottom boundary, then d2's outputs;
    unplugged d2 inputs are appended to the top boundary.
    """
    plugging = dict(plugging)
    for i, j in plugging.items():
        if not (0 <= i < d2.n_inputs) or not (0 <= j < d1.n_outputs):
            raise DanglingPlug(f"plug {i}->{j} names a non-boundary port")
    if len(set(plugging.values())) != len(plugging):
        raise DanglingPlug("plugging is not injective")
    for i, j in plugging.items():
        t1 = d1.wire_into(("out", j)).type
        t2 = d2.wire_from(("in", i)).type
        if t1 != t2:
            raise TypeMismatch(f"cannot plug {t2} into {t1}")
    offset = max(d1.vertices, default=-1) + 1
    free_out = [j for j in range(d1.n_outputs) if j not in plugging.values()]
    free_in = [i for i in range(d2.n_inputs) if i not in plugging]
    out_map1 = {j: k for k, j in enumerate(free_out)}
    out_map2 = {j: len(free_out) + j for j in range(d2.n_outputs)}
    in_map2 = {i: d1.n_inputs + k for k, i in enumerate(free_in)}
    back = {j: i for i, j in plugging.items()}

    def remap2(e, side):
        if e[0] == "v":
            return ("v", e[1] + offset, e[2])
        if e[0] == "out":
            return ("out", out_map2[e[1]])
        return ("in", in_map2[e[1]])

    wires = []
    for w in d1.wires:
        if w.tgt[0] == "out":
            j = w.tgt[1]
            if j in back:
                w2 = d2.wire_from(("in", back[j]))
                wires.append(Wire(w.src, remap2(w2.tgt, "tgt"), w.type))
            else:
                wires.append(Wire(w.src, ("out", out_map1[j]), w.type))
        else:
            wires.append(w)
    for w in d2.wires:
        if w.src[0] == "in" and w.src[1] in plugging:
            continue
        wires.append(Wire(remap2(w.src, "src"), remap2(w.tgt, "tgt"), w.type))
    vertices = dict(d1.vertices)
    vertices.update({vid + offset: v for vid, v in d2.vertices.items()})
    bubbles = d1.bubbles + tuple(PhaseBubble(b.owner + offset,
                                             frozenset(m + offset for m in b.members))
                                 for b in d2.bubbles)
    attachments = d1.attachments + tuple((a + offset, t + offset) for a, t in d2.attachments)
    return canonical(TextDiagram(vertices, tuple(wires), d1.n_inputs + len(free_in),
                                 len(free_out) + d2.n_outputs, bubbles, attachments,
                                 d1.language or d2.language))


def find_redexes(d):
    """All rewrite sites as ("yank", cap, cup) or ("swaps", first, second)."""
    found = []
    gates = {vid: v.kind for vid, v in d.vertices.items() if isinstance(v, GateVertex)}
    links = {}
    for w in d.wires:
        if w.src[0] == "v" and w.tgt[0] == "v":
            links.setdefault((w.src[1], w.tgt[1]), []).append(w)
    for (a, c), ws in sorted(links.items()):
        ka, kc = gates.get(a), gates.get(c)
        if ka == "cap" and kc == "cup" and len(ws) == 1:
            # skip bends whose free ends are joined through other vertices:
            # straightening those would close a feedback loop
            src = [w.src for w in d.wires if w.tgt[:2] == ("v", c) and w is not ws[0]][0]
            tgt = [w.tgt for w in d.wires if w.src[:2] == ("v", a) and w is not ws[0]][0]
            if src[0] == "v" and tgt[0] == "v" and _reaches(d, tgt[1], src[1]):
                continue
            found.append(("yank", a, c))
        elif ka == "swap" and kc == "swap" and len(ws) == 2:
            found.append(("swaps", a, c))
    return found


def _reaches(d, start, goal):
    succ = {}
    for w in d.wires:
        if w.src[0] == "v" and w.tgt[0] == "v":
            succ.setdefault(w.src[1], []).append(w.tgt[1])
    seen, todo = {start}, [start]
    while todo:
        v = todo.pop()
        if v == goal:
            return True
        for n in succ.get(v, ()):
            if n not in seen:
                seen.add(n)
                todo.append(n)
    return False


def _rewrite(d, redex):
    kind, a, c = redex
    wires = list(d.wires)
    if kind == "yank":
        (link,) = [w for w in wires if w.src[:2] == ("v", a) and w.tgt[:2] == ("v", c)]
        cup_in = [w for w in wires if w.tgt[:2] == ("v", c) and w is not link][0]
        cap_out = [w for w in wires if w.src[:2] == ("v", a) and w is not link][0]
        drop = {id(link), id(cup_in), id(cap_out)}
        new = [w for w in wires if id(w) not in drop]
        new.append(Wire(cup_in.src, cap_out.tgt, cup_in.type))
    else:
        into_first = {w.tgt[2]: w for w in wires if w.tgt[:2] == ("v", a)}
        between = {w.src[2]: w for w in wires if w.src[:2] == ("v", a)}
        out_second = {w.src[2]: w for w in wires if w.src[:2] == ("v", c)}
        new = [w for w in wires
               if w.tgt[:2] != ("v", a) and w.src[:2] != ("v", a) and w.src[:2] != ("v", c)]
        for k in (0, 1):
            mid = between[1 - k]
            m = mid.tgt[2]
            target = out_second[1 - m].tgt
            new.append(Wire(into_first[k].src, target, into_first[k].type))
    vertices = {vid: v for vid, v in d.vertices.items() if vid not in (a, c)}
    bubbles = tuple(PhaseBubble(b.owner, frozenset(b.members - {a, c})) for b in d.bubbles)
    return replace(d, vertices=vertices, wires=tuple(new), bubbles=bubbles)


def normalize(d, rng=None):
    """Apply the yanking and double-swap rewrites until none applies.

    Each rewrite deletes two vertices, so this terminates.  With ``rng``
    the next redex is picked at random (used to test confluence).
    """
    while True:
        redexes = find_redexes(d)
        if not redexes:
            return canonical(d)
        d = _rewrite(d, rng.choice(redexes) if rng is not None else redexes[0])


def _graph(d, relabel):
    labels, edges = {}, {}
    for i in range(d.n_inputs):
        labels[("in", i)] = ("in",)
    for i in range(d.n_outputs):
        labels[("out", i)] = ("out",)
    # Gate ports are interchangeable (cup, cap and merge inputs), so gates
    # drop port numbers; a swap becomes two crossing strand nodes.
    for vid, v in d.vertices.items():
        if isinstance(v, WordVertex):
            labels[("v", vid)] = ("word", v.pos, relabel(v))
        elif v.kind == "swap":
            labels[("s", vid, 0)] = labels[("s", vid, 1)] = ("gate", "swap")
        else:
            labels[("v", vid)] = ("gate", v.kind)

    def node(e, incoming):
        if e[0] != "v":
            return e[:2]
        if labels.get(("v", e[1])) is None:
            # swap strand: input k leaves on output 1 - k
            return ("s", e[1], e[2] if incoming else 1 - e[2])
        return e[:2]

    def port(e):
        if e[0] != "v" or not isinstance(d.vertices[e[1]], WordVertex):
            return None
        return e[2]

    def add(u, v, label):
        edges.setdefault((u, v), []).append(label)

    for w in d.wires:
        add(node(w.src, False), node(w.tgt, True), (w.type, port(w.src), port(w.tgt)))
    for vid, v in d.vertices.items():
        if isinstance(v, GateVertex) and v.kind == "swap":
            add(("s", vid, 0), ("s", vid, 1), ("cross",))
            add(("s", vid, 1), ("s", vid, 0), ("cross",))
    for m, t in d.attachments:
        add(("v", m), ("v", t), ("attach",))
    for k, b in enumerate(sorted(d.bubbles, key=lambda b: (b.owner, sorted(b.members)))):
        labels[("bubble", k)] = ("bubble",)
        add(("v", b.owner), ("bubble", k), ("owns",))
        for m in b.members:
            add(("bubble", k), ("v", m), ("member",))
    return labels, {k: tuple(sorted(v, key=repr)) for k, v in edges.items()}


def graphs_isomorphic(g1, g2):
    """Backtracking search for a label-preserving bijection between two graphs."""
    labels1, edges1 = g1
    labels2, edges2 = g2
    if sorted(map(repr, labels1.values())) != sorted(map(repr, labels2.values())):
        return False
    if sorted(map(repr, edges1.values())) != sorted(map(repr, edges2.values())):
        return False

    def signature(labels, edges):
        sig = {n: ([], []) for n in labels}
        for (u, v), ls in edges.items():
            sig[u][0].extend(ls)
            sig[v][1].extend(("in",) + l for l in ls)
        return {n: (labels[n], tuple(sorted(o, key=repr)), tuple(sorted(i, key=repr)))
                for n, (o, i) in sig.items()}

    sig1, sig2 = signature(labels1, edges1), signature(labels2, edges2)
    by_sig = {}
    for n, s in sig2.items():
        by_sig.setdefault(s, []).append(n)
    if sorted(map(repr, sig1.values())) != sorted(map(repr, sig2.values())):
        return False
    nbrs1 = {n: set() for n in labels1}
    for u, v in edges1:
        nbrs1[u].add(v)
        nbrs1[v].add(u)
    # rare signatures first, then grow along edges
    order, placed = [], set()
    for start in sorted(labels1, key=lambda n: (len(by_sig[sig1[n]]), repr(n))):
        if start in placed:
            continue
        queue = [start]
        placed.add(start)
        while queue:
            n = queue.pop(0)
            order.append(n)
            for m in sorted(nbrs1[n], key=repr):
                if m not in placed:
                    placed.add(m)
                    queue.append(m)
    mapping, used = {}, set()

    def consistent(u, v):
        if edges1.get((u, u)) != edges2.get((v, v)):
            return False
        for w, x in mapping.items():
            if edges1.get((u, w)) != edges2.get((v, x)) or edges1.get((w, u)) != edges2.get((x, v)):
                return False
        return True

    def search(k):
        if k == len(order):
            return True
        u = order[k]
        for v in by_sig[sig1[u]]:
            if v in used or not consistent(u, v):
                continue
            mapping[u] = v
            used.add(v)
            if search(k + 1):
                return True
            del mapping[u]
            used.discard(v)
        return False

    return search(0)


def diagrams_isomorphic(d_e, d_b, correspondence=None):
    """Are two normalised text diagrams isomorphic under a terminal bijection?

    ``correspondence`` is the result of ``check_bijection`` or a plain
    mapping from lemmas of ``d_e`` to lemmas of ``d_b``; ``None`` means
    the identity.
    """
    if isinstance(correspondence, CheckResult):
        if not correspondence.ok:
            raise NotBijective(f"no bijection: {correspondence.witness!r} has no unique image",
                               witness=correspondence.witness)
        correspondence = correspondence.mapping
    if correspondence is None:
        def relabel(v):
            return v.lemma
    else:
        mapping = dict(correspondence)
        if len(set(mapping.values())) != len(mapping):
            raise NotBijective("correspondence is not injective")
        for _, v in d_e.word_vertices():
            if v.lemma not in mapping:
                raise NotBijective(f"{v.lemma!r} has no image", witness=v.lemma)

        def relabel(v):
            return mapping[v.lemma]
    g1 = _graph(normalize(d_e), relabel)
    g2 = _graph(normalize(d_b), lambda v: v.lemma)
    return graphs_isomorphic(g1, g2)
