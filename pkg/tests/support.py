"""Shared test helpers: sentence and diagram generators and independent oracles."""

import itertools
import random

import networkx as nx

from discocirc.diagram import GATE_PORTS, GateVertex, TextDiagram, Wire, WordVertex, canonical
from discocirc.grammar import NonTerminal, Terminal, link_text, parse, tokenize
from discocirc.lexicon import BN, EN, apply_morphology
from discocirc.diagram import normalize, tree_to_diagram
from discocirc.circuit import diagram_to_circuit


def text_tree(text, g, lex):
    lang = g.language
    return link_text([parse(g, s, lex) for s in tokenize(text)], lex, lang)


def text_diagram(text, g, lex):
    return tree_to_diagram(text_tree(text, g, lex))


def text_circuit(text, g, lex):
    return diagram_to_circuit(normalize(text_diagram(text, g, lex)))


# sentence enumeration ------------------------------------------------------

def words_by_category(lex, lang, per_category=3):
    out = {}
    for e in lex.entries:
        s = e.surface(lang)
        if s is None or e.idiom or e.pronoun or " " in s:
            continue
        bucket = out.setdefault(e.pos, [])
        if s not in bucket and len(bucket) < per_category:
            bucket.append(s)
    return out


def enumerate_sentences(g, lex, limit=60, seed=0):
    """Token lists for every S rule, filled from the lexicon (compounds from two simples)."""
    words = words_by_category(lex, g.language)
    simple, compound = [], []
    for r in g.rules:
        if r.lhs.category != "S":
            continue
        cats = [s.category for s in r.rhs if isinstance(s, NonTerminal)]
        if "S" in cats:
            compound.append(r)
            continue
        slots = []
        for s in r.rhs:
            slots.append([s.surface] if isinstance(s, Terminal) else words[s.category])
        simple.extend(list(p) for p in itertools.product(*slots))
    rng = random.Random(seed)
    rng.shuffle(simple)
    out = simple[: limit // 2]
    for r in compound:
        for _ in range(limit // (2 * max(1, len(compound)))):
            toks = []
            for s in r.rhs:
                if isinstance(s, Terminal):
                    toks.append(s.surface)
                elif s.category == "S":
                    toks.extend(rng.choice(simple))
                else:
                    toks.append(rng.choice(words[s.category]))
            out.append(toks)
    return out


# parallel EN/BN derivations -----------------------------------------------

NOUNS = [("Millie", "Millie"), ("Lily", "Lily"), ("rice", "bhāta"), ("chocolate", "chocolate"),
         ("book", "bai"), ("flower", "phul"), ("guest", "atithi")]
TVPS = [("eats", "khāẏa"), ("loves", "bhālōbāsē"), ("sees", "dēkhē"), ("reads", "paṛē"),
        ("throws", "chũṛē")]
IVPS = [("runs", "dauṛāẏa"), ("sleeps", "ghumāẏa"), ("goes", "yāẏa"), ("comes", "āsē")]
ADVS = [("rarely", "kadācit"), ("often", "prāẏa'i"), ("quickly", "druta"),
        ("carefully", "sābadhānē")]
CNJS = [("and", "ēbaṁ"), ("but", "kintu")]
SCVS = [("knows", "jānē"), ("thinks", "bhābē")]


def _bn_object(lex, noun):
    entry = lex.lookup(noun, BN).entry
    return apply_morphology(entry, "object", entry.attributes, BN)


def _clause(rng, lex, depth=0):
    kind = rng.choice(["tv", "iv", "tv_adv", "iv_adv"] + (["cnj", "scv"] if depth == 0 else []))
    if kind in ("cnj", "scv"):
        e1, b1 = _clause(rng, lex, depth + 1)
        e2, b2 = _clause(rng, lex, depth + 1)
        if kind == "cnj":
            ce, cb = rng.choice(CNJS)
            return e1 + [ce] + e2, b1 + [cb] + b2
        se, sb = rng.choice(SCVS)
        ne, nb = rng.choice(NOUNS[:2])
        return [ne, se] + e2, [nb] + b2 + [sb]
    (se, sb) = rng.choice(NOUNS[:2] + [NOUNS[6]])
    adv = rng.choice(ADVS) if kind.endswith("adv") else None
    if kind.startswith("tv"):
        ve, vb = rng.choice(TVPS)
        oe, ob = rng.choice([n for n in NOUNS if n[0] != se])
        ob = _bn_object(lex, ob)
        if adv is None:
            return [se, ve, oe], [sb, ob, vb]
        placement = lex.lookup(adv[0], EN).entry.placement
        en = [se, adv[0], ve, oe] if placement != "postverbal" else [se, ve, oe, adv[0]]
        return en, [sb, adv[1], ob, vb]
    ve, vb = rng.choice(IVPS)
    if adv is None:
        return [se, ve], [sb, vb]
    placement = lex.lookup(adv[0], EN).entry.placement
    en = [se, adv[0], ve] if placement != "postverbal" else [se, ve, adv[0]]
    return en, [sb, adv[1], vb]


def parallel_text(rng, lex, max_sentences=3):
    """A random EN text and its word-for-word BN counterpart (lists of token lists)."""
    en, bn = [], []
    for _ in range(rng.randint(1, max_sentences)):
        e, b = _clause(rng, lex)
        en.append(e)
        bn.append(b)
    return en, bn


# random diagrams ------------------------------------------------------------

def random_diagram(rng, max_vertices=12):
    """A well-formed diagram mixing words and gates, biased towards rewrite sites."""
    n_in = rng.randint(1, 4)
    frontier = [("in", i) for i in range(n_in)]
    vertices, wires = {}, []
    budget = rng.randint(1, max_vertices)

    def add(vertex, ends):
        vid = len(vertices)
        vertices[vid] = vertex
        for port, e in enumerate(ends):
            wires.append(Wire(e, ("v", vid, port)))
        return vid

    def take(k):
        picks = rng.sample(range(len(frontier)), k)
        ends = [frontier[i] for i in picks]
        for i in sorted(picks, reverse=True):
            frontier.pop(i)
        return ends, min(picks)

    while len(vertices) < budget:
        room = budget - len(vertices)
        choice = rng.choice(["word", "word", "swap", "cap", "cup", "merge", "bend", "swaps"])
        if choice in ("bend", "swaps") and room < 2:
            choice = "word"
        if choice == "cap" or (choice == "bend" and len(frontier) < 1):
            vid = add(GateVertex("cap"), [])
            at = rng.randint(0, len(frontier))
            frontier[at:at] = [("v", vid, 0), ("v", vid, 1)]
        elif choice == "bend":
            # cap whose one leg is bent back into a cup with an existing end
            cap = add(GateVertex("cap"), [])
            (end,), at = take(1)
            legs = [("v", cap, 0), ("v", cap, 1)]
            rng.shuffle(legs)
            cup_ins = [end, legs[0]]
            rng.shuffle(cup_ins)
            add(GateVertex("cup"), cup_ins)
            frontier.insert(min(at, len(frontier)), legs[1])
        elif choice == "swaps" and len(frontier) >= 2:
            ends, at = take(2)
            s1 = add(GateVertex("swap"), ends)
            mids = [("v", s1, 0), ("v", s1, 1)]
            rng.shuffle(mids)
            s2 = add(GateVertex("swap"), mids)
            frontier[at:at] = [("v", s2, 0), ("v", s2, 1)]
        elif choice in ("swap", "merge", "cup") and len(frontier) >= 2:
            ends, at = take(2)
            vid = add(GateVertex(choice), ends)
            n_out = GATE_PORTS[choice][1]
            frontier[at:at] = [("v", vid, k) for k in range(n_out)]
        elif frontier:
            arity = rng.randint(1, min(2, len(frontier)))
            ends, at = take(arity)
            pos = "TVP" if arity == 2 else rng.choice(["IVP", "ADJ", "NP"])
            word = rng.choice(["a", "b", "c"])
            vid = add(WordVertex(word, pos, word, arity, ()), ends)
            frontier[at:at] = [("v", vid, k) for k in range(arity)]
        else:
            vid = add(GateVertex("cap"), [])
            frontier[:0] = [("v", vid, 0), ("v", vid, 1)]
    for i, e in enumerate(frontier):
        wires.append(Wire(e, ("out", i)))
    return canonical(TextDiagram(vertices, tuple(wires), n_in, len(frontier)))


# independent isomorphism oracles ------------------------------------------

def nx_graph(d, relabel=lambda v: v.lemma):
    """MultiDiGraph encoding built from the diagram fields, for networkx matching."""
    g = nx.MultiDiGraph()
    for i in range(d.n_inputs):
        g.add_node(("in", i), label="in")
    for i in range(d.n_outputs):
        g.add_node(("out", i), label="out")
    for vid, v in d.vertices.items():
        if isinstance(v, GateVertex):
            if v.kind == "swap":
                for k in (0, 1):
                    g.add_node(("strand", vid, k), label="swap")
                g.add_edge(("strand", vid, 0), ("strand", vid, 1), label="cross")
                g.add_edge(("strand", vid, 1), ("strand", vid, 0), label="cross")
            else:
                g.add_node(("v", vid), label=("gate", v.kind))
        else:
            g.add_node(("v", vid), label=("word", v.pos, relabel(v)))

    def end(e, incoming):
        if e[0] in ("in", "out"):
            return e[:2], None
        v = d.vertices[e[1]]
        if isinstance(v, GateVertex):
            if v.kind == "swap":
                return ("strand", e[1], e[2] if incoming else 1 - e[2]), None
            return ("v", e[1]), None
        return ("v", e[1]), e[2]

    for w in d.wires:
        (u, pu), (x, px) = end(w.src, False), end(w.tgt, True)
        g.add_edge(u, x, label=(w.type, pu, px))
    for m, t in d.attachments:
        g.add_edge(("v", m), ("v", t), label="attach")
    for k, b in enumerate(d.bubbles):
        g.add_node(("bubble", k), label="bubble")
        g.add_edge(("v", b.owner), ("bubble", k), label="owns")
        for m in b.members:
            g.add_edge(("bubble", k), ("v", m), label="member")
    return g


def nx_isomorphic(d1, d2, relabel1=lambda v: v.lemma, relabel2=lambda v: v.lemma):
    g1, g2 = nx_graph(d1, relabel1), nx_graph(d2, relabel2)

    def edge_match(a, b):
        return sorted(map(repr, (x["label"] for x in a.values()))) == \
            sorted(map(repr, (x["label"] for x in b.values())))

    return nx.is_isomorphic(g1, g2, node_match=lambda a, b: a["label"] == b["label"],
                            edge_match=edge_match)


def brute_force_isomorphic(d1, d2, relabel1=lambda v: v.lemma, relabel2=lambda v: v.lemma):
    """Try every vertex bijection (small diagrams only)."""
    if (d1.n_inputs, d1.n_outputs) != (d2.n_inputs, d2.n_outputs):
        return False
    v1, v2 = sorted(d1.vertices), sorted(d2.vertices)
    if len(v1) != len(v2):
        return False

    def label(d, v, relabel):
        x = d.vertices[v]
        return ("gate", x.kind) if isinstance(x, GateVertex) else (x.pos, relabel(x))

    for perm in itertools.permutations(v2):
        m = dict(zip(v1, perm))
        if any(label(d1, a, relabel1) != label(d2, m[a], relabel2) for a in v1):
            continue
        for pin in itertools.permutations(range(d1.n_inputs)):
            for pout in itertools.permutations(range(d1.n_outputs)):
                def mp(e):
                    if e[0] == "v":
                        return ("v", m[e[1]], e[2])
                    return (e[0], (pin if e[0] == "in" else pout)[e[1]])
                mapped = {(mp(w.src), mp(w.tgt)) for w in d1.wires}
                if mapped == {(w.src, w.tgt) for w in d2.wires}:
                    att = {(m[a], m[b]) for a, b in d1.attachments}
                    if att == set(d2.attachments):
                        return True
    return False
