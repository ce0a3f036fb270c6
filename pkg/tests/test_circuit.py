import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discocirc.circuit import (apply_events, apply_update, circuits_equal,
                               diagram_to_circuit, infer_attributes)
from discocirc.diagram import normalize, tree_to_diagram
from discocirc.errors import AttributeConflict, ConditionFailed, UnresolvedPronoun
from discocirc.grammar import link_text, merge_pronominal, parse
from discocirc.lexicon import check_bijection

from support import parallel_text, text_circuit

LOVES_EN = "Millie loves Billie. Billie is handsome"
LOVES_BN = "Millie Billiekē bhālōbāsē. Billie sudarśana"
HE_EN = "Millie loves Billie. He is handsome"
SE_BN = "Millie Billiekē bhālōbāsē. Sē sudarśana"


def relative_give(bn, lex):
    t1 = parse(bn, ["Millie", "Billiekē", "bhālōbāsē"], lex)
    t2 = parse(bn, ["Millie", "Billiekē", "chocolate", "dēẏa"], lex)
    m = merge_pronominal(t1, t2, "relative_resumptive", lex, bn)
    return diagram_to_circuit(normalize(tree_to_diagram(m)))


def permuted(c, perm):
    """``c`` with wire i moved to position perm[i]."""
    wires = [None] * len(c.wires)
    for i, w in enumerate(c.wires):
        wires[perm[i]] = w

    def box(b):
        return replace(b, operands=tuple(perm[o] for o in b.operands),
                       nested=tuple(box(x) for x in b.nested))

    return replace(c, wires=tuple(wires), boxes=tuple(box(b) for b in c.boxes),
                   updates=tuple(replace(u, wire=perm[u.wire]) for u in c.updates),
                   mentions=tuple(replace(m, wire=perm[m.wire]) for m in c.mentions))


def test_copula_text_english(en, lex):
    c = text_circuit(LOVES_EN, en, lex)
    assert [w.label for w in c.wires] == ["Millie", "Billie"]
    loves, handsome = c.boxes
    assert (loves.kind, loves.terminal, loves.operands) == ("verb", "loves", (0, 1))
    assert (handsome.kind, handsome.terminal, handsome.operands) == ("adjective", "handsome", (1,))
    assert "is" not in [b.terminal for b in c.all_boxes()]


def test_copula_text_languages_agree(en, bn, lex):
    assert circuits_equal(text_circuit(LOVES_EN, en, lex), text_circuit(LOVES_BN, bn, lex), lex=lex)


def test_relative_give_bengali(bn, lex):
    c = relative_give(bn, lex)
    assert [w.label for w in c.wires] == ["Millie", "Billie", "chocolate"]
    loves, frame = c.boxes
    assert loves.terminal == "bhālōbāsē"
    assert frame.kind == "adposition_frame" and frame.terminal == "prati"
    assert frame.operands == (0, 1)
    (give,) = frame.nested
    assert give.terminal == "dēẏa" and give.operands == (0, 2)


def test_relative_give_matches_english(en, bn, lex):
    b = relative_give(bn, lex)
    e = text_circuit("Millie loves Billie. Millie gives chocolate to Billie", en, lex)
    assert circuits_equal(e, b, lex=lex) and circuits_equal(b, e, lex=lex)
    wrong = text_circuit("Billie loves Millie. Billie gives chocolate to Millie", en, lex)
    assert not circuits_equal(wrong, b, lex=lex)


def test_single_intransitive(en, lex):
    c = text_circuit("Millie sleeps", en, lex)
    assert len(c.wires) == 1 and len(c.boxes) == 1


def test_identity_and_mapping(en, bn, lex):
    c = text_circuit(LOVES_EN, en, lex)
    assert circuits_equal(c, c)
    b = text_circuit("Millie Billiekē bhālōbāsē", bn, lex)
    e = text_circuit("Millie loves Billie", en, lex)
    mapping = {"Millie": "Millie", "Billie": "Billie", "loves": "bhālōbāsē"}
    assert circuits_equal(e, b, mapping)
    assert not circuits_equal(e, b)


def test_condition_failure(en, bn, lex):
    e = text_circuit("Millie sees book", en, lex)
    b = text_circuit("Millie bhāta khāẏa", bn, lex)
    with pytest.raises(ConditionFailed):
        circuits_equal(e, b, lex=lex)


def test_reflexive_uses_one_wire(bn, lex):
    c = text_circuit("Millie nijēkē dēkhē", bn, lex)
    (box,) = c.boxes
    assert len(c.wires) == 1 and box.operands == (0, 0)


def test_unresolved_pronoun(en, lex):
    with pytest.raises(UnresolvedPronoun):
        text_circuit("He sleeps", en, lex)
    # first and second person need no antecedent
    assert len(text_circuit("you sleeps", en, lex).wires) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_wire_permutation_invariance(seed):
    from discocirc.resources import default_grammar, default_lexicon
    lex, en = default_lexicon(), default_grammar("EN")
    rng = random.Random(seed)
    sentences, _ = parallel_text(rng, lex)
    c = text_circuit(". ".join(" ".join(s) for s in sentences), en, lex)
    perm = list(range(len(c.wires)))
    rng.shuffle(perm)
    assert circuits_equal(c, permuted(c, perm))
    assert circuits_equal(permuted(c, perm), c)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_parallel_texts_give_equal_circuits(seed):
    from discocirc.resources import default_grammar, default_lexicon
    lex = default_lexicon()
    en, bn = default_grammar("EN"), default_grammar("BN")
    s_e, s_b = parallel_text(random.Random(seed), lex)
    bij = check_bijection(lex, [t for s in s_e for t in s], [t for s in s_b for t in s])
    assert bij
    ce = diagram_to_circuit(normalize(tree_to_diagram(
        link_text([parse(en, s, lex) for s in s_e], lex, "EN"))))
    cb = diagram_to_circuit(normalize(tree_to_diagram(
        link_text([parse(bn, s, lex) for s in s_b], lex, "BN"))))
    assert circuits_equal(ce, cb, bij.mapping)


def test_apply_update_examples(en, bn, lex):
    c = text_circuit(HE_EN, en, lex)
    u = apply_update(c, "Billie", ("animacy", "animate"), position=1)
    (node,) = u.updates
    assert node.wire == 1 and node.value == "animate"
    assert u.wires[1].attributes.animacy == "animate"
    assert node.position == c.boxes[1].sentence       # sits before the handsome box
    b = text_circuit(SE_BN, bn, lex)
    m = apply_update(b, "Billie", {"gender": "male"})
    assert m.wires[1].attributes.gender == "male" and len(m.updates) == 1


def test_apply_update_idempotent_and_conflict(en, lex):
    c = text_circuit(HE_EN, en, lex)
    once = apply_update(c, "Billie", ("gender", "male"))
    assert apply_update(once, "Billie", ("gender", "male")) == once
    with pytest.raises(AttributeConflict):
        apply_update(once, "Billie", ("gender", "female"))
    with pytest.raises(AttributeConflict):
        apply_update(c, "Millie", ("gender", "male"))


def test_update_ignored_unless_attribute_sensitive(en, lex):
    c = text_circuit(HE_EN, en, lex)
    u = apply_update(c, "Billie", ("gender", "male"))
    assert circuits_equal(c, u)
    assert not circuits_equal(c, u, attributes=True)
    assert circuits_equal(u, u, attributes=True)


def test_infer_english(en, lex):
    events = infer_attributes(text_circuit(HE_EN, en, lex), "EN")
    assert [str(e) for e in events] == ["Billie: person", "Billie: male"]


def test_infer_bengali(bn, lex):
    events = infer_attributes(text_circuit("Millie Billiekē bhālōbāsē", bn, lex), "BN")
    assert [str(e) for e in events] == ["Billie: animate"]
    c = text_circuit("Millie bhāta khan", bn, lex)
    assert [(e.attribute, e.value) for e in infer_attributes(c, "BN")] == [("honorific", "formal")]


def test_infer_nothing(en, lex):
    assert infer_attributes(text_circuit("Millie eats rice", en, lex), "EN") == []


def test_apply_events(en, lex):
    c = text_circuit(HE_EN, en, lex)
    u = apply_events(c, infer_attributes(c, "EN"))
    billie = u.wires[1].attributes
    assert (billie.animacy, billie.gender) == ("animate", "male")
    assert [x.label for x in u.updates] == ["person", "male"]


PREFIX_TEXTS = [
    ["Millie loves Billie", "He is handsome", "Millie sees Lily"],
    ["Millie Billiekē bhālōbāsē", "Sē sudarśana", "Lily bhāta khan"],
    ["Millie eats rice", "Lily is pretty", "She sleeps"],
]


@pytest.mark.parametrize("sentences", PREFIX_TEXTS)
def test_inference_is_prefix_monotone(sentences, en, bn, lex):
    g = bn if sentences[0].endswith("bhālōbāsē") else en
    previous = []
    for k in range(1, len(sentences) + 1):
        c = text_circuit(". ".join(sentences[:k]), g, lex)
        events = infer_attributes(c, g.language)
        assert events[:len(previous)] == previous
        previous = events
