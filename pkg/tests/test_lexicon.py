import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discocirc.errors import (AmbiguousPronoun, AttributeConflict, LexiconFormatError,
                              MissingAttribute, UnknownToken)
from discocirc.lexicon import (ACCUSATIVE_KE, GENDER_SUFFIX_I, HONORIFIC_AGREEMENT,
                               ATTRIBUTE_VALUES, NounAttributes, apply_morphology,
                               check_bijection, check_surjection_condition, inflect, load_lexicon)

HEADER = "en\tbn\tpos\tanimacy\tgender\thonorific\tplacement\tidiom\tfeatures\n"


def test_lookup_accusative(lex):
    a = lex.lookup("Billiekē", "BN")
    assert a.lemma == "Billie"
    assert a.stripped == (ACCUSATIVE_KE,)
    assert a.attributes.animacy == "animate"


def test_lookup_plain(lex):
    a = lex.lookup("Millie", "EN")
    assert a.lemma == "Millie" and a.stripped == ()


def test_lookup_gendered_adjective(lex):
    a = lex.lookup("sundarī", "BN")
    assert a.lemma == "sundara"
    assert a.entry.en_surface == "pretty"
    assert a.stripped == (GENDER_SUFFIX_I,)
    assert lex.implied_gender(a) == "female"


def test_lookup_honorific_verb(lex):
    a = lex.lookup("khan", "BN")
    assert a.lemma == "khāẏa" and a.subject_honorific == "formal"
    assert lex.lookup("khay", "BN").subject_honorific == "neutral"


def test_lookup_untranslated_marker_notes(lex):
    a = lex.lookup("Akṭōbarē", "BN")
    assert a.lemma == "Akṭōbar"
    assert a.notes


def test_lookup_unknown(lex):
    with pytest.raises(UnknownToken):
        lex.lookup("flurgs", "EN")


def test_untranslatable_rows_flagged(lex):
    drizzles = [e for e in lex.entries if e.en_surface == "drizzles"][0]
    assert drizzles.untranslatable
    assert not [e for e in lex.entries if e.en_surface == "eats"][0].untranslatable


def test_idioms_multi_token(lex):
    for e in lex.entries:
        if e.idiom:
            side = e.en_surface or e.bn_surface
            assert len(side.split()) > 1
    assert lex.idiom_spans("Millie is a piece of cake".split(), "EN")[0][:2] == (3, 6)


def test_format_errors():
    with pytest.raises(LexiconFormatError):
        load_lexicon(HEADER + "\t\tNP\t\t\t\t\t\t\n")
    with pytest.raises(LexiconFormatError):
        load_lexicon(HEADER + "x\ty\tXP\t\t\t\t\t\t\n")
    with pytest.raises(LexiconFormatError):
        load_lexicon(HEADER + "x\ty\tNP\tsometimes\t\t\t\t\t\n")


def test_bijection_examples(lex):
    ok = check_bijection(lex, ["Millie", "eats", "rice"], ["Millie", "khāẏa", "bhāta"])
    assert ok and ok.mapping == {"Millie": "Millie", "eats": "khāẏa", "rice": "bhāta"}
    bad = check_bijection(lex, ["Billie", "is", "handsome"], ["Billie", "sudarśana"])
    assert not bad and bad.witness == "is"
    assert check_bijection(lex, [], [])


def test_surjection_examples(lex):
    assert check_surjection_condition(lex, ["Billie", "is", "handsome"], ["Billie", "sudarśana"])
    r = check_surjection_condition(lex, ["Millie", "gives", "to", "Billie", "chocolate"],
                                   ["Millie", "dēẏa", "prati", "Billiekē", "chocolate"])
    assert r and r.mapping["to"] == "prati"
    bad = check_surjection_condition(lex, ["it", "drizzles"], [])
    assert not bad and bad.witness == "drizzles"


PAIRS = [(["Millie", "eats", "rice"], ["Millie", "khāẏa", "bhāta"]),
         (["Lily", "sees", "book"], ["Lily", "dēkhē", "bai"]),
         (["Millie", "rarely", "sleeps"], ["Millie", "kadācit", "ghumāẏa"])]


@pytest.mark.parametrize("s_e,s_b", PAIRS)
def test_bijection_implies_surjection(lex, s_e, s_b):
    assert check_bijection(lex, s_e, s_b)
    assert check_surjection_condition(lex, s_e, s_b)


def entry(lex, en=None, bn=None):
    return [e for e in lex.entries if (en is None or e.en_surface == en)
            and (bn is None or e.bn_surface == bn)][0]


def test_apply_morphology_examples(lex):
    billie = entry(lex, "Billie")
    animate = NounAttributes(animacy="animate")
    assert apply_morphology(billie, "object", animate, "BN") == "Billiekē"
    assert apply_morphology(billie, "object", NounAttributes(animacy="inanimate"), "BN") == "Billie"
    eat = entry(lex, "eats")
    assert apply_morphology(eat, "verb", NounAttributes(honorific="formal"), "BN") == "khan"
    assert apply_morphology(eat, "verb", NounAttributes(honorific="neutral"), "BN") == "khay"
    assert apply_morphology(eat, "verb", NounAttributes(), "BN") == "khāẏa"


def test_morphology_needs_attributes(lex):
    with pytest.raises(MissingAttribute):
        apply_morphology(entry(lex, "Billie"), "object", NounAttributes(), "BN")
    with pytest.raises(MissingAttribute):
        apply_morphology(entry(lex, "pretty"), "predicate", NounAttributes(), "BN")


def test_inanimate_recipient_gets_genitive(lex):
    surface, applied = inflect(entry(lex, "book"), "adp_object",
                               NounAttributes(animacy="inanimate"), "BN")
    assert surface == "bair"


def _marked_rows(lex):
    rows = []
    for e in lex.entries:
        if e.bn_surface is None or e.idiom:
            continue
        if e.pos == "NP" and not e.pronoun:
            attrs = e.attributes
            if attrs.animacy == "unknown":
                attrs = attrs.refine(animacy="animate")
            rows.append((e, "object", attrs))
        elif e.pos == "ADJ" and e.adj_gender == "agree":
            rows.append((e, "predicate", NounAttributes(gender="female")))
        elif e.pos in ("TVP", "IVP"):
            for h in ("neutral", "formal"):
                rows.append((e, "verb", NounAttributes(honorific=h)))
    return rows


def test_strip_apply_round_trip_every_marked_row(lex):
    rows = _marked_rows(lex)
    assert rows
    for e, role, attrs in rows:
        surface, applied = inflect(e, role, attrs, "BN")
        back = lex.lookup(surface, "BN")
        assert back.entry.bn_surface == e.bn_surface, surface
        assert set(back.stripped) == set(applied)
        assert apply_morphology(back.entry, role, attrs, "BN") == surface


def test_honorific_agreement_recorded(lex):
    _, applied = inflect(entry(lex, "eats"), "verb", NounAttributes(honorific="formal"), "BN")
    assert applied == [HONORIFIC_AGREEMENT]


def test_pronoun_defaults(lex):
    assert lex.pronoun_for("BN", "personal", NounAttributes(gender="male")) == "sē"
    assert lex.pronoun_for("EN", "personal", NounAttributes(gender="male")) == "he"
    with pytest.raises(AmbiguousPronoun):
        lex.pronoun_for("EN", "personal", NounAttributes(animacy="animate"))
    assert lex.pronoun_for("BN", "personal", NounAttributes(person="second")) == "tumi"
    assert lex.pronoun_for("BN", "personal",
                           NounAttributes(person="second", honorific="formal")) == "apni"


attribute_values = st.fixed_dictionaries(
    {k: st.sampled_from(v) for k, v in ATTRIBUTE_VALUES.items()})


@settings(max_examples=200, deadline=None)
@given(attribute_values, st.sampled_from(["animacy", "gender", "honorific"]), st.data())
def test_refinement_is_monotone(values, name, data):
    a = NounAttributes(**values)
    value = data.draw(st.sampled_from(ATTRIBUTE_VALUES[name]))
    current = getattr(a, name)
    if current != "unknown" and value not in ("unknown", current):
        with pytest.raises(AttributeConflict):
            a.refine(**{name: value})
        return
    b = a.refine(**{name: value})
    if current != "unknown":
        assert getattr(b, name) == current
    else:
        assert getattr(b, name) == value
    assert b.refine(**{name: value}) == b
