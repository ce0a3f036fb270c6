"""Bilingual word store, Bengali morphology and the terminal-set checks.

The lexicon is a TSV file with the columns::

    en  bn  pos  animacy  gender  honorific  placement  idiom  [features]

Bengali is handled in transliteration.  Nouns carry bound morphemes
(``-kē``, ``-r``, ``-tē``, ``-thēkē``, ``-ē``); adjectives may agree in
gender (``sundara`` -> ``sundarī``); a few verbs agree with the honorific
level of their subject (``khāẏa`` -> ``khay``/``khan``).  ``lookup`` strips
these markers and reports which ones it removed, ``apply_morphology`` puts
them back.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from .errors import (
    AmbiguousPronoun,
    AttributeConflict,
    LexiconFormatError,
    MissingAttribute,
    UnknownToken,
)

EN = "EN"
BN = "BN"
LANGUAGES = (EN, BN)

UNKNOWN = "unknown"
CATEGORIES = ("S", "NP", "TVP", "IVP", "ADJ", "ADV", "ADP", "CNJ", "SCV")
LEXICAL_CATEGORIES = CATEGORIES[1:]

ATTRIBUTE_VALUES = {
    "animacy": ("animate", "inanimate", UNKNOWN),
    "gender": ("male", "female", "neuter", UNKNOWN),
    "honorific": ("intimate", "neutral", "formal", UNKNOWN),
    "person": ("first", "second", "third"),
    "number": ("singular", "plural"),
}
PLACEMENTS = ("preverbal", "postverbal", "either")

COPULA = "is"
SILENT_ADPOSITION = "prati"

# Morph rule kinds, in application order (case marker, gender, agreement).
ACCUSATIVE_KE = "accusative_ke"
GENDER_SUFFIX_I = "gender_suffix_i"
COPULA_DROP = "copula_drop"
PRATI_INSERTION = "prati_insertion"
HONORIFIC_AGREEMENT = "honorific_verb_agreement"

# Bound morphemes recognised on Bengali nouns but never translated.
UNTRANSLATED_MARKERS = {
    "thēkē": "ablative_theke",
    "tē": "locative_te",
    "ēr": "genitive_r",
    "r": "genitive_r",
    "ē": "locative_e",
}

# Simple-present honorific paradigm; only the pair attested for "eat".
HONORIFIC_FORMS = {
    "khāẏa": {"neutral": "khay", "formal": "khan"},
}


def normalize_lang(lang):
    value = str(lang).upper()
    if value not in LANGUAGES:
        raise ValueError(f"unknown language {lang!r}")
    return value


def other_lang(lang):
    return BN if normalize_lang(lang) == EN else EN


@dataclass(frozen=True)
class NounAttributes:
    animacy: str = UNKNOWN
    gender: str = UNKNOWN
    honorific: str = UNKNOWN
    person: str = "third"
    number: str = "singular"

    def __post_init__(self):
        for name, allowed in ATTRIBUTE_VALUES.items():
            if getattr(self, name) not in allowed:
                raise ValueError(f"{name}={getattr(self, name)!r} not in {allowed}")

    def refine(self, **assignment):
        """Return a copy with ``assignment`` merged in.

        Unknown never overwrites a concrete value and a concrete value never
        replaces a different concrete value (that raises AttributeConflict).
        """
        changes = {}
        for name, value in assignment.items():
            current = getattr(self, name)
            if value == UNKNOWN or value == current:
                continue
            if current != UNKNOWN and name in ("animacy", "gender", "honorific"):
                raise AttributeConflict(
                    f"{name} is {current}, cannot become {value}",
                    attribute=name, current=current, value=value)
            changes[name] = value
        return replace(self, **changes) if changes else self

    def merge(self, other):
        """Refine with every concrete value of ``other``."""
        return self.refine(**{k: v for k, v in other.as_dict().items() if v != UNKNOWN})

    def meet(self, other):
        """Keep only the values both sides agree on."""
        values = {}
        for name in ("animacy", "gender", "honorific"):
            a, b = getattr(self, name), getattr(other, name)
            values[name] = a if a == b else UNKNOWN
        values["person"] = self.person if self.person == other.person else "third"
        values["number"] = self.number if self.number == other.number else "singular"
        return NounAttributes(**values)

    def compatible(self, other):
        for name in ("animacy", "gender", "honorific"):
            a, b = getattr(self, name), getattr(other, name)
            if UNKNOWN not in (a, b) and a != b:
                return False
        return True

    def as_dict(self):
        return {name: getattr(self, name) for name in ATTRIBUTE_VALUES}


@dataclass(frozen=True)
class MorphRule:
    kind: str
    trigger: str
    effect: str


MORPH_RULES = (
    MorphRule(ACCUSATIVE_KE, "animate noun as direct object or recipient", "suffix -kē"),
    MorphRule(GENDER_SUFFIX_I, "gender-agreeing adjective on a female noun", "final -a -> -ī"),
    MorphRule(COPULA_DROP, "present-tense adjective predication", "delete copula"),
    MorphRule(PRATI_INSERTION, "inanimate recipient", "genitive -r plus postposition prati"),
    MorphRule(HONORIFIC_AGREEMENT, "verb with an honorific paradigm", "select form by subject honorific"),
)


@dataclass(frozen=True)
class LexiconEntry:
    en_surface: str | None
    bn_surface: str | None
    pos: str
    attributes: NounAttributes | None = None
    placement: str | None = None
    idiom: bool = False
    adj_gender: str | None = None
    features: tuple = ()
    row: int = 0

    def surface(self, lang):
        return self.en_surface if normalize_lang(lang) == EN else self.bn_surface

    @property
    def untranslatable(self):
        return self.en_surface is None or self.bn_surface is None

    def feature(self, key, default=None):
        for k, v in self.features:
            if k == key:
                return v
        return default

    @property
    def pronoun(self):
        return self.feature("pron")

    @property
    def case(self):
        return self.feature("case", "subj")


@dataclass(frozen=True)
class Analysis:
    """Result of ``lookup``: the entry, the markers stripped and what they imply."""

    surface: str
    lang: str
    entry: LexiconEntry
    candidates: tuple = ()
    stripped: tuple = ()
    attributes: NounAttributes | None = None
    subject_honorific: str | None = None
    notes: tuple = ()

    @property
    def lemma(self):
        return self.entry.surface(self.lang)

    @property
    def pos(self):
        return self.entry.pos

    @property
    def pronoun(self):
        return self.entry.pronoun

    @property
    def base_attributes(self):
        """Attributes from the lexicon alone, before marker implications."""
        attrs = None
        for cand in self.candidates or (self.entry,):
            if cand.attributes is None:
                continue
            attrs = cand.attributes if attrs is None else attrs.meet(cand.attributes)
        return attrs


def _parse_features(cell, lineno):
    pairs = []
    for item in filter(None, (x.strip() for x in cell.split(";"))):
        key, sep, value = item.partition("=")
        if not sep:
            raise LexiconFormatError(f"line {lineno}: bad feature {item!r}")
        pairs.append((key.strip(), value.strip()))
    return tuple(pairs)


def load_lexicon(text):
    entries = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        cells = [c.strip() for c in raw.split("\t")]
        if not header_seen and cells[:3] == ["en", "bn", "pos"]:
            header_seen = True
            continue
        if len(cells) > 9:
            raise LexiconFormatError(f"line {lineno}: too many columns")
        cells += [""] * (9 - len(cells))
        en, bn, pos, animacy, gender, honorific, placement, idiom, feats = cells
        if not en and not bn:
            raise LexiconFormatError(f"line {lineno}: row has neither en nor bn surface")
        if pos not in LEXICAL_CATEGORIES:
            raise LexiconFormatError(f"line {lineno}: unknown part of speech {pos!r}")
        is_idiom = idiom.lower() in ("1", "true", "yes", "y")
        if is_idiom and all(len(s.split()) < 2 for s in (en, bn) if s):
            raise LexiconFormatError(f"line {lineno}: idiom rows must be multi-token")
        attrs = adj_gender = None
        try:
            if pos == "NP":
                features = dict(_parse_features(feats, lineno))
                person = {"1": "first", "2": "second", "3": "third"}.get(
                    features.get("person", "3"), features.get("person", "third"))
                attrs = NounAttributes(animacy or UNKNOWN, gender or UNKNOWN,
                                       honorific or UNKNOWN, person,
                                       features.get("number", "singular"))
            elif pos == "ADJ" and gender:
                if gender != "agree" and gender not in ATTRIBUTE_VALUES["gender"]:
                    raise ValueError(f"bad adjective gender {gender!r}")
                adj_gender = gender
        except ValueError as exc:
            raise LexiconFormatError(f"line {lineno}: {exc}") from None
        if placement and placement not in PLACEMENTS:
            raise LexiconFormatError(f"line {lineno}: bad placement {placement!r}")
        if pos == "ADV" and not placement:
            placement = "either"
        entries.append(LexiconEntry(en or None, bn or None, pos, attrs,
                                    placement or None, is_idiom, adj_gender,
                                    _parse_features(feats, lineno), len(entries)))
    return Lexicon(entries)


def _variants(surface):
    yield surface
    if surface[:1].isupper():
        yield surface[0].lower() + surface[1:]
    elif surface[:1].islower():
        yield surface[0].upper() + surface[1:]


def attach_suffix(stem, suffix):
    if suffix in ("r", "ēr"):
        return stem + ("r" if stem[-1:] in "aāiīuūeēoō" else "ēr")
    return stem + suffix


def gender_inflect(stem):
    return stem[:-1] + "ī" if stem.endswith("a") else stem + "ī"


class Lexicon:
    def __init__(self, entries: Iterable[LexiconEntry]):
        self.entries = tuple(entries)
        self._index = {EN: {}, BN: {}}
        self._idioms = {EN: [], BN: []}
        for entry in self.entries:
            for lang in LANGUAGES:
                surface = entry.surface(lang)
                if surface is None:
                    continue
                if entry.idiom:
                    self._idioms[lang].append((tuple(surface.split()), entry))
                else:
                    self._index[lang].setdefault(surface, []).append(entry)
        self._verb_forms = {}
        for base, forms in HONORIFIC_FORMS.items():
            for honorific, form in forms.items():
                self._verb_forms[form] = (base, honorific)
        for lang in LANGUAGES:
            self._idioms[lang].sort(key=lambda pair: -len(pair[0]))

    def __len__(self):
        return len(self.entries)

    def _exact(self, surface, lang):
        for variant in _variants(surface):
            found = self._index[lang].get(variant)
            if found:
                return variant, found
        return None, None

    def _analysis(self, surface, lang, entries, stripped=(), implied=None,
                  subject_honorific=None, notes=()):
        attrs = None
        for cand in entries:
            if cand.attributes is not None:
                attrs = cand.attributes if attrs is None else attrs.meet(cand.attributes)
        if attrs is not None and implied:
            attrs = attrs.refine(**implied)
        return Analysis(surface, lang, entries[0], tuple(entries), tuple(stripped),
                        attrs, subject_honorific, tuple(notes))

    def lookup(self, surface, lang):
        """Find the entry for ``surface``, stripping Bengali markers if needed."""
        lang = normalize_lang(lang)
        _, found = self._exact(surface, lang)
        if found:
            return self._analysis(surface, lang, found)
        if lang == BN:
            analysis = self._strip_bn(surface)
            if analysis is not None:
                return analysis
        raise UnknownToken(surface)

    def lookup_all(self, surface, lang):
        try:
            return self.lookup(surface, lang)
        except UnknownToken:
            return None

    def _strip_bn(self, surface):
        for variant in _variants(surface):
            if variant in self._verb_forms:
                base, honorific = self._verb_forms[variant]
                return self._analysis(surface, BN, self._index[BN][base],
                                      [HONORIFIC_AGREEMENT], subject_honorific=honorific)
        if surface.endswith("kē"):
            _, found = self._exact(surface[:-2], BN)
            nouns = [e for e in found or () if e.pos == "NP" and not e.pronoun]
            if nouns:
                return self._analysis(surface, BN, nouns, [ACCUSATIVE_KE],
                                      implied={"animacy": "animate"})
        if surface.endswith("ī"):
            for stem in (surface[:-1] + "a", surface[:-1]):
                _, found = self._exact(stem, BN)
                adjs = [e for e in found or () if e.pos == "ADJ" and e.adj_gender == "agree"]
                if adjs:
                    return Analysis(surface, BN, adjs[0], tuple(adjs), (GENDER_SUFFIX_I,),
                                    None, None, ("modified noun is female",))
        for suffix, kind in sorted(UNTRANSLATED_MARKERS.items(), key=lambda kv: -len(kv[0])):
            if surface.endswith(suffix) and len(surface) > len(suffix):
                _, found = self._exact(surface[: -len(suffix)], BN)
                nouns = [e for e in found or () if e.pos == "NP" and not e.pronoun]
                if nouns:
                    note = f"bound morpheme -{suffix} stripped from {surface}; not translated"
                    return self._analysis(surface, BN, nouns, [kind], notes=[note])
        return None

    def implied_gender(self, analysis):
        """Gender an adjective form imposes on the noun it modifies."""
        if GENDER_SUFFIX_I in analysis.stripped:
            return "female"
        gender = analysis.entry.adj_gender
        return gender if gender in ("male", "female", "neuter") else None

    def translations(self, lemma, src, tgt=None):
        src = normalize_lang(src)
        tgt = other_lang(src) if tgt is None else normalize_lang(tgt)
        out = []
        for entry in self._index[src].get(lemma, ()):
            target = entry.surface(tgt)
            if target is not None and target not in out:
                out.append(target)
        return out

    def correspond(self, a, b, lang_a, lang_b):
        """True if terminal lemmas ``a`` and ``b`` are translations of each other."""
        lang_a, lang_b = normalize_lang(lang_a), normalize_lang(lang_b)
        if lang_a == lang_b:
            return a == b
        return b in self.translations(a, lang_a, lang_b)

    def idiom_spans(self, tokens, lang):
        """Greedy longest-first idiom matches as (start, stop, entry)."""
        lang = normalize_lang(lang)
        folded = [t.lower() for t in tokens]
        spans, i = [], 0
        while i < len(tokens):
            for pattern, entry in self._idioms[lang]:
                n = len(pattern)
                if tuple(folded[i:i + n]) == tuple(p.lower() for p in pattern):
                    spans.append((i, i + n, entry))
                    i += n
                    break
            else:
                i += 1
        return spans

    def pronoun_for(self, lang, kind, attrs, case="subj"):
        """Choose the pronoun realising ``attrs`` in ``lang``.

        Raises AmbiguousPronoun when several surfaces fit and none is marked
        as the default.
        """
        lang = normalize_lang(lang)
        fits = []
        for entry in self.entries:
            if entry.pronoun != kind or entry.surface(lang) is None or entry.case != case:
                continue
            ea = entry.attributes
            if ea.person != attrs.person or ea.number != attrs.number:
                continue
            if not ea.compatible(attrs):
                continue
            fits.append(entry)
        surfaces = list(dict.fromkeys(e.surface(lang) for e in fits))
        if len(surfaces) == 1:
            return surfaces[0]
        preferred = list(dict.fromkeys(e.surface(lang) for e in fits if e.feature("default")))
        if len(preferred) == 1:
            return preferred[0]
        if not surfaces:
            raise AmbiguousPronoun(f"no {kind} pronoun in {lang} fits {attrs}")
        raise AmbiguousPronoun(f"{kind} pronoun in {lang} ambiguous between {surfaces}",
                               candidates=surfaces)


def inflect(entry, role, attrs, lang):
    """Apply morphology; return ``(surface, rules_applied)``.

    ``attrs`` are the attributes of the noun itself for nouns, of the
    modified noun for adjectives and of the subject for verbs.
    """
    lang = normalize_lang(lang)
    surface = entry.surface(lang)
    if surface is None:
        raise ValueError(f"entry has no {lang} surface")
    applied = []
    if lang != BN:
        return surface, applied
    attrs = attrs or NounAttributes()
    # case marker
    if entry.pos == "NP" and not entry.pronoun:
        if role in ("object", "recipient"):
            if attrs.animacy == UNKNOWN:
                raise MissingAttribute(f"animacy of {surface!r} is unknown", attribute="animacy",
                                       noun=surface)
            if attrs.animacy == "animate":
                surface = attach_suffix(surface, "kē")
                applied.append(ACCUSATIVE_KE)
        elif role == "adp_object":
            surface = attach_suffix(surface, "r")
            applied.append(PRATI_INSERTION)
    # gender suffix
    if entry.pos == "ADJ" and entry.adj_gender == "agree":
        if attrs.gender == UNKNOWN:
            raise MissingAttribute(f"gender needed to inflect {surface!r}", attribute="gender")
        if attrs.gender == "female":
            surface = gender_inflect(surface)
            applied.append(GENDER_SUFFIX_I)
    # agreement
    if entry.pos in ("TVP", "IVP") and surface in HONORIFIC_FORMS:
        form = HONORIFIC_FORMS[surface].get(attrs.honorific)
        if form is not None:
            surface = form
            applied.append(HONORIFIC_AGREEMENT)
    return surface, applied


def apply_morphology(entry, role, attrs, lang):
    return inflect(entry, role, attrs, lang)[0]


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: str | None = None
    mapping: Mapping[str, str] = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _lemmas(lex, terminals, lang):
    out = {}
    for t in dict.fromkeys(terminals):
        analysis = lex.lookup_all(t, lang)
        out[t] = analysis.lemma if analysis is not None else None
    return out


def check_bijection(lex, s_e, s_b):
    """Is the lexicon, restricted to the two terminal sets, one-to-one and onto?

    Terminals are compared modulo case markers ("Billiekē" is "Billie").
    The returned mapping is English lemma -> Bengali lemma.
    """
    e_lemmas = _lemmas(lex, s_e, EN)
    b_lemmas = _lemmas(lex, s_b, BN)
    b_set = {v for v in b_lemmas.values() if v is not None}
    mapping = {}
    for term, lemma in e_lemmas.items():
        images = [b for b in lex.translations(lemma, EN, BN) if b in b_set] if lemma else []
        if len(images) != 1:
            return CheckResult(False, term)
        mapping[lemma] = images[0]
    for term, lemma in b_lemmas.items():
        pre = [e for e in mapping if mapping[e] == lemma] if lemma else []
        if len(pre) != 1:
            return CheckResult(False, term)
    return CheckResult(True, None, mapping)


def check_surjection_condition(lex, s_e, s_b):
    """The weaker condition: S_E minus the copula maps onto S_B plus "prati"."""
    e_lemmas = {t: l for t, l in _lemmas(lex, s_e, EN).items() if t.lower() != COPULA}
    b_lemmas = _lemmas(lex, s_b, BN)
    b_set = {v for v in b_lemmas.values() if v is not None} | {SILENT_ADPOSITION}
    for term, lemma in e_lemmas.items():
        if lemma is None or not lex.translations(lemma, EN, BN):
            return CheckResult(False, term)
    mapping = {}
    for term, lemma in e_lemmas.items():
        images = [b for b in lex.translations(lemma, EN, BN) if b in b_set]
        if not images:
            return CheckResult(False, term)
        mapping[lemma] = images[0]
    covered = set(mapping.values())
    for term, lemma in b_lemmas.items():
        if lemma is None or lemma not in covered:
            if lemma is not None and any(lemma in lex.translations(l, EN, BN)
                                         for l in mapping):
                continue
            return CheckResult(False, term)
    return CheckResult(True, None, mapping)
