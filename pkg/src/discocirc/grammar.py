"""Hybrid grammar: production rules, chart parsing and pronominal links.

Grammar files hold one rule per line::

    %language EN
    S -> NP TVP NP      # comment
    S -> NP "is" ADJ

Quoted symbols are terminals.  Preterminal categories (``NP``, ``TVP`` ...)
are filled from the lexicon, so the only category that must have a rule is
the start symbol ``S``.
"""

from __future__ import annotations

import re
import shlex
from dataclasses import dataclass, replace

from .errors import (
    GrammarSyntaxError,
    NoParse,
    NoSharedNoun,
    UnknownCategory,
    UnknownToken,
    UnreachableNonTerminal,
    UnsupportedLink,
)
from .lexicon import BN, CATEGORIES, EN, LEXICAL_CATEGORIES, normalize_lang

LINK_KINDS = ("personal", "relative_subject", "relative_resumptive",
              "relative_object", "reflexive")
TEXT_RULE = "text"  # reserved rule id for a sequence of sentences


@dataclass(frozen=True)
class Terminal:
    surface: str
    lang: str

    def __str__(self):
        return self.surface


@dataclass(frozen=True)
class NonTerminal:
    category: str

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise UnknownCategory(f"unknown category {self.category!r}")

    def __str__(self):
        return self.category


@dataclass(frozen=True)
class ProductionRule:
    lhs: NonTerminal
    rhs: tuple
    rule_id: str
    index: int = 0

    def __post_init__(self):
        if not isinstance(self.lhs, NonTerminal):
            raise GrammarSyntaxError("left-hand side must be a non-terminal")
        if not self.rhs:
            raise GrammarSyntaxError("right-hand side must not be empty")

    def __str__(self):
        syms = [f'"{s.surface}"' if isinstance(s, Terminal) else s.category for s in self.rhs]
        return f"{self.lhs} -> {' '.join(syms)}"

    @property
    def categories(self):
        return tuple(s.category if isinstance(s, NonTerminal) else None for s in self.rhs)


@dataclass(frozen=True)
class Grammar:
    language: str
    rules: tuple
    start: NonTerminal = NonTerminal("S")

    def rule(self, rule_id):
        for r in self.rules:
            if r.rule_id == rule_id:
                return r
        raise KeyError(rule_id)

    def find(self, lhs, rhs_labels):
        """First rule (file order) with the given left side and right-side labels."""
        for r in self.rules:
            if r.lhs.category == lhs and tuple(map(_sym_key, r.rhs)) == tuple(rhs_labels):
                return r
        return None

    @property
    def literals(self):
        return {s.surface for r in self.rules for s in r.rhs if isinstance(s, Terminal)}


def _sym_key(sym):
    return ("T", sym.surface) if isinstance(sym, Terminal) else ("N", sym.category)


def load_grammar(text, language=None):
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("%language"):
            language = line.split(None, 1)[1].strip() if " " in line else None
            continue
        if "->" not in line:
            raise GrammarSyntaxError("expected 'LHS -> SYM ...'", lineno)
        lhs_text, rhs_text = (part.strip() for part in line.split("->", 1))
        if not lhs_text or " " in lhs_text:
            raise GrammarSyntaxError(f"bad left-hand side {lhs_text!r}", lineno)
        if lhs_text.startswith('"'):
            raise GrammarSyntaxError("a terminal cannot be rewritten", lineno)
        try:
            parts = shlex.split(rhs_text, posix=False)
        except ValueError as exc:
            raise GrammarSyntaxError(str(exc), lineno) from None
        if not parts:
            raise GrammarSyntaxError("empty right-hand side", lineno)
        rhs = []
        for part in parts:
            if part.startswith('"'):
                if len(part) < 3 or not part.endswith('"'):
                    raise GrammarSyntaxError(f"bad terminal {part}", lineno)
                rhs.append(Terminal(part[1:-1], "?"))
            elif re.fullmatch(r"[A-Za-z_]\w*", part):
                rhs.append(NonTerminal(part))
            else:
                raise GrammarSyntaxError(f"bad symbol {part!r}", lineno)
        rules.append((NonTerminal(lhs_text), rhs))
    if language is None:
        raise GrammarSyntaxError("grammar language not given (use '%language EN')")
    lang = normalize_lang(language)
    built = tuple(
        ProductionRule(lhs, tuple(Terminal(s.surface, lang) if isinstance(s, Terminal) else s
                                  for s in rhs), f"R{i + 1}", i)
        for i, (lhs, rhs) in enumerate(rules))
    _check_reachable(built)
    return Grammar(lang, built)


def _check_reachable(rules):
    has_rule = {r.lhs.category for r in rules}
    seen, todo = set(), ["S"]
    while todo:
        cat = todo.pop()
        if cat in seen:
            continue
        seen.add(cat)
        if cat not in has_rule and cat not in LEXICAL_CATEGORIES:
            raise UnreachableNonTerminal(f"no rule rewrites {cat}")
        for r in rules:
            if r.lhs.category == cat:
                todo.extend(s.category for s in r.rhs if isinstance(s, NonTerminal))


@dataclass(frozen=True)
class Link:
    kind: str
    antecedent: tuple


@dataclass(frozen=True)
class ParseTree:
    label: object
    children: tuple = ()
    rule_id: str | None = None
    link: Link | None = None
    analysis: object = None

    @property
    def is_leaf(self):
        return isinstance(self.label, Terminal)

    @property
    def is_preterminal(self):
        return (not self.is_leaf and len(self.children) == 1
                and self.children[0].is_leaf and self.rule_id is None)

    def __str__(self):
        if self.is_leaf:
            return self.label.surface
        if self.is_preterminal:
            return f"{self.label}({self.children[0].label.surface})"
        return f"{self.label}({', '.join(map(str, self.children))})"

    def node(self, path):
        t = self
        for i in path:
            t = t.children[i]
        return t

    def leaves(self, prefix=()):
        """(path, leaf) pairs left to right."""
        if self.is_leaf:
            yield prefix, self
            return
        for i, child in enumerate(self.children):
            yield from child.leaves(prefix + (i,))

    def replace_at(self, path, subtree):
        if not path:
            return subtree
        i = path[0]
        kids = list(self.children)
        kids[i] = kids[i].replace_at(path[1:], subtree)
        return replace(self, children=tuple(kids))

    def pretty(self, indent=0):
        pad = "  " * indent
        if self.is_leaf:
            return f'{pad}"{self.label.surface}"'
        head = f"{pad}{self.label}"
        if self.rule_id:
            head += f"  [{self.rule_id}]"
        lines = [head]
        for child in self.children:
            line = child.pretty(indent + 1)
            if child.is_leaf and child.link:
                line += f"  <{child.link.kind} -> {'.'.join(map(str, child.link.antecedent))}>"
            lines.append(line)
        return "\n".join(lines)


def linearize(t):
    return [leaf.label.surface for _, leaf in t.leaves()]


def tokenize(text):
    """Split running text into sentences of tokens (transliteration only)."""
    sentences = []
    for chunk in re.split(r"[.!?।]+", text):
        tokens = [t for t in re.split(r"[\s,;]+", chunk) if t]
        if tokens:
            sentences.append(tokens)
    return sentences


def _same_surface(a, b):
    return a == b or (a[:1].lower() + a[1:]) == (b[:1].lower() + b[1:])


def parse(g, tokens, lex):
    """Bottom-up chart parse; the lowest rule id wins on ambiguity."""
    tokens = list(tokens)
    if not tokens:
        raise NoParse("empty input")
    lang = g.language
    n = len(tokens)
    literals = g.literals
    chart = [[{} for _ in range(n + 1)] for _ in range(n + 1)]
    for i, tok in enumerate(tokens):
        analysis = lex.lookup_all(tok, lang)
        if analysis is None:
            if not any(_same_surface(tok, lit) for lit in literals):
                raise UnknownToken(tok)
            continue
        for pos in dict.fromkeys(c.pos for c in analysis.candidates):
            cands = tuple(c for c in analysis.candidates if c.pos == pos)
            a = replace(analysis, entry=cands[0], candidates=cands)
            leaf = ParseTree(Terminal(tok, lang), analysis=a)
            chart[i][i + 1][pos] = ParseTree(NonTerminal(pos), (leaf,))

    def match(rhs, i, j, whole):
        if not rhs:
            return () if i == j else None
        sym, rest = rhs[0], rhs[1:]
        if isinstance(sym, Terminal):
            if i < j and _same_surface(tokens[i], sym.surface):
                tail = match(rest, i + 1, j, whole)
                if tail is not None:
                    return (ParseTree(Terminal(tokens[i], lang)),) + tail
            return None
        last = j - len(rest)
        for k in range(i + 1, last + 1):
            if (k - i, i) == whole and rest:
                continue
            sub = chart[i][k].get(sym.category)
            if sub is None:
                continue
            tail = match(rest, k, j, whole)
            if tail is not None:
                return (sub,) + tail
        return None

    for length in range(1, n + 1):
        for i in range(n - length + 1):
            j = i + length
            cell = chart[i][j]
            for _ in range(len(g.rules) + 1):
                changed = False
                for rule in g.rules:
                    cat = rule.lhs.category
                    if cat in cell:
                        continue
                    kids = match(rule.rhs, i, j, (length, i))
                    if kids is not None:
                        cell[cat] = ParseTree(rule.lhs, kids, rule.rule_id)
                        changed = True
                if not changed:
                    break
    tree = chart[0][n].get(g.start.category)
    if tree is None:
        raise NoParse(f"no parse for {' '.join(tokens)!r}")
    return tree


def replay(g, t, lex=None):
    """Check every expansion in ``t`` against the rules of ``g``."""
    if t.is_leaf:
        return True
    if t.rule_id == TEXT_RULE:
        return all(replay(g, c, lex) for c in t.children)
    if t.rule_id is None:
        if not t.is_preterminal:
            return False
        a = t.children[0].analysis
        return a is not None and a.pos == t.label.category
    try:
        rule = g.rule(t.rule_id)
    except KeyError:
        return False
    if rule.lhs != t.label or len(rule.rhs) != len(t.children):
        return False
    for sym, child in zip(rule.rhs, t.children):
        if isinstance(sym, Terminal):
            if not child.is_leaf or not _same_surface(child.label.surface, sym.surface):
                return False
        elif child.is_leaf or child.label != sym:
            return False
    return all(replay(g, c, lex) for c in t.children)


def roles_for(labels, language):
    """Grammatical role of each right-hand-side symbol of a rule.

    ``labels`` are categories (str) for non-terminals and ``Terminal``
    instances for literal words.
    """
    cats = [x if isinstance(x, str) else None for x in labels]
    roles = [None] * len(cats)
    if "CNJ" in cats:
        return tuple("conjunction" if c == "CNJ" else "clause" for c in cats)
    if "SCV" in cats:
        return tuple({"NP": "subject", "S": "complement", "SCV": "scv"}.get(c) for c in cats)
    if cats and all(c == "S" for c in cats):
        return tuple("clause" for _ in cats)
    nps = [i for i, c in enumerate(cats) if c == "NP"]
    adp_obj = None
    if "ADP" in cats:
        a = cats.index("ADP")
        k = a + 1 if normalize_lang(language) == EN else a - 1
        if 0 <= k < len(cats) and cats[k] == "NP":
            adp_obj = k
    others = [i for i in nps if i != adp_obj]
    if adp_obj is not None:
        roles[adp_obj] = "adp_object"
    if others:
        roles[others[0]] = "subject"
    if len(others) == 3:
        roles[others[1]] = "recipient"
        roles[others[2]] = "object"
    elif len(others) == 2:
        roles[others[1]] = "object"
    for i, c in enumerate(cats):
        if roles[i] is not None:
            continue
        if c in ("TVP", "IVP"):
            roles[i] = "verb"
        elif c == "ADJ":
            roles[i] = "predicate"
        elif c == "ADV":
            roles[i] = "adverb"
        elif c == "ADP":
            roles[i] = "adposition"
        elif c is None:
            roles[i] = "copula" if labels[i].surface.lower() == "is" else "marker"
    return tuple(roles)


def child_labels(t):
    return tuple(c.label if c.is_leaf else c.label.category for c in t.children)


def clause_roles(t, language):
    return roles_for(child_labels(t), language)


def is_simple_clause(t):
    return (not t.is_leaf and t.label.category == "S" and t.rule_id != TEXT_RULE
            and not any(not c.is_leaf and c.label.category in ("S", "CNJ", "SCV")
                        for c in t.children))


def _noun_leaf_path(np_node, prefix):
    """Path of the head noun leaf under an NP node (handles NP -> NP "yē")."""
    node, path = np_node, prefix
    while not node.is_preterminal:
        node, path = node.children[0], path + (0,)
    return path + (0,)


def clause_nps(t, language):
    """role -> path of the noun leaf, for a simple clause."""
    out = {}
    for i, (child, role) in enumerate(zip(t.children, clause_roles(t, language))):
        if not child.is_leaf and child.label.category == "NP":
            out[role] = _noun_leaf_path(child, (i,))
    return out


def _lemma(leaf):
    return leaf.analysis.lemma if leaf.analysis is not None else leaf.label.surface


def _pronoun_tree(lex, lang, surface, link):
    analysis = lex.lookup(surface, lang)
    leaf = ParseTree(Terminal(surface, lang), link=link, analysis=analysis)
    return ParseTree(NonTerminal("NP"), (leaf,))


def _attrs(leaf):
    a = leaf.analysis
    return a.attributes if a is not None and a.attributes is not None else None


def merge_pronominal(t1, t2, kind, lex, g):
    """Join two clauses on a shared noun, replacing one occurrence by a pronoun."""
    if kind not in LINK_KINDS:
        raise UnsupportedLink(f"unknown link kind {kind!r}")
    lang = g.language
    if kind == "reflexive":
        roles = clause_nps(t1, lang)
        subj, obj = roles.get("subject"), roles.get("object")
        if subj is None or obj is None or _lemma(t1.node(subj)) != _lemma(t1.node(obj)):
            raise NoSharedNoun("reflexive needs the same noun as subject and object")
        surface = lex.pronoun_for(lang, "reflexive", _attrs(t1.node(subj)), case="obj")
        return t1.replace_at(obj[:-1], _pronoun_tree(lex, lang, surface, Link(kind, subj)))
    compound = g.find("S", [("N", "S"), ("N", "S")])
    if compound is None:
        raise UnsupportedLink("grammar has no rule joining two clauses")
    r1, r2 = clause_nps(t1, lang), clause_nps(t2, lang)
    patterns = {
        "personal": [("subject", "subject"), ("object", "object")],
        "relative_subject": [("object", "subject")],
        "relative_object": [("object", "object")],
        "relative_resumptive": [("subject", "subject")],
    }[kind]
    for role1, role2 in patterns:
        p1, p2 = r1.get(role1), r2.get(role2)
        if p1 is not None and p2 is not None and _lemma(t1.node(p1)) == _lemma(t2.node(p2)):
            break
    else:
        raise NoSharedNoun(f"no shared noun for a {kind} link")
    attrs = _attrs(t1.node(p1))
    anchor = (0,) + p1
    if kind == "personal":
        case = "obj" if role2 == "object" else "subj"
        surface = lex.pronoun_for(lang, "personal", attrs, case=case)
        new2 = t2.replace_at(p2[:-1], _pronoun_tree(lex, lang, surface, Link(kind, anchor)))
        return ParseTree(NonTerminal("S"), (t1, new2), compound.rule_id)
    if kind in ("relative_subject", "relative_object"):
        case = "obj" if role2 == "object" else "subj"
        try:
            surface = lex.pronoun_for(lang, "relative", attrs, case=case)
        except Exception:
            if case != "obj":
                raise
            surface = lex.pronoun_for(lang, "relative", attrs, case="subj")
        new2 = t2.replace_at(p2[:-1], _pronoun_tree(lex, lang, surface, Link(kind, anchor)))
        return ParseTree(NonTerminal("S"), (t1, new2), compound.rule_id)
    # relative_resumptive: "X yē ... , sē ..."
    head_rule = None
    for rule in g.rules:
        cats = rule.categories
        if (rule.lhs.category == "NP" and cats[:1] == ("NP",) and len(rule.rhs) == 2
                and isinstance(rule.rhs[1], Terminal)):
            head_rule = rule
            break
    if lang != BN or head_rule is None:
        raise UnsupportedLink("resumptive relative clauses are not part of this fragment")
    np_path = p1[:-1]
    head = t1.node(np_path)
    anchor = (0,) + np_path + (0, 0)
    marker = ParseTree(Terminal(head_rule.rhs[1].surface, lang),
                       link=Link(kind, anchor))
    new1 = t1.replace_at(np_path, ParseTree(NonTerminal("NP"), (head, marker), head_rule.rule_id))
    surface = lex.pronoun_for(lang, "personal", attrs, case="subj")
    new2 = t2.replace_at(p2[:-1], _pronoun_tree(lex, lang, surface, Link("personal", anchor)))
    return ParseTree(NonTerminal("S"), (new1, new2), compound.rule_id)


def mentions(t, language):
    """NP mentions in text order.

    Each mention is a dict with ``path`` (of the leaf), ``leaf``, ``role``
    in its clause and ``clause`` (path of the enclosing S node).  Literal
    relative markers ("yē" in ``NP -> NP "yē"``) appear with role
    ``marker`` and the path of their ``head`` noun.
    """
    out = []

    def visit(node, prefix, clause, role):
        if node.is_leaf:
            return
        cat = node.label.category
        if cat == "NP":
            if node.is_preterminal:
                out.append(dict(path=prefix + (0,), leaf=node.children[0], role=role,
                                clause=clause))
                return
            visit(node.children[0], prefix + (0,), clause, role)
            head = _noun_leaf_path(node.children[0], prefix + (0,))
            for k, sub in enumerate(node.children[1:], 1):
                if sub.is_leaf:
                    out.append(dict(path=prefix + (k,), leaf=sub, role="marker",
                                    clause=clause, head=head))
            return
        if cat != "S":
            return
        roles = clause_roles(node, language) if node.rule_id != TEXT_RULE else ()
        for i, child in enumerate(node.children):
            visit(child, prefix + (i,), prefix, roles[i] if roles else None)

    visit(t, (), (), None)
    return out


def link_text(trees, lex, language):
    """Bundle sentence trees into one text tree and resolve open pronouns.

    Personal pronouns link to the most recent compatible earlier mention
    outside their own clause; reflexives to their clause subject; relative
    markers to the head they follow.  Unresolvable pronouns stay unlinked.
    """
    lang = normalize_lang(language)
    text = ParseTree(NonTerminal("S"), tuple(trees), TEXT_RULE)
    resolved = {}   # leaf path -> antecedent noun leaf path
    referent_attrs = {}
    history = []
    for m in mentions(text, lang):
        path, leaf = m["path"], m["leaf"]
        analysis = leaf.analysis
        pron = analysis.pronoun if analysis is not None else None
        if leaf.link is not None:
            target = resolved.get(leaf.link.antecedent, leaf.link.antecedent)
            resolved[path] = target
            history.append((path, m["clause"], target))
            continue
        if m["role"] == "marker":
            target = resolved.get(m["head"], m["head"])
            text = text.replace_at(path, replace(leaf, link=Link("relative_resumptive", target)))
            resolved[path] = target
            continue
        attrs = _attrs(leaf)
        if pron is None or attrs is None or attrs.person != "third":
            resolved[path] = path
            if attrs is not None:
                referent_attrs[path] = _refine_loose(referent_attrs.get(path), attrs)
            history.append((path, m["clause"], path))
            continue
        target, kind = None, "personal" if pron == "personal" else pron
        if pron == "reflexive":
            for hp, hclause, htarget in reversed(history):
                if hclause == m["clause"]:
                    target = htarget
                    break
        else:
            for hp, hclause, htarget in reversed(history):
                if pron == "personal" and hclause == m["clause"]:
                    continue
                known = referent_attrs.get(htarget)
                if known is None or known.compatible(attrs):
                    target = htarget
                    break
        if pron == "relative":
            kind = "relative_subject" if m["role"] == "subject" else "relative_object"
        if target is None:
            history.append((path, m["clause"], path))
            resolved[path] = path
            continue
        text = text.replace_at(path, replace(leaf, link=Link(kind, target)))
        resolved[path] = target
        referent_attrs[target] = _refine_loose(referent_attrs.get(target), attrs)
        history.append((path, m["clause"], target))
    return text


def _refine_loose(current, attrs):
    if current is None:
        return attrs
    try:
        return current.merge(attrs)
    except Exception:
        return current
