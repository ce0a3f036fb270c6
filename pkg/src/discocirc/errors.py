"""Exception hierarchy.

Every error carries a short ``code`` (the name used in corpus files, CLI
output and translation diagnostics) so callers can match on it without
importing the class.
"""


class DiscoError(Exception):
    code = "Error"

    def __init__(self, message="", **details):
        super().__init__(message or self.code)
        self.details = details


# grammar
class GrammarError(DiscoError):
    code = "GrammarError"


class GrammarSyntaxError(GrammarError):
    code = "SyntaxError"

    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line else message, line=line)
        self.line = line


class UnknownCategory(GrammarError):
    code = "UnknownCategory"


class UnreachableNonTerminal(GrammarError):
    code = "UnreachableNonTerminal"


class UnknownToken(GrammarError):
    code = "UnknownToken"

    def __init__(self, token):
        super().__init__(f"unknown token {token!r}", token=token)
        self.token = token


class NoParse(GrammarError):
    code = "NoParse"


class NoSharedNoun(GrammarError):
    code = "NoSharedNoun"


class UnsupportedLink(GrammarError):
    code = "UnsupportedLink"


# lexicon
class LexiconError(DiscoError):
    code = "LexiconError"


class LexiconFormatError(LexiconError):
    code = "SyntaxError"


class MissingAttribute(LexiconError):
    code = "MissingAttribute"


class AmbiguousPronoun(LexiconError):
    code = "AmbiguousPronoun"


# diagrams
class DiagramError(DiscoError):
    code = "DiagramError"


class UnsupportedConstruct(DiagramError):
    code = "UnsupportedConstruct"


class TypeMismatch(DiagramError):
    code = "TypeMismatch"


class DanglingPlug(DiagramError):
    code = "DanglingPlug"


class NotBijective(DiagramError):
    code = "NotBijective"


# circuits
class CircuitError(DiscoError):
    code = "CircuitError"


class UnresolvedPronoun(CircuitError):
    code = "UnresolvedPronoun"


class ConditionFailed(CircuitError):
    code = "ConditionFailed"


class AttributeConflict(CircuitError):
    code = "AttributeConflict"


# boolean compilation
class ConjunctionError(DiscoError):
    code = "ConjunctionError"


class UnknownConjunction(ConjunctionError):
    code = "UnknownConjunction"


class CausalUnsupported(ConjunctionError):
    code = "CausalUnsupported"


class ArityUnsupported(ConjunctionError):
    code = "ArityUnsupported"


class MissingVariable(ConjunctionError):
    code = "MissingVariable"


class TooManyVariables(ConjunctionError):
    code = "TooManyVariables"


# translation
class TranslationError(DiscoError):
    code = "TranslationError"


class UntranslatableTerminal(TranslationError):
    code = "UntranslatableTerminal"

    def __init__(self, terminal):
        super().__init__(f"no translation for {terminal!r}", terminal=terminal)
        self.terminal = terminal


class IdiomDetected(TranslationError):
    code = "IdiomDetected"


class NoRealizingRule(TranslationError):
    code = "NoRealizingRule"
