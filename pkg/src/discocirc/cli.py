"""Command line front end.

Exit codes: 0 success, 1 usage or malformed input, 2 no parse, 3 unknown
token, 4 translation (or other pipeline) error, 5 causal conjunction.
"""

import argparse
import sys
from pathlib import Path

from . import resources
from .circuit import apply_update, diagram_to_circuit, infer_attributes
from .conjlogic import compile_conjunction, truth_table, assignments
from .diagram import normalize, tree_to_diagram
from .dot import circuit_to_dot, diagram_to_dot
from .errors import (CausalUnsupported, ConjunctionError, DiscoError, GrammarSyntaxError,
                     LexiconFormatError, NoParse, UnknownToken)
from .grammar import link_text, load_grammar, parse, tokenize
from .lexicon import BN, EN, load_lexicon, normalize_lang
from .translate import parse_context, translate_text

EXIT_OK, EXIT_USAGE, EXIT_NOPARSE, EXIT_TOKEN, EXIT_TRANSLATE, EXIT_CAUSAL = range(6)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def exit_code(exc):
    if isinstance(exc, (UsageError, GrammarSyntaxError, LexiconFormatError, ValueError, OSError)):
        return EXIT_USAGE
    if isinstance(exc, NoParse):
        return EXIT_NOPARSE
    if isinstance(exc, UnknownToken):
        return EXIT_TOKEN
    if isinstance(exc, CausalUnsupported):
        return EXIT_CAUSAL
    if isinstance(exc, ConjunctionError):
        return EXIT_USAGE
    return EXIT_TRANSLATE


def _lang(value):
    try:
        return normalize_lang(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"language must be en or bn, not {value!r}")


def _grammar(path, lang):
    if path:
        return load_grammar(Path(path).read_text(encoding="utf-8"), lang)
    return resources.default_grammar(lang)


def _lexicon(path):
    if path:
        return load_lexicon(Path(path).read_text(encoding="utf-8"))
    return resources.default_lexicon()


def _text(args):
    return " ".join(args.text)


def _trees(args):
    g, lex = _grammar(args.grammar, args.lang), _lexicon(args.lexicon)
    sentences = tokenize(_text(args))
    return g, lex, [parse(g, s, lex) for s in sentences]


def cmd_parse(args, out):
    g, lex = _grammar(args.grammar, args.lang), _lexicon(args.lexicon)
    sentences = tokenize(_text(args))
    if not sentences:
        raise NoParse("empty input")
    for s in sentences:
        out.write(parse(g, s, lex).pretty() + "\n")
    return EXIT_OK


def _diagram(args):
    g, lex, trees = _trees(args)
    if not trees:
        return None, lex
    return tree_to_diagram(link_text(trees, lex, args.lang)), lex


def cmd_diagram(args, out):
    d, _ = _diagram(args)
    if d is None:
        out.write("digraph{}\n")
        return EXIT_OK
    if not args.raw:
        d = normalize(d)
    out.write(diagram_to_dot(d))
    return EXIT_OK


def cmd_circuit(args, out):
    d, _ = _diagram(args)
    if d is None:
        out.write("digraph{}\n")
        return EXIT_OK
    c = diagram_to_circuit(normalize(d))
    if args.updates:
        for e in infer_attributes(c, args.lang):
            c = apply_update(c, e.wire, e, position=e.sentence)
    out.write(circuit_to_dot(c))
    return EXIT_OK


def cmd_translate(args, out, err):
    if args.src == args.tgt:
        raise UsageError("source and target language must differ")
    lex = _lexicon(args.lexicon)
    src = _grammar(args.src_grammar, args.src)
    tgt = _grammar(args.tgt_grammar, args.tgt)
    result = translate_text(_text(args), src, tgt, lex, parse_context(args.context))
    for line in result.lines():
        if line is not None:
            out.write(line + "\n")
    if args.explain:
        for d in result.diagnostics:
            err.write(str(d) + "\n")
    first = result.first_error()
    if first is not None:
        if not args.explain:
            err.write(str(first) + "\n")
        return EXIT_CAUSAL if first.code == CausalUnsupported.code else EXIT_TRANSLATE
    return EXIT_OK


def cmd_conj(args, out):
    c = compile_conjunction(args.cls, args.arity,
                            args.names.split(",") if args.names else None)
    if args.table:
        out.write(" ".join(c.inputs) + " out\n")
        for bits, value in zip(assignments(len(c.inputs)), truth_table(c)):
            out.write(" ".join(map(str, bits)) + f" {value}\n")
    else:
        for k, g in enumerate(c.gates):
            ins = ", ".join(x if isinstance(x, str) else f"g{x}" for x in g.inputs)
            out.write(f"g{k} = {g.op}({ins})\n")
        out.write(f"output g{c.output}\n")
    return EXIT_OK


# corpus ------------------------------------------------------------------

def _direction(cell):
    cell = cell.strip().upper()
    for sep in ("→", "->", ">", "-", "2"):
        if sep in cell:
            a, b = cell.split(sep, 1)
            return normalize_lang(a), normalize_lang(b)
    raise ValueError(f"bad direction {cell!r}")


def read_corpus(text):
    """Cases as dicts (id, src, tgt, source, expected, error, context, line)."""
    cases, seen = [], set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        cols = raw.split("\t")
        if cols[0] == "id":
            continue
        if len(cols) < 4:
            raise ValueError(f"line {lineno}: expected at least 4 tab-separated columns")
        cid, direction, source, expected = (c.strip() for c in cols[:4])
        notes = cols[4].strip() if len(cols) > 4 else ""
        if not cid or cid in seen:
            raise ValueError(f"line {lineno}: missing or duplicate id {cid!r}")
        seen.add(cid)
        if not expected:
            raise ValueError(f"line {lineno}: no expectation")
        src, tgt = _direction(direction)
        context = None
        for item in notes.split():
            if item.startswith("context="):
                context = item[len("context="):]
        error = expected[1:] if expected.startswith("!") else None
        cases.append(dict(id=cid, src=src, tgt=tgt, source=source,
                          expected=None if error else expected, error=error,
                          context=context, line=lineno))
    return cases


def run_case(case, lex, grammars):
    """(passed, detail)."""
    try:
        result = translate_text(case["source"], grammars[case["src"]], grammars[case["tgt"]],
                                lex, case["context"])
    except DiscoError as exc:
        got_error, got = exc.code, None
    else:
        first = result.first_error()
        got_error = first.code if first else None
        got = result.sentences
    if case["error"] is not None:
        ok = got_error == case["error"]
        return ok, f"expected !{case['error']}, got {('!' + got_error) if got_error else got}"
    want = tokenize(case["expected"])
    ok = got_error is None and got == want
    shown = "!" + got_error if got_error else ". ".join(" ".join(s) for s in got)
    return ok, f"expected {case['expected']!r}, got {shown!r}"


def cmd_corpus(args, out):
    path = Path(args.file) if args.file else resources.default_corpus_path()
    cases = read_corpus(path.read_text(encoding="utf-8"))
    lex = _lexicon(args.lexicon)
    grammars = {EN: resources.default_grammar(EN), BN: resources.default_grammar(BN)}
    if not cases:
        out.write("1..0\n0 cases\n")
        return EXIT_OK
    out.write(f"1..{len(cases)}\n")
    failed = 0
    for k, case in enumerate(cases, 1):
        ok, detail = run_case(case, lex, grammars)
        if ok:
            out.write(f"ok {k} - {case['id']}\n")
        else:
            failed += 1
            out.write(f"not ok {k} - {case['id']} # {detail}\n")
    out.write(f"# {len(cases) - failed}/{len(cases)} passed\n")
    return EXIT_OK if failed == 0 else EXIT_TRANSLATE


def build_parser():
    p = _Parser(prog="discocirc", description="Text diagrams, circuits and EN/BN translation.")
    sub = p.add_subparsers(dest="command", required=True)

    def lang_opts(sp):
        sp.add_argument("--lang", type=_lang, required=True)
        sp.add_argument("--grammar")
        sp.add_argument("--lexicon")
        sp.add_argument("text", nargs="*")

    sp = sub.add_parser("parse", help="print the parse tree of each sentence")
    lang_opts(sp)
    sp = sub.add_parser("diagram", help="text diagram as DOT")
    lang_opts(sp)
    sp.add_argument("--raw", action="store_true", help="skip normalisation")
    sp = sub.add_parser("circuit", help="text circuit as DOT")
    lang_opts(sp)
    sp.add_argument("--updates", action="store_true", help="add inferred update nodes")
    sp = sub.add_parser("translate", help="translate text between EN and BN")
    sp.add_argument("--from", dest="src", type=_lang, required=True)
    sp.add_argument("--to", dest="tgt", type=_lang, required=True)
    sp.add_argument("--src-grammar")
    sp.add_argument("--tgt-grammar")
    sp.add_argument("--lexicon")
    sp.add_argument("--context", help='noun attributes, e.g. "Billie:animacy=inanimate"')
    sp.add_argument("--explain", action="store_true", help="print the diagnostic log")
    sp.add_argument("text", nargs="*")
    sp = sub.add_parser("conj", help="compile a conjunction to AND/NOT gates")
    sp.add_argument("--class", dest="cls", required=True)
    sp.add_argument("--arity", type=int, default=2)
    sp.add_argument("--names", help="comma separated variable names")
    sp.add_argument("--table", action="store_true")
    sp = sub.add_parser("corpus", help="run a translation corpus (TAP output)")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--lexicon")
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    for stream in (out, err):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    try:
        args = build_parser().parse_args(argv)
        if args.command == "parse":
            return cmd_parse(args, out)
        if args.command == "diagram":
            return cmd_diagram(args, out)
        if args.command == "circuit":
            return cmd_circuit(args, out)
        if args.command == "translate":
            return cmd_translate(args, out, err)
        if args.command == "conj":
            return cmd_conj(args, out)
        return cmd_corpus(args, out)
    except (UsageError, DiscoError, ValueError, OSError) as exc:
        code = getattr(exc, "code", "UsageError")
        err.write(f"error: {code}: {exc}\n")
        return exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
