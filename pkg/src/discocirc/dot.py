"""Deterministic Graphviz DOT output for diagrams and circuits."""

from .diagram import GateVertex


def _q(text):
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _end(e):
    if e[0] == "in":
        return f"in{e[1]}"
    if e[0] == "out":
        return f"out{e[1]}"
    return f"w{e[1]}"


def diagram_to_dot(d):
    if not d.vertices and not d.wires:
        return "digraph{}\n"
    lines = ["digraph{", "  rankdir=TB;", "  node [fontname=Helvetica];"]
    for i in range(d.n_inputs):
        lines.append(f"  in{i} [shape=point];")
    in_bubble = set()
    for k, b in enumerate(sorted(d.bubbles, key=lambda b: (b.owner, sorted(b.members)))):
        owner = d.vertices[b.owner]
        lines.append(f"  subgraph cluster_{k} {{")
        lines.append(f"    label={_q(owner.terminal)}; style=rounded;")
        for m in sorted(b.members):
            lines.append(f"    w{m};")
        lines.append("  }")
        in_bubble |= set(b.members)
    for vid, v in sorted(d.vertices.items()):
        if isinstance(v, GateVertex):
            lines.append(f"  w{vid} [label={_q(v.kind)}, shape=diamond];")
        else:
            pos = v.pos or "-"
            lines.append(f"  w{vid} [label={_q(v.terminal)}, shape=box, xlabel={_q(pos)}];")
    for i in range(d.n_outputs):
        lines.append(f"  out{i} [shape=point];")
    for w in d.wires:
        lines.append(f"  {_end(w.src)} -> {_end(w.tgt)} [label={_q(w.type)}];")
    for mod, target in d.attachments:
        lines.append(f"  w{mod} -> w{target} [style=dashed, arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def circuit_to_dot(c):
    if not c.wires and not c.boxes:
        return "digraph{}\n"
    lines = ["digraph{", "  rankdir=TB;", "  node [fontname=Helvetica];"]
    ids = {}
    counter = [0]
    body = []
    anchor = {}   # box id -> a plain node inside it, for wire edges

    def emit(box, indent):
        bid = f"b{counter[0]}"
        counter[0] += 1
        ids[id(box)] = bid
        pad = "  " * indent
        if box.nested:
            label = box.terminal or box.kind
            body.append(f"{pad}subgraph cluster_{bid} {{")
            body.append(f"{pad}  label={_q(label)}; style=rounded;")
            inner = [emit(x, indent + 1) for x in box.nested]
            body.append(f"{pad}}}")
            anchor[bid] = anchor[inner[0]]
        else:
            text = box.terminal
            if box.adverbs:
                text += " (" + ", ".join(box.adverbs) + ")"
            body.append(f"{pad}{bid} [label={_q(text)}, shape=box];")
            anchor[bid] = bid
        return bid

    for b in c.boxes:
        emit(b, 1)
    for i, w in enumerate(c.wires):
        lines.append(f"  w{i} [label={_q(w.label)}, shape=plaintext];")
    lines += body
    for k, u in enumerate(c.updates):
        lines.append(f"  u{k} [label={_q(u.label)}, shape=circle];")
    for i in range(len(c.wires)):
        # an update sits just before the boxes of the sentence that justified it
        items = []
        for n, b in enumerate(c.boxes):
            touching = [x for x in b.walk() if i in x.operands and not x.nested]
            if touching:
                items.append((b.sentence, 1, n, ids[id(touching[0])]))
            elif any(i in x.operands for x in b.walk()):
                items.append((b.sentence, 1, n, anchor[ids[id(b)]]))
        items += [(u.position, 0, k, f"u{k}") for k, u in enumerate(c.updates) if u.wire == i]
        chain = [f"w{i}"] + [name for *_, name in sorted(items)]
        for a, b in zip(chain, chain[1:]):
            lines.append(f"  {a} -> {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
