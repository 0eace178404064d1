"""Readers and writers for frameworks and results.

Input formats:
- APX: ``arg(NAME).`` and ``att(NAME,NAME).`` facts, ``%`` comments.
- TGF: node lines ``ID [label]``, a line holding only ``#``, then edge lines
  ``FROM TO``; an edge means FROM attacks TO.

Argument order is declaration order in both formats. Output is JSON (fixed key
order, shortest round-trip floats), CSV and a plain-text table.
"""

from __future__ import annotations

import csv
import io
import json
import re
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import ParseDiagnostic, ParseError
from .events import log_event
from .framework import ArgSet, ArgumentationFramework

if TYPE_CHECKING:  # pragma: no cover
    from evaluator.ranking import Ranking

    from .counting import StrengthVector


_NAME = r"[A-Za-z0-9_]+"
_NAME_RE = re.compile(rf"^{_NAME}$")
_FACT_RE = re.compile(rf"(arg|att)\s*\(\s*({_NAME})\s*(?:,\s*({_NAME})\s*)?\)\s*\.")


def _strip_comment(line: str) -> str:
    cut = line.find("%")
    return line if cut < 0 else line[:cut]


def parse_apx_with_diagnostics(text: str) -> Tuple[ArgumentationFramework, List[ParseDiagnostic]]:
    diags: List[ParseDiagnostic] = []
    names: List[str] = []
    declared: Dict[str, int] = {}
    pending: List[Tuple[str, str, int, int, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        pos = 0
        while pos < len(line):
            if line[pos].isspace():
                pos += 1
                continue
            m = _FACT_RE.match(line, pos)
            if not m:
                diags.append(ParseDiagnostic(lineno, pos + 1, "expected 'arg(NAME).' or 'att(NAME,NAME).'"))
                break
            kind, first, second = m.group(1), m.group(2), m.group(3)
            if kind == "arg":
                if second is not None:
                    diags.append(ParseDiagnostic(lineno, m.start(3) + 1, "arg takes exactly one name"))
                elif first in declared:
                    diags.append(ParseDiagnostic(lineno, m.start(2) + 1, f"duplicate declaration of argument '{first}'", "warning"))
                else:
                    declared[first] = len(names)
                    names.append(first)
            elif second is None:
                diags.append(ParseDiagnostic(lineno, m.end(2) + 1, "att takes two names"))
            else:
                pending.append((first, second, lineno, m.start(2) + 1, m.start(3) + 1))
            pos = m.end()

    pairs = set()
    for first, second, lineno, col1, col2 in pending:
        ok = True
        for name, col in ((first, col1), (second, col2)):
            if name not in declared:
                diags.append(ParseDiagnostic(lineno, col, f"undeclared argument '{name}'"))
                ok = False
        if not ok:
            continue
        pair = (declared[first], declared[second])
        if pair in pairs:
            diags.append(ParseDiagnostic(lineno, col1, f"duplicate attack ({first},{second})", "warning"))
        pairs.add(pair)

    diags.sort(key=lambda d: (d.line, d.column))
    return ArgumentationFramework(tuple(names), frozenset(pairs)), diags


def parse_tgf_with_diagnostics(text: str) -> Tuple[ArgumentationFramework, List[ParseDiagnostic]]:
    diags: List[ParseDiagnostic] = []
    names: List[str] = []
    declared: Dict[str, int] = {}
    pairs = set()
    in_edges = False
    lines = text.splitlines()

    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped == "#":
            if in_edges:
                diags.append(ParseDiagnostic(lineno, raw.index("#") + 1, "second '#' separator"))
            in_edges = True
            continue
        tokens = raw.split()
        col = raw.index(tokens[0]) + 1
        if not in_edges:
            node = tokens[0]
            if node in declared:
                diags.append(ParseDiagnostic(lineno, col, f"duplicate node '{node}'", "warning"))
                continue
            declared[node] = len(names)
            names.append(node)
            continue
        if len(tokens) < 2:
            diags.append(ParseDiagnostic(lineno, col, "edge line needs 'FROM TO'"))
            continue
        ok = True
        offset = 0
        for tok in tokens[:2]:
            tcol = raw.index(tok, offset) + 1
            offset = tcol - 1 + len(tok)
            if tok not in declared:
                diags.append(ParseDiagnostic(lineno, tcol, f"unknown node '{tok}'"))
                ok = False
        if ok:
            pairs.add((declared[tokens[0]], declared[tokens[1]]))

    if not in_edges:
        diags.append(ParseDiagnostic(max(1, len(lines)), 1, "missing '#' separator between nodes and edges"))

    return ArgumentationFramework(tuple(names), frozenset(pairs)), diags


def _raise_or_warn(af: ArgumentationFramework, diags: List[ParseDiagnostic], fmt: str, source: Optional[str]) -> ArgumentationFramework:
    errors = [d for d in diags if d.severity == "error"]
    for d in diags:
        if d.severity == "warning":
            log_event("parser", str(d), level="warning", meta={"format": fmt, "source": source})
    if errors:
        raise ParseError(errors, source)
    return af


def parse_apx(text: str, source: Optional[str] = None) -> ArgumentationFramework:
    af, diags = parse_apx_with_diagnostics(text)
    return _raise_or_warn(af, diags, "apx", source)


def parse_tgf(text: str, source: Optional[str] = None) -> ArgumentationFramework:
    af, diags = parse_tgf_with_diagnostics(text)
    return _raise_or_warn(af, diags, "tgf", source)


def _sorted_attacks(af: ArgumentationFramework) -> List[Tuple[int, int]]:
    return sorted(af.attacks)


def write_apx(af: ArgumentationFramework) -> str:
    for name in af.arguments:
        if not _NAME_RE.match(name):
            raise ValueError(f"argument name {name!r} cannot be written as APX")
    lines = [f"arg({name})." for name in af.arguments]
    lines += [f"att({af.arguments[a]},{af.arguments[b]})." for a, b in _sorted_attacks(af)]
    return "\n".join(lines) + "\n"


def write_tgf(af: ArgumentationFramework) -> str:
    lines = list(af.arguments) + ["#"]
    lines += [f"{af.arguments[a]} {af.arguments[b]}" for a, b in _sorted_attacks(af)]
    return "\n".join(lines) + "\n"


def sniff_format(text: str, path: Optional[str] = None) -> str:
    if path:
        suffix = Path(path).suffix.lower()
        if suffix in (".apx", ".tgf"):
            return suffix[1:]
    for raw in text.splitlines():
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if line.startswith(("arg(", "att(", "arg ", "att ")):
            return "apx"
        break
    if any(line.strip() == "#" for line in text.splitlines()):
        return "tgf"
    return "apx"


def _decode(data: bytes, source: str) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data.count(b"\n", 0, e.start) + 1
        # bytes before the first bad one decode cleanly, so columns count characters
        column = len(data[data.rfind(b"\n", 0, e.start) + 1 : e.start].decode("utf-8")) + 1
        raise ParseError([ParseDiagnostic(line, column, f"invalid UTF-8 (byte 0x{data[e.start]:02x})")], source) from None


def load_framework(path: str, fmt: str = "auto") -> ArgumentationFramework:
    """Read a framework from a file path, or standard input for '-'."""
    if path == "-":
        source = "<stdin>"
        buffer = getattr(sys.stdin, "buffer", None)
        text = _decode(buffer.read(), source) if buffer is not None else sys.stdin.read()
    else:
        source = path
        text = _decode(Path(path).read_bytes(), source)
    if fmt == "auto":
        fmt = sniff_format(text, None if path == "-" else path)
    if fmt == "tgf":
        return parse_tgf(text, source)
    return parse_apx(text, source)


def _named_sets(af: ArgumentationFramework, sets: Sequence[ArgSet]) -> List[List[str]]:
    return [af.names(s) for s in sets]


def emit_results(
    af: ArgumentationFramework,
    strengths: "StrengthVector",
    ranking: Optional["Ranking"] = None,
    extensions: Optional[Mapping[str, Sequence[ArgSet]]] = None,
) -> str:
    report: Dict[str, object] = {
        "arguments": list(af.arguments),
        "alpha": strengths.alpha,
        "epsilon": strengths.epsilon,
        "iterations": strengths.iterations,
        "strengths": strengths.as_dict(af.arguments),
        "ranking": [[af.arguments[i] for i in group] for group in ranking.groups] if ranking is not None else [],
    }
    if extensions is not None:
        report["extensions"] = {str(kind): _named_sets(af, sets) for kind, sets in extensions.items()}
    return json.dumps(report, ensure_ascii=False, indent=2) + "\n"


def emit_extensions(af: ArgumentationFramework, extensions: Mapping[str, Sequence[ArgSet]]) -> str:
    report = {
        "arguments": list(af.arguments),
        "extensions": {str(kind): _named_sets(af, sets) for kind, sets in extensions.items()},
    }
    return json.dumps(report, ensure_ascii=False, indent=2) + "\n"


def emit_csv(af: ArgumentationFramework, strengths: "StrengthVector") -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["argument", "strength"])
    for name, value in strengths.as_dict(af.arguments).items():
        writer.writerow([name, repr(value)])
    return buf.getvalue()


def format_ranking(af: ArgumentationFramework, strengths: "StrengthVector", ranking: "Ranking") -> str:
    groups = []
    for group in ranking.groups:
        groups.append(" ~ ".join(f"{af.arguments[i]}={strengths[i]:.2f}" for i in group))
    return " > ".join(groups)


def emit_table(af: ArgumentationFramework, strengths: "StrengthVector", ranking: Optional["Ranking"] = None) -> str:
    width = max([len("argument")] + [len(a) for a in af.arguments])
    lines = [f"{'argument':<{width}}  strength"]
    for i, name in enumerate(af.arguments):
        lines.append(f"{name:<{width}}  {strengths[i]:.2f}")
    if strengths.method == "direct":
        lines.append(f"direct solve (alpha={strengths.alpha})")
    elif strengths.alpha is not None:
        lines.append(f"iterations: {strengths.iterations} (alpha={strengths.alpha}, epsilon={strengths.epsilon})")
    else:
        lines.append(f"iterations: {strengths.iterations} (epsilon={strengths.epsilon})")
    if ranking is not None and af.n:
        lines.append("ranking: " + format_ranking(af, strengths, ranking))
    return "\n".join(lines) + "\n"


__all__ = [
    "ParseDiagnostic",
    "parse_apx",
    "parse_apx_with_diagnostics",
    "parse_tgf",
    "parse_tgf_with_diagnostics",
    "write_apx",
    "write_tgf",
    "sniff_format",
    "load_framework",
    "emit_results",
    "emit_extensions",
    "emit_csv",
    "emit_table",
    "format_ranking",
]
