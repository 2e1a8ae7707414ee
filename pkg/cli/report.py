"""Text and JSON rendering of run results

Contains the following functions:
    * verdict_to_dict
    * render_json
    * render_text

"""

import json
from typing import List

from natsort import natsorted

from cli.run import RunResult
from srcheck import Status, Verdict
from syntax import print_term


def _equations(equations) -> List[str]:
    return [] if equations is None else [str(e) for e in equations]


def _ground_rules(verdict: Verdict) -> List[str]:
    if verdict.ground_rules is None:
        return []
    return [
        f"{print_term(rule.lhs)} ↪ {print_term(rule.rhs)}"
        for rule in verdict.ground_rules
    ]


def verdict_to_dict(verdict: Verdict) -> dict:
    """JSON-ready form of a verdict; the key set does not depend on status"""
    inferred = verdict.inferred_type
    return {
        "head": verdict.head,
        "label": verdict.label,
        "line": verdict.line,
        "status": verdict.status.value,
        "reasons": list(verdict.reasons),
        "inferred_type": None if inferred is None else print_term(inferred),
        "equations": _equations(verdict.equations),
        "simplified": _equations(verdict.simplified),
        "ground_rules": _ground_rules(verdict),
        "precedence": None if verdict.precedence is None else str(verdict.precedence),
        "warnings": list(verdict.warnings),
        "postponement": [str(condition) for condition in verdict.postponement],
    }


def render_json(result: RunResult) -> str:
    confluence = result.confluence
    document = {
        "file": result.path,
        "exit_code": result.exit_code,
        "error": result.error,
        "confluence": None
        if confluence is None
        else {"orthogonal": confluence.orthogonal, "messages": confluence.messages()},
        "rules": [verdict_to_dict(verdict) for verdict in result.verdicts],
    }
    return json.dumps(document, ensure_ascii=False, indent=2)


def _braced(items: List[str]) -> str:
    return "{" + ", ".join(items) + "}"


def _render_verdict(verdict: Verdict) -> List[str]:
    where = f" (line {verdict.line})" if verdict.line is not None else ""
    lines = [f"rule {verdict.label}{where}: {verdict.status.value}"]
    lines += [f"  reason: {reason}" for reason in verdict.reasons]

    if verdict.inferred_type is not None:
        lines.append(f"  inferred type: {print_term(verdict.inferred_type)}")
    if verdict.equations is not None:
        lines.append(f"  equations: {_braced(_equations(verdict.equations))}")
    if verdict.simplified is not None:
        lines.append(f"  simplified: {_braced(_equations(verdict.simplified))}")
    if verdict.precedence is not None:
        lines.append(f"  precedence: {verdict.precedence}")
    if verdict.ground_rules is not None:
        lines.append(f"  ground rules: {_braced(_ground_rules(verdict))}")

    if verdict.postponement:
        lines.append("  postponement:")
        lines += [f"    {condition}" for condition in verdict.postponement]
    lines += [f"  warning: {warning}" for warning in verdict.warnings]
    return lines


def render_text(result: RunResult) -> str:
    if result.error is not None:
        kind = "error" if result.verdicts else "load error"
        return f"{result.path}: {kind}: {result.error}\n"

    lines = [f"file: {result.path}"]
    if result.confluence is not None:
        lines += [f"confluence: {m}" for m in result.confluence.messages()]

    for verdict in result.verdicts:
        lines += _render_verdict(verdict)

    counts = {
        status: natsorted(v.label for v in result.verdicts if v.status is status)
        for status in Status
    }
    lines.append(
        "summary: "
        + ", ".join(
            f"{len(labels)} {status.value.lower()}" for status, labels in counts.items()
        )
    )
    for status in (Status.REJECTED, Status.INAPPLICABLE):
        if counts[status]:
            lines.append(f"{status.value.lower()}: {', '.join(counts[status])}")

    return "\n".join(lines) + "\n"
