"""Batch checking of every rule of a source file

Contains the following:
    * OutputFormat, RunConfig, RunResult
    * EXIT_OK, EXIT_FAILED, EXIT_LOAD_ERROR
    * load_signature
    * run

"""

import enum
import logging
import sys
from dataclasses import dataclass, field
from functools import partial
from typing import List, Optional

from tqdm import tqdm
from tqdm.contrib.concurrent import thread_map

from kernel import (
    DEFAULT_FUEL,
    ConfluenceReport,
    Rule,
    Signature,
    SignatureError,
    confluence_diagnostics,
)
from srcheck import Verdict, check_rule, override_names
from syntax import SOURCE_EXTENSION, ParseError, parse
from utils import read_source, resolve_source

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_LOAD_ERROR = 2

DEFAULT_WORKERS = 4


class OutputFormat(enum.Enum):
    TEXT = "text"
    JSON = "json"


@dataclass
class RunConfig:
    path: str
    fuel: int = DEFAULT_FUEL
    precedence: Optional[str] = None
    output: OutputFormat = OutputFormat.TEXT
    strict: bool = False
    workers: int = DEFAULT_WORKERS
    progress: bool = True

    def __post_init__(self):
        if self.fuel <= 0:
            raise ValueError(f"fuel must be positive, got {self.fuel}")
        if self.workers <= 0:
            raise ValueError(f"workers must be positive, got {self.workers}")


@dataclass
class RunResult:
    exit_code: int
    path: str
    verdicts: List[Verdict] = field(default_factory=list)
    confluence: Optional[ConfluenceReport] = None
    error: Optional[str] = None

    @property
    def warnings(self) -> List[str]:
        warnings = []
        if self.confluence is not None and not self.confluence.orthogonal:
            warnings += self.confluence.messages()
        for verdict in self.verdicts:
            warnings += [f"{verdict.label}: {w}" for w in verdict.warnings]
        return warnings


def load_signature(path: str, fuel: int = DEFAULT_FUEL) -> Signature:
    """Reads, parses and declares everything in the source file at `path`

    Raises:
        OSError: If the file cannot be read.
        ValueError: If the path is not a source file.
        ParseError: If the text is not in the surface syntax.
        SignatureError: At the first ill-typed declaration or ill-formed rule.

    """
    path = resolve_source(path, SOURCE_EXTENSION)
    source = parse(read_source(path))
    logger.info("parsed %d declarations from %s", len(source), path)
    return Signature.from_source(source, fuel)


def _check(sig: Signature, cfg: RunConfig, rule: Rule) -> Verdict:
    verdict = check_rule(sig, rule, cfg.precedence, cfg.fuel, strict_override=False)
    if cfg.progress:
        tqdm.write(f"checked {verdict}", file=sys.stderr)
    return verdict


def _unused_override_names(listed: List[str], verdicts: List[Verdict]) -> List[str]:
    # each rule applies the names its own precedence orders
    return [
        name
        for name in listed
        if not any(v.precedence is not None and name in v.precedence for v in verdicts)
    ]


def run(cfg: RunConfig) -> RunResult:
    """Checks every rule of `cfg.path` for subject reduction

    Loading stops at the first error; once loaded, every rule is checked
    even after a rejection, and verdicts come back in declaration order.

    Args:
        cfg (RunConfig): What to check and how.

    Returns:
        RunResult: EXIT_OK if every rule is accepted (and, when strict,
            nothing was assumed), EXIT_FAILED if some rule is not,
            EXIT_LOAD_ERROR if the file could not be loaded or the
            precedence override names something no rule's precedence orders

    """
    try:
        sig = load_signature(cfg.path, cfg.fuel)
        listed = override_names(cfg.precedence) if cfg.precedence else []
    except (OSError, ParseError, SignatureError, ValueError) as err:
        logger.error("could not load %s: %s", cfg.path, err)
        return RunResult(EXIT_LOAD_ERROR, cfg.path, error=str(err))

    confluence = confluence_diagnostics(sig)

    verdicts = thread_map(
        partial(_check, sig, cfg),
        sig.rules,
        max_workers=cfg.workers,
        leave=False,
        desc="rules",
        disable=not cfg.progress,
    )

    result = RunResult(EXIT_OK, cfg.path, list(verdicts), confluence)
    unused = _unused_override_names(listed, result.verdicts)
    if unused:
        result.exit_code = EXIT_LOAD_ERROR
        result.error = (
            f"precedence override mentions names no rule uses: {', '.join(unused)}"
        )
        logger.error("%s: %s", cfg.path, result.error)
        return result

    if not all(verdict.accepted for verdict in result.verdicts):
        result.exit_code = EXIT_FAILED
    elif cfg.strict and result.warnings:
        result.exit_code = EXIT_FAILED

    logger.info("%s: exit code %d", cfg.path, result.exit_code)
    return result
