"""
Chain, path and certificate documents.

A chain document alternates term lines with arrow lines (``->`` or
``<-``); blank lines are ignored. Certificates are emitted either as text,
one ``TERM -[position]-> TERM`` line per step, or as JSON through the
pydantic models below.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError

from ..bounds.models import OVERFLOW, BoundCheck, BoundValue
from ..config import DEFAULT_LIMITS, ResourceLimits
from ..exceptions import InputError, LinkInvalidError, ParseError
from ..join.chains import infer_witness
from ..join.models import EqualityChain, JoinCertificate
from ..reduction.models import Arrow, ReductionPath, Step
from ..terms.models import format_position, parse_position, position_letters
from .parser import parse_term
from .printer import print_term

logger = logging.getLogger(__name__)

TEXT = "text"
JSON = "json"
FORMATS = (TEXT, JSON)


class StepDocument(BaseModel):
    """One contraction; ``redex`` uses step letters (empty for the root)."""

    source: str
    redex: str
    target: str


class LengthsDocument(BaseModel):
    left: int = Field(..., ge=0)
    right: int = Field(..., ge=0)


class BoundCheckDocument(BaseModel):
    name: str
    actual: int
    bound: str
    passed: bool


class CertificateDocument(BaseModel):
    """Structured form of a join certificate."""

    descriptor: str
    reduct: str
    left_steps: List[StepDocument] = Field(default_factory=list)
    right_steps: List[StepDocument] = Field(default_factory=list)
    lengths: LengthsDocument
    bound_checks: List[BoundCheckDocument] = Field(default_factory=list)


class JoinReport(BaseModel):
    """All certificates of one ``join`` invocation."""

    mode: str
    passed: bool
    details: Dict[str, int] = Field(default_factory=dict)
    certificates: List[CertificateDocument] = Field(default_factory=list)


# Chains and paths


def _content_lines(text: str) -> List[Tuple[int, str]]:
    """(line number, stripped text) of every non-blank line; CRLF tolerated."""
    return [
        (number, line.strip())
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip()
    ]


def parse_chain(text: str, limits: ResourceLimits = DEFAULT_LIMITS) -> EqualityChain:
    """
    Parse a chain document and infer a witness for every link.

    Args:
        text: Term and arrow lines
        limits: Resource caps for the witness search

    Returns:
        EqualityChain: Terms and arrows as written

    Raises:
        ParseError: Malformed term or arrow line
        LinkInvalidError: No redex of a link's source contracts to its target
    """
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty chain document", 1, 1)
    if len(lines) % 2 == 0:
        number, _ = lines[-1]
        raise ParseError("a chain must end with a term", number, 1)

    terms = []
    arrows = []
    for index, (number, line) in enumerate(lines):
        if index % 2 == 0:
            terms.append(parse_term(line, number))
            continue
        try:
            arrows.append(Arrow.parse(line))
        except ValueError:
            raise ParseError(f"expected '->' or '<-', found {line!r}", number, 1) from None

    witnesses = []
    for i, arrow in enumerate(arrows):
        source, target = terms[i], terms[i + 1]
        if arrow is Arrow.LEFT:
            source, target = target, source
        witness = infer_witness(source, target, limits)
        if witness is None:
            raise LinkInvalidError(
                f"link {i}: no redex of the source contracts to the target", lines[2 * i + 1][0]
            )
        witnesses.append(witness)

    logger.debug(f"parsed chain of length {len(arrows)}")
    return EqualityChain(tuple(terms), tuple(arrows), tuple(witnesses))


def print_chain(chain: EqualityChain) -> str:
    """Render a chain document; witnesses are left to inference."""
    lines = [print_term(chain.terms[0])]
    for arrow, term in zip(chain.arrows, chain.terms[1:]):
        lines.append(arrow.symbol)
        lines.append(print_term(term))
    return "\n".join(lines) + "\n"


def parse_path(text: str, limits: ResourceLimits = DEFAULT_LIMITS) -> ReductionPath:
    """Parse a chain document whose links all point right."""
    chain = parse_chain(text, limits)
    if chain.left_count:
        raise InputError("a reduction path may only contain '->' links")
    return ReductionPath(chain.source, tuple(chain.link(i) for i in range(chain.length)))


def print_path(path: ReductionPath) -> str:
    lines = [print_term(path.source)]
    for step in path.steps:
        lines.append(Arrow.RIGHT.symbol)
        lines.append(print_term(step.target))
    return "\n".join(lines) + "\n"


# Certificates


def _step_document(step: Step) -> StepDocument:
    return StepDocument(
        source=print_term(step.source),
        redex=position_letters(step.redex),
        target=print_term(step.target),
    )


def certificate_document(cert: JoinCertificate, bit_cap: Optional[int] = None) -> CertificateDocument:
    """The structured form of ``cert``."""
    left, right = cert.lengths
    return CertificateDocument(
        descriptor=cert.descriptor,
        reduct=print_term(cert.reduct),
        left_steps=[_step_document(step) for step in cert.left_path.steps],
        right_steps=[_step_document(step) for step in cert.right_path.steps],
        lengths=LengthsDocument(left=left, right=right),
        bound_checks=[
            BoundCheckDocument(
                name=check.name,
                actual=check.actual,
                bound=check.bound.render(bit_cap),
                passed=check.passed,
            )
            for check in cert.bound_checks
        ],
    )


def format_step(step: Step) -> str:
    """``SOURCE -[Fun.Body]-> TARGET``."""
    return f"{print_term(step.source)} -[{format_position(step.redex)}]-> {print_term(step.target)}"


def _path_lines(label: str, path: ReductionPath) -> List[str]:
    if not path.steps:
        return []
    noun = "step" if path.length == 1 else "steps"
    lines = [f"{label} path ({path.length} {noun}):"]
    lines.extend(f"  {format_step(step)}" for step in path.steps)
    return lines


def render_certificate_text(cert: JoinCertificate, bit_cap: Optional[int] = None) -> str:
    lines = [f"certificate {cert.descriptor}", f"reduct: {print_term(cert.reduct)}"]
    lines += _path_lines("left", cert.left_path)
    lines += _path_lines("right", cert.right_path)
    if cert.bound_checks:
        lines.append("bound checks:")
        for check in cert.bound_checks:
            verdict = "ok" if check.passed else "FAILED"
            lines.append(
                f"  {check.name}: {check.actual} <= {check.bound.render(bit_cap)} {verdict}"
            )
    return "\n".join(lines) + "\n"


def emit_certificate(
    cert: JoinCertificate, fmt: str = TEXT, bit_cap: Optional[int] = None
) -> str:
    """
    Serialize a certificate.

    Args:
        cert: Certificate to emit
        fmt: ``text`` or ``json``
        bit_cap: Bit cap named in rendered overflow bounds

    Returns:
        str: The document, newline-terminated
    """
    if fmt == JSON:
        return certificate_document(cert, bit_cap).model_dump_json(indent=2) + "\n"
    if fmt != TEXT:
        raise InputError(f"Unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
    return render_certificate_text(cert, bit_cap)


def _parse_bound(text: str) -> BoundValue:
    if text.startswith("overflow"):
        return OVERFLOW
    try:
        return BoundValue(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"Invalid bound value {text!r}") from None


def _path_from_steps(steps: List[StepDocument], start: str) -> ReductionPath:
    if not steps:
        return ReductionPath.empty(parse_term(start))
    parsed = []
    for step in steps:
        try:
            redex = parse_position(step.redex)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        parsed.append(Step(parse_term(step.source), redex, parse_term(step.target)))
    return ReductionPath(parsed[0].source, tuple(parsed))


def certificate_from_document(document: CertificateDocument) -> JoinCertificate:
    """Rebuild a certificate; paths are taken verbatim, not replayed."""
    return JoinCertificate(
        reduct=parse_term(document.reduct),
        left_path=_path_from_steps(document.left_steps, document.reduct),
        right_path=_path_from_steps(document.right_steps, document.reduct),
        descriptor=document.descriptor,
        bound_checks=tuple(
            BoundCheck(
                name=check.name,
                actual=check.actual,
                bound=_parse_bound(check.bound),
                passed=check.passed,
            )
            for check in document.bound_checks
        ),
    )


def parse_certificate(text: str) -> JoinCertificate:
    """Parse one JSON certificate."""
    try:
        document = CertificateDocument.model_validate_json(text)
    except ValidationError as exc:
        raise InputError(f"Invalid certificate document: {exc.error_count()} errors") from None
    return certificate_from_document(document)


def load_certificates(text: str) -> List[JoinCertificate]:
    """Certificates of a JSON certificate or of a whole join report."""
    try:
        report = JoinReport.model_validate_json(text)
    except ValidationError:
        return [parse_certificate(text)]
    return [certificate_from_document(document) for document in report.certificates]
