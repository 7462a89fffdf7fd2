"""
Formats - presentation files, certificate files and GAP-style emission
"""

import logging
from typing import Iterable, List, Tuple

from .presentation import (
    CertificateError,
    CertificateStep,
    DerivationCertificate,
    Presentation,
    PresentationError,
)
from .word import Alphabet, RESERVED_CHARS, Word, invert
from .word_parser import WordSyntaxError, parse_word, print_word

logger = logging.getLogger(__name__)


def _content_lines(text: str) -> Iterable[Tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _relator(line: str, alphabet: Alphabet, number: int) -> Word:
    if line.count("=") > 1:
        raise PresentationError(f"Line {number}: more than one '=' in relation")
    try:
        if "=" in line:
            lhs, rhs = line.split("=")
            return parse_word(lhs, alphabet) * invert(parse_word(rhs, alphabet))
        return parse_word(line, alphabet)
    except WordSyntaxError as e:
        raise WordSyntaxError(f"Line {number}: {e.message}", e.position) from None


def parse_presentation(text: str) -> Presentation:
    """Read the 'group / gens / rel' format; '#' starts a comment"""
    lines = list(_content_lines(text))
    if len(lines) < 2:
        raise PresentationError("A presentation needs a 'group' line and a 'gens' line")
    (n1, first), (n2, second) = lines[0], lines[1]
    keyword, _, name = first.partition(" ")
    if keyword != "group" or not name.strip():
        raise PresentationError(f"Line {n1}: expected 'group <name>'")
    keyword, _, rest = second.partition(" ")
    if keyword != "gens":
        raise PresentationError(f"Line {n2}: expected 'gens <g1> <g2> ...'")
    names = rest.split()
    bad = [g for g in names if any(c in RESERVED_CHARS for c in g)]
    if bad:
        raise PresentationError(f"Line {n2}: reserved character in generator names {', '.join(bad)}")
    alphabet = Alphabet.of(names)
    relators: List[Word] = []
    for number, line in lines[2:]:
        keyword, _, body = line.partition(" ")
        if keyword != "rel" or not body.strip():
            raise PresentationError(f"Line {number}: expected 'rel <word>' or 'rel <word> = <word>'")
        relators.append(_relator(body, alphabet, number))
    p = Presentation(name.strip(), alphabet, tuple(relators))
    logger.debug("Parsed %s: %d generators, %d relators", p.name, len(names), len(p.relators))
    return p


def format_presentation(p: Presentation) -> str:
    lines = [f"group {p.name}", "gens " + " ".join(p.generators)]
    lines += [f"rel {print_word(r)}" for r in p.relators]
    return "\n".join(lines) + "\n"


def parse_certificate(text: str, alphabet: Alphabet) -> Tuple[Word, DerivationCertificate]:
    """Read a 'word <w>' header followed by 'step <index> <+1|-1> <conjugator>' lines"""
    target = None
    steps: List[CertificateStep] = []
    for number, line in _content_lines(text):
        keyword, _, body = line.partition(" ")
        if keyword == "word":
            if target is not None:
                raise CertificateError(f"Line {number}: duplicate 'word' header")
            target = parse_word(body, alphabet)
        elif keyword == "step":
            fields = body.split(None, 2)
            if len(fields) < 2:
                raise CertificateError(f"Line {number}: expected 'step <index> <+1|-1> <conjugator>'")
            try:
                index, exponent = int(fields[0]), int(fields[1])
            except ValueError:
                raise CertificateError(f"Line {number}: index and exponent must be integers") from None
            conjugator = parse_word(fields[2], alphabet) if len(fields) == 3 else alphabet.identity()
            steps.append(CertificateStep(index, exponent, conjugator))
        else:
            raise CertificateError(f"Line {number}: unknown keyword '{keyword}'")
    if target is None:
        raise CertificateError("Certificate has no 'word' header")
    return target, DerivationCertificate(tuple(steps))


def format_certificate(w: Word, cert: DerivationCertificate) -> str:
    lines = [f"word {print_word(w)}"]
    for step in cert.steps:
        lines.append(f"step {step.relator_index} {step.exponent:+d} {print_word(step.conjugator)}")
    return "\n".join(lines) + "\n"


def gap_name(g: str) -> str:
    return g.replace("@", "_")


def _gap_word(w: Word) -> str:
    parts = []
    for gen, sign in w:
        name = gap_name(gen.name)
        parts.append(name if sign > 0 else f"{name}^-1")
    return "*".join(parts)


def format_gap(p: Presentation) -> str:
    """A free group constructor line followed by the relator list"""
    names = [gap_name(g) for g in p.generators]
    clashes = sorted({g for g in p.generators if names.count(gap_name(g)) > 1})
    if clashes:
        raise PresentationError(f"Generators {', '.join(clashes)} share a GAP name in {p.name}")
    quoted = ", ".join(f'"{g}"' for g in names)
    lines = [f"F := FreeGroup({quoted});;"]
    if names:
        lines.append("".join(f"{g} := F.{i};; " for i, g in enumerate(names, start=1)).rstrip())
    rels = ", ".join(_gap_word(r) for r in p.relators)
    lines.append(f"rels := [{rels}];;")
    lines.append("G := F / rels;;")
    return "\n".join(lines) + "\n"
