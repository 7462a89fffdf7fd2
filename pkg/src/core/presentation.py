"""
Presentation - finite presentations, Tietze elimination and checked certificates
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .word import Alphabet, AlphabetMismatchError, Word, concat, invert

logger = logging.getLogger(__name__)


class PresentationError(ValueError):
    """Raised for malformed presentations"""


class TietzeError(ValueError):
    """Raised when a generator cannot be eliminated"""


class CertificateError(ValueError):
    """Raised for malformed certificates or missing certificates"""


@dataclass(frozen=True)
class Presentation:
    """Generators plus relators, each relator meaning '= identity'"""
    name: str
    alphabet: Alphabet
    relators: Tuple[Word, ...] = ()

    def __post_init__(self):
        kept = []
        for relator in self.relators:
            if relator.alphabet != self.alphabet:
                raise PresentationError(f"Relator '{relator}' is not over the alphabet of {self.name}")
            if not relator.is_identity():
                kept.append(relator)
        object.__setattr__(self, "relators", tuple(kept))

    @classmethod
    def build(cls, name: str, generators: Sequence[str], relators: Iterable[Word] = ()) -> "Presentation":
        return cls(name, Alphabet.of(generators), tuple(relators))

    @property
    def generators(self) -> Tuple[str, ...]:
        return self.alphabet.names

    def __len__(self) -> int:
        return len(self.relators)

    def gen(self, name: str) -> Word:
        return self.alphabet.gen(name)

    def copy_renamed(self, suffix, name: Optional[str] = None) -> "Presentation":
        """Rename generator g to 'g@suffix'"""
        rename = {g: f"{g}@{suffix}" for g in self.generators}
        return self.renamed(rename, name or f"{self.name}@{suffix}")

    def renamed(self, rename: Mapping[str, str], name: Optional[str] = None) -> "Presentation":
        target = Alphabet.of(rename.get(g, g) for g in self.generators)
        relators = tuple(r.relabel(target, rename) for r in self.relators)
        return Presentation(name or self.name, target, relators)


def disjoint_union(name: str, parts: Sequence[Presentation], extra_generators: Sequence[str] = ()) -> Presentation:
    """Free product of presentations with pairwise disjoint alphabets"""
    names: List[str] = []
    for part in parts:
        names.extend(part.generators)
    names.extend(extra_generators)
    alphabet = Alphabet.of(names)
    relators: List[Word] = []
    for part in parts:
        relators.extend(r.relabel(alphabet) for r in part.relators)
    return Presentation(name, alphabet, tuple(relators))


def add_relators(p: Presentation, extra: Sequence[Word], name: Optional[str] = None) -> Presentation:
    """Quotient of p by the normal closure of extra"""
    for w in extra:
        if w.alphabet != p.alphabet:
            raise AlphabetMismatchError(f"Extra relator '{w}' is not over the alphabet of {p.name}")
    if not extra:
        return p
    return Presentation(name or f"{p.name}/{len(extra)}", p.alphabet, p.relators + tuple(extra))


def _is_cyclic_match(relator: Word, target: Word) -> bool:
    if len(relator) != len(target):
        return False
    t = target.letters
    for candidate in (relator.letters, invert(relator).letters):
        doubled = candidate + candidate
        for k in range(len(candidate)):
            if doubled[k:k + len(candidate)] == t:
                return True
    return False


def tietze_eliminate(p: Presentation, g: str, defining: Word) -> Presentation:
    """Remove generator g using a relator of the form g * defining^-1.

    The defining relator may appear as any cyclic permutation or inverse. Every
    remaining occurrence of g is replaced by ``defining``. A generator that no
    relator uses is simply dropped.
    """
    if g not in p.alphabet:
        raise TietzeError(f"Generator '{g}' not in {p.name}")
    if defining.alphabet != p.alphabet:
        raise AlphabetMismatchError("Defining word is not over the presentation alphabet")
    if defining.uses(g):
        raise TietzeError(f"Defining word for '{g}' uses '{g}' itself")
    new_alphabet = Alphabet.of(name for name in p.generators if name != g)
    if not any(r.uses(g) for r in p.relators):
        logger.debug("Dropped unused generator %s from %s", g, p.name)
        return Presentation(p.name, new_alphabet, tuple(r.relabel(new_alphabet) for r in p.relators))
    target = concat(p.gen(g), invert(defining))
    found = None
    for i, relator in enumerate(p.relators):
        if _is_cyclic_match(relator, target):
            found = i
            break
    if found is None:
        raise TietzeError(f"No defining relator {target} for '{g}' in {p.name}")

    images: Dict[str, Word] = {name: new_alphabet.gen(name) for name in new_alphabet}
    images[g] = defining.relabel(new_alphabet)
    relators = [r.substitute(images, new_alphabet) for i, r in enumerate(p.relators) if i != found]
    logger.debug("Eliminated %s from %s (%d relators left)", g, p.name, len(relators))
    return Presentation(p.name, new_alphabet, tuple(relators))


@dataclass(frozen=True)
class CertificateStep:
    relator_index: int
    exponent: int
    conjugator: Word

    def __post_init__(self):
        if self.exponent not in (1, -1):
            raise CertificateError(f"Step exponent must be +1 or -1, got {self.exponent}")


@dataclass(frozen=True)
class DerivationCertificate:
    """Witness that a word is a product of conjugated relators"""
    steps: Tuple[CertificateStep, ...] = ()

    @classmethod
    def single(cls, relator_index: int, exponent: int, conjugator: Word) -> "DerivationCertificate":
        return cls((CertificateStep(relator_index, exponent, conjugator),))


def certificate_product(p: Presentation, cert: DerivationCertificate) -> Word:
    """Free reduction of prod c * r^e * c^-1 over the certificate steps"""
    result = p.alphabet.identity()
    for step in cert.steps:
        if not 0 <= step.relator_index < len(p.relators):
            raise CertificateError(
                f"Relator index {step.relator_index} out of range for {p.name} ({len(p.relators)} relators)"
            )
        if step.conjugator.alphabet != p.alphabet:
            raise AlphabetMismatchError("Conjugator is not over the presentation alphabet")
        relator = p.relators[step.relator_index]
        if step.exponent < 0:
            relator = invert(relator)
        result = result * step.conjugator * relator * invert(step.conjugator)
    return result


def check_certificate(p: Presentation, w: Word, cert: DerivationCertificate) -> bool:
    """True proves that w is the identity in the group presented by p"""
    if w.alphabet != p.alphabet:
        raise AlphabetMismatchError("Word is not over the presentation alphabet")
    return certificate_product(p, cert) == w


@dataclass(frozen=True)
class GeneratorMap:
    """Assignment of target words to source generators"""
    source: Presentation
    target: Presentation
    images: Mapping[str, Word] = field(default_factory=dict)

    def __post_init__(self):
        missing = [g for g in self.source.generators if g not in self.images]
        if missing:
            raise PresentationError(f"No image for generators {', '.join(missing)}")
        for g, image in self.images.items():
            if image.alphabet != self.target.alphabet:
                raise AlphabetMismatchError(f"Image of '{g}' is not over the target alphabet")

    def image(self, w: Word) -> Word:
        return w.substitute(self.images, self.target.alphabet)


def check_hom_certificate(m: GeneratorMap, certs: Mapping[int, DerivationCertificate]) -> bool:
    """True proves that the generator map extends to a homomorphism.

    ``certs`` is keyed by the index of the source relator.
    """
    for i, relator in enumerate(m.source.relators):
        if i not in certs:
            raise CertificateError(f"Missing certificate for source relator {i} ({relator})")
        if not check_certificate(m.target, m.image(relator), certs[i]):
            logger.debug("Certificate for relator %d of %s fails", i, m.source.name)
            return False
    return True


def one_step_certificates(m: GeneratorMap) -> Dict[int, DerivationCertificate]:
    """Certificates for maps sending every relator literally onto a target relator.

    This is an exact lookup; a relator whose image is not a target relator (or
    the inverse of one) gets no certificate.
    """
    lookup: Dict[Tuple[int, ...], Tuple[int, int]] = {}
    for j, relator in enumerate(m.target.relators):
        lookup.setdefault(relator.letters, (j, 1))
        lookup.setdefault(invert(relator).letters, (j, -1))
    certs: Dict[int, DerivationCertificate] = {}
    empty = m.target.alphabet.identity()
    for i, relator in enumerate(m.source.relators):
        image = m.image(relator)
        if image.is_identity():
            certs[i] = DerivationCertificate()
        elif image.letters in lookup:
            j, exponent = lookup[image.letters]
            certs[i] = DerivationCertificate.single(j, exponent, empty)
    return certs
