"""
Tests for presentation files, certificate files and GAP emission
"""

import pytest

from src.core.constructions import higman, l_presentation
from src.core.formats import (
    format_certificate,
    format_gap,
    format_presentation,
    parse_certificate,
    parse_presentation,
)
from src.core.presentation import (
    CertificateError,
    DerivationCertificate,
    Presentation,
    PresentationError,
    check_certificate,
)
from src.core.word import Alphabet
from src.core.word_parser import WordSyntaxError, parse_word

S3_TEXT = """\
# the symmetric group on three points
group S3
gens a b
rel a^2
rel b^3
rel (a b)^2   # trailing comment
"""


class TestPresentationFormat:
    """Test parse_presentation and format_presentation"""

    def test_parse(self):
        """Test a commented file"""
        p = parse_presentation(S3_TEXT)
        assert p.name == "S3"
        assert p.generators == ("a", "b")
        assert [str(r) for r in p.relators] == ["a^2", "b^3", "a b a b"]

    def test_relation_with_equals(self):
        """Test 'rel u = v' becomes u v^-1"""
        p = parse_presentation("group BS\ngens x h\nrel h x h^-1 = x^2\n")
        assert str(p.relators[0]) == "h x h^-1 x^-2"

    def test_identity_relator_dropped(self):
        """Test 'rel 1' adds nothing"""
        p = parse_presentation("group Z\ngens a\nrel 1\nrel a a^-1\n")
        assert len(p) == 0

    @pytest.mark.parametrize("build", [lambda: higman(5), l_presentation])
    def test_format_then_parse(self, build):
        """Test printed presentations read back to the same relators"""
        p = build()
        q = parse_presentation(format_presentation(p))
        assert q.name == p.name
        assert q.generators == p.generators
        assert q.relators == p.relators

    @pytest.mark.parametrize("text", [
        "gens a b\n",
        "group G\nrel a\n",
        "group G\ngens a\nrelator a\n",
        "group G\ngens a\nrel a = a = a\n",
    ])
    def test_malformed(self, text):
        """Test structural errors"""
        with pytest.raises(PresentationError):
            parse_presentation(text)

    def test_syntax_error_has_line_number(self):
        """Test word errors report the file line"""
        with pytest.raises(WordSyntaxError, match="Line 4"):
            parse_presentation("group G\n\ngens a b\nrel (a b\n")


class TestCertificateFormat:
    """Test parse_certificate and format_certificate"""

    @pytest.fixture
    def p(self):
        """Create < a, b | a^2 >"""
        alphabet = Alphabet.of(("a", "b"))
        return Presentation("P", alphabet, (parse_word("a^2", alphabet),))

    def test_parse_and_check(self, p):
        """Test a conjugated relator certificate"""
        w, cert = parse_certificate("word b a^2 b^-1\nstep 0 +1 b\n", p.alphabet)
        assert len(cert.steps) == 1
        assert check_certificate(p, w, cert)

    def test_missing_conjugator(self, p):
        """Test a step without a conjugator uses the identity"""
        w, cert = parse_certificate("word a^-2\nstep 0 -1\n", p.alphabet)
        assert cert.steps[0].conjugator.is_identity()
        assert check_certificate(p, w, cert)

    def test_format_then_parse(self, p):
        """Test printed certificates read back"""
        w = parse_word("b a^2 b^-1 a^2", p.alphabet)
        cert = DerivationCertificate.single(0, 1, p.gen("b"))
        text = format_certificate(w, cert)
        assert text.splitlines() == ["word b a^2 b^-1 a^2", "step 0 +1 b"]
        assert parse_certificate(text, p.alphabet) == (w, cert)

    @pytest.mark.parametrize("text", [
        "step 0 +1 b\n",
        "word a\nword a\n",
        "word a\nstep x +1 b\n",
        "word a\nstep 0\n",
        "word a\nproof 0 +1 b\n",
        "word a\nstep 0 +2 b\n",
    ])
    def test_malformed(self, p, text):
        """Test structural errors"""
        with pytest.raises(CertificateError):
            parse_certificate(text, p.alphabet)


class TestGap:
    """Test format_gap"""

    def test_higman_2(self):
        """Test names, generator bindings and relator list"""
        lines = format_gap(higman(2)).splitlines()
        assert lines[0] == 'F := FreeGroup("a_0", "a_1");;'
        assert lines[1] == "a_0 := F.1;; a_1 := F.2;;"
        assert lines[2].startswith("rels := [") and lines[2].endswith("];;")
        assert "@" not in lines[2]
        assert lines[2].count("a_0*a_1*a_0^-1*a_1^-1*a_1^-1") + lines[2].count("a_1*a_0*a_1^-1*a_0^-1*a_0^-1") == 2
        assert lines[3] == "G := F / rels;;"

    def test_name_collision(self):
        """Test that a@1 and a_1 cannot both be emitted"""
        p = Presentation("P", Alphabet.of(("a@1", "a_1", "b")), ())
        with pytest.raises(PresentationError) as info:
            format_gap(p)
        assert "a@1, a_1" in str(info.value)
        assert format_gap(Presentation("Q", Alphabet.of(("a@1", "a_2")), ())).startswith(
            'F := FreeGroup("a_1", "a_2");;')
