"""
Tests for amalgam normal forms, Britton reduction and the freeness checks
"""

import pytest

from src.core.amalgam import (
    AmalgamInstance,
    BrittonForm,
    HNNInstance,
    INSTANCES,
    Side,
    amalgam_eval,
    blocking_element,
    check_free,
    check_hnn_against_model,
    check_qt_iso,
    freeness_report,
    heis_over_alpha,
    hnn_eval,
    instance_Hhalf,
    instance_J,
    instance_Q,
    instance_T,
    is_normal_form,
    l_over_hv,
    multiply,
    qt_map,
    run_property_suite,
    syllable_length,
)
from src.core.exact_models import HeisModel
from src.core.word import Alphabet, UnknownGeneratorError
from src.core.word_parser import parse_word


class TestNormalForms:
    """Test amalgam_eval on the named instances"""

    @pytest.fixture
    def j(self):
        """Create J = L *_{<h,v>} Heis(h, z, v)"""
        return instance_J()

    def test_instance_relations(self, j):
        """Test relations of each instance evaluate to the identity"""
        assert amalgam_eval(j, j.word("z v z^-1 v^-1")).is_identity()
        assert amalgam_eval(j, j.word("h z h^-1 z^-1 v^-1")).is_identity()
        q = instance_Q()
        assert amalgam_eval(q, q.word("[v, x] y^-1")).is_identity()
        t = instance_T()
        assert amalgam_eval(t, t.word("[h, u]")).is_identity()

    def test_subgroup_elements_go_to_the_head(self, j):
        """Test h and v are absorbed into the head"""
        nf = amalgam_eval(j, j.word("h v^2"))
        assert nf.syllables == ()
        assert nf.head == (1, 2)

    def test_alternating_syllables(self, j):
        """Test x z x has three alternating syllables"""
        nf = amalgam_eval(j, j.word("x z x"))
        assert syllable_length(nf) == 3
        assert [side for side, _ in nf.syllables] == [Side.A, Side.B, Side.A]
        assert is_normal_form(j, nf)
        assert not nf.is_identity()

    def test_multiply_matches_eval(self, j):
        """Test multiplying normal forms against evaluating the concatenation"""
        w1, w2 = j.word("x z u^-1 h"), j.word("h^-1 u z^-1 y")
        assert multiply(j, amalgam_eval(j, w1), amalgam_eval(j, w2)) == amalgam_eval(j, w1 * w2)
        assert multiply(j, amalgam_eval(j, w1), amalgam_eval(j, w2)) == amalgam_eval(j, j.word("x y"))

    def test_unknown_generator(self, j):
        """Test words over a foreign alphabet"""
        other = Alphabet.of(("q",))
        with pytest.raises(UnknownGeneratorError):
            amalgam_eval(j, other.gen("q"))

    def test_rank_mismatch(self):
        """Test factors whose amalgamated subgroups differ in rank"""
        alphabet = Alphabet.of(("x", "a"))
        with pytest.raises(ValueError):
            AmalgamInstance("bad", l_over_hv(), heis_over_alpha(HeisModel()), alphabet,
                            {"x": (Side.A, "x"), "a": (Side.B, "a")})

    def test_unassigned_generator(self):
        """Test alphabets with letters outside both factors"""
        hhalf = instance_Hhalf()
        with pytest.raises(ValueError):
            AmalgamInstance("bad", hhalf.factor_a, hhalf.factor_b, Alphabet.of(("x@0", "w")),
                            {"x@0": (Side.A, "x")})


class TestPropertySuite:
    """Test run_property_suite on small samples"""

    @pytest.mark.parametrize("name", sorted(INSTANCES))
    def test_small_suite(self, name):
        """Test homomorphism, inverse, embedding and alternation"""
        report = run_property_suite(INSTANCES[name](), 200, 16, 11)
        assert report.passed, report.failures

    @pytest.mark.slow
    @pytest.mark.parametrize("name", sorted(INSTANCES))
    def test_full_suite(self, name):
        """Test 10^4 words of length up to 40 per instance"""
        report = run_property_suite(INSTANCES[name](), 10000, 40, 20160401)
        assert report.passed, report.failures


class TestFreeness:
    """Test check_free and the blocking element"""

    @pytest.fixture
    def hhalf(self):
        """Create H = < L_0, L_1 : x_0 = h_1 >"""
        return instance_Hhalf()

    def test_free_pair_short(self, hhalf):
        """Test h_0 and x_1 generate no relation up to length 4"""
        report = freeness_report(hhalf, [hhalf.word("h@0"), hhalf.word("x@1")], 4)
        assert report.free
        # 4 * (1 + 3 + 9 + 27) reduced words
        assert report.words_checked == 160

    @pytest.mark.slow
    def test_free_pair_length_8(self, hhalf):
        """Test h_0 and x_1 exhaustively to length 8"""
        report = freeness_report(hhalf, [hhalf.word("h@0"), hhalf.word("x@1")], 8)
        assert report.free
        assert report.words_checked == 13120

    def test_identified_generators(self, hhalf):
        """Test x_0 and h_1 are the same element"""
        report = freeness_report(hhalf, [hhalf.word("x@0"), hhalf.word("h@1")], 2)
        assert not report.free
        assert report.counterexample is not None

    def test_commuting_pair_in_j(self):
        """Test h and v commute in J"""
        j = instance_J()
        assert not check_free(j, [j.word("h"), j.word("v")], 4)

    def test_blocking_element_short(self, hhalf):
        """Test t, h_0, x_1 generate no relation up to length 4"""
        t = blocking_element(hhalf)
        assert str(t) == "x@0^-1 x@1 h@0 x@1^-1 x@0"
        assert check_free(hhalf, [t, hhalf.word("h@0"), hhalf.word("x@1")], 4)

    @pytest.mark.slow
    def test_blocking_element(self, hhalf):
        """Test t, h_0, x_1 exhaustively to length 6"""
        assert check_free(hhalf, [blocking_element(hhalf), hhalf.word("h@0"), hhalf.word("x@1")], 6)

    def test_infinite_order_in_j(self):
        """Test powers of u x stay nontrivial"""
        j = instance_J()
        assert check_free(j, [j.word("u x")], 16)

    def test_empty_letters(self, hhalf):
        """Test that at least one letter is required"""
        with pytest.raises(ValueError):
            check_free(hhalf, [], 3)


class TestQT:
    """Test the letterwise map Q -> T"""

    def test_map_examples(self):
        """Test relations of Q map to relations of T"""
        q, t = instance_Q(), instance_T()
        for text in ("[v, x] y^-1", "z v z^-1 v^-1"):
            w = q.word(text)
            assert amalgam_eval(q, w).is_identity()
            assert amalgam_eval(t, qt_map(w, t)).is_identity()
        x = q.word("x")
        assert str(qt_map(x, t)) == "z"
        assert not amalgam_eval(t, qt_map(x, t)).is_identity()

    def test_small_sample(self):
        """Test random and relator-laden words agree"""
        report = check_qt_iso(200, 12, 5)
        assert report.passed, report.violations[:3]
        assert report.identity_samples >= 100

    @pytest.mark.slow
    def test_full_sample(self):
        """Test 10^4 words of length up to 30"""
        assert check_qt_iso(10000, 30, 20160401).passed


class TestBritton:
    """Test hnn_eval on BS(1,2)"""

    @pytest.fixture
    def bs(self):
        """Create BS(1,2) with stable letter h"""
        return HNNInstance()

    def test_pinch(self, bs):
        """Test h x h^-1 = x^2"""
        assert hnn_eval(bs, parse_word("h x h^-1", bs.alphabet)) == BrittonForm((("x", 2),))

    def test_inverse_pinch(self, bs):
        """Test h^-1 x^2 h = x"""
        assert hnn_eval(bs, parse_word("h^-1 x^2 h", bs.alphabet)) == BrittonForm((("x", 1),))

    def test_pinch_free(self, bs):
        """Test h^-1 x h does not reduce"""
        form = hnn_eval(bs, parse_word("h^-1 x h", bs.alphabet))
        assert len(form) == 3
        assert not form.is_identity()

    def test_relator_is_trivial(self, bs):
        """Test [h, x] x^-1 reduces to nothing"""
        assert hnn_eval(bs, parse_word("[h, x] x^-1", bs.alphabet)).is_identity()

    def test_other_parameters(self):
        """Test BS(1,3) and parameter validation"""
        bs13 = HNNInstance(q=3)
        assert hnn_eval(bs13, parse_word("h x h^-1", bs13.alphabet)) == BrittonForm((("x", 3),))
        with pytest.raises(ValueError):
            HNNInstance(p=0)

    def test_unknown_generator(self, bs):
        """Test letters outside {x, h}"""
        other = Alphabet.of(("x", "h", "q"))
        with pytest.raises(UnknownGeneratorError):
            hnn_eval(bs, other.gen("q"))

    def test_against_affine_model(self):
        """Test Britton emptiness against the dyadic affine model"""
        report = check_hnn_against_model(300, 14, 3)
        assert report.passed, report.mismatches[:3]
        assert report.trivial_samples >= 150
