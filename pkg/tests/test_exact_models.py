"""
Tests for exact group models
"""

import pytest
from sympy import Matrix, Rational, eye

from src.core.constructions import bs12_presentation, heisenberg_relators, l_presentation
from src.core.exact_models import (
    BS12Model,
    Dyadic,
    HeisModel,
    LModel,
    MODELS,
    ModelError,
    ONE,
    Z2Model,
    ZxF2Model,
    affine_matrix_model,
    autothysis_conjugation_check,
    check_relators,
    eval_word,
)
from src.core.presentation import Presentation
from src.core.sampler import WordSampler
from src.core.word import UnknownGeneratorError, invert
from src.core.word_parser import parse_word


def heis_matrix(element):
    """alpha^p beta^q zeta^r as an upper unitriangular matrix"""
    p, q, r = element.p, element.q, element.r
    return Matrix([[1, p, r + p * q], [0, 1, q], [0, 0, 1]])


def bs_matrix(element):
    """t -> 2^a t + b as a 2x2 affine matrix"""
    b = Rational(element.b.numerator) * Rational(2) ** -element.b.exponent
    return Matrix([[Rational(2) ** element.a, b], [0, 1]])


class TestDyadic:
    """Test Dyadic rationals"""

    def test_canonical_form(self):
        """Test that equal values compare equal"""
        assert Dyadic(4, 3) == Dyadic(1, 1)
        assert Dyadic(0, 7) == Dyadic(0)
        assert Dyadic(6, 0) == Dyadic(3, -1)

    def test_arithmetic(self):
        """Test sums, differences, products and scaling"""
        half = Dyadic(1, 1)
        assert half + half == ONE
        assert ONE - half == half
        assert half * half == Dyadic(1, 2)
        assert half.scale2(3) == Dyadic(4)
        assert 1 + half == Dyadic(3, 1)

    def test_floor_and_order(self):
        """Test floor for negative values and comparisons"""
        assert Dyadic(-3, 1).floor() == -2
        assert Dyadic(3, 1).floor() == 1
        assert Dyadic(5).floor() == 5
        assert Dyadic(1, 1) < ONE
        assert not ONE < Dyadic(1, 1)

    def test_str(self):
        """Test rendering"""
        assert str(Dyadic(3, 2)) == "3/4"
        assert str(Dyadic(3, -2)) == "12"
        assert not Dyadic(0)


class TestModels:
    """Test the group models against matrix oracles"""

    @pytest.fixture
    def sampler(self):
        """Create a seeded word sampler"""
        return WordSampler(7)

    def test_heisenberg_against_matrices(self, sampler):
        """Test the Heisenberg law against unitriangular matrices"""
        model = HeisModel("a", "b", "c")
        matrices = {"a": heis_matrix(model.generator("a")), "b": heis_matrix(model.generator("b")),
                    "c": heis_matrix(model.generator("c"))}
        for _ in range(50):
            w = sampler.word(model.alphabet, 12)
            expected = eye(3)
            for gen, sign in w:
                expected = expected * (matrices[gen.name] if sign > 0 else matrices[gen.name].inv())
            assert heis_matrix(model.eval(w)) == expected

    def test_bs12_against_matrices(self, sampler):
        """Test the dyadic affine law against 2x2 rational matrices"""
        model = BS12Model()
        for _ in range(50):
            w = sampler.word(model.alphabet, 12)
            expected = eye(2)
            for gen, sign in w:
                m = bs_matrix(model.generator(gen.name))
                expected = expected * (m if sign > 0 else m.inv())
            assert bs_matrix(model.eval(w)) == expected

    @pytest.mark.parametrize("name", sorted(MODELS))
    def test_homomorphism_and_inverse(self, name, sampler):
        """Test eval is multiplicative and respects inverses"""
        model = MODELS[name]()
        for _ in range(30):
            w1 = sampler.word(model.alphabet, 10)
            w2 = sampler.word(model.alphabet, 10)
            assert model.equal(model.eval(w1 * w2), model.multiply(model.eval(w1), model.eval(w2)))
            assert model.equal(model.eval(invert(w1)), model.inverse(model.eval(w1)))
            assert model.is_identity(model.multiply(model.eval(w1), model.inverse(model.eval(w1))))

    def test_power(self):
        """Test powers including negative exponents"""
        model = Z2Model()
        g = model.generator("a")
        assert model.power(g, -3) == model.eval(parse_word("a^-3", model.alphabet))

    def test_unknown_generator(self):
        """Test evaluation of names outside the model"""
        with pytest.raises(UnknownGeneratorError):
            BS12Model().generator("q")


class TestRelatorChecks:
    """Test check_relators and the model witnesses"""

    def test_l_relators(self):
        """Test L satisfies its nine relators"""
        assert check_relators(LModel(), l_presentation())

    def test_heisenberg_relators(self):
        """Test Heis models satisfy the Heisenberg relators under any naming"""
        for names in (("a", "b", "c"), ("h", "z", "v"), ("v", "x", "y")):
            model = HeisModel(*names)
            gens = [model.alphabet.gen(g) for g in names]
            p = Presentation(model.name, model.alphabet, tuple(heisenberg_relators(*gens)))
            assert check_relators(model, p)

    def test_bs12_relator(self):
        """Test BS(1,2) satisfies [h, x] x^-1"""
        assert check_relators(BS12Model(), bs12_presentation())

    def test_relator_failure(self):
        """Test that a false relator is detected"""
        model = Z2Model("x", "h")
        assert not check_relators(model, bs12_presentation())

    def test_assignment(self):
        """Test relators checked through an explicit assignment"""
        alphabet = LModel().alphabet
        assignment = {"x": alphabet.gen("x"), "h": alphabet.gen("h")}
        assert check_relators(LModel(), bs12_presentation(), assignment)
        swapped = {"x": alphabet.gen("y"), "h": alphabet.gen("u")}
        assert not check_relators(LModel(), bs12_presentation(), swapped)
        with pytest.raises(ModelError):
            check_relators(LModel(), bs12_presentation(), {"x": alphabet.gen("x")})

    def test_zxf2_is_not_abelian(self):
        """Test u and v do not commute in Z x F2"""
        model = ZxF2Model()
        w = parse_word("[u, v]", model.alphabet)
        assert not model.is_identity(eval_word(model, w))
        assert model.is_identity(eval_word(model, parse_word("[h, u]", model.alphabet)))

    def test_affine_model_not_faithful(self):
        """Test (u v^-1 u)^4 dies in the affine model but not in L"""
        model = LModel()
        w = parse_word("(u v^-1 u)^4", model.alphabet)
        assert affine_matrix_model(w) == eye(3)
        assert not model.is_identity(model.eval(w))

    def test_affine_model_translations(self):
        """Test x acts as a translation in the affine model"""
        w = parse_word("h x h^-1", LModel().alphabet)
        assert affine_matrix_model(w) == affine_matrix_model(parse_word("x^2", LModel().alphabet))

    def test_conjugation_identity(self):
        """Test (u v^-1 u) x (u v^-1 u)^-1 = y^-1 in L"""
        assert autothysis_conjugation_check()
