import itertools
import random
from fractions import Fraction

import pytest

from siegel2.errors import NotPIntegral, PrecisionError
from siegel2.expansion import (
    BeyondPrecision,
    SiegelExpansion,
    _det4,
    symmetry_check,
    wronskian35,
)
from siegel2.generators import MonomialSpec
from siegel2.qexp1 import diag_builder

GEN_NAMES = ("X4", "X6", "X10", "X12", "Y12", "X16", "X35")


def permutation_det(matrix):
    total = 0
    for perm in itertools.permutations(range(4)):
        sign = 1
        for i in range(4):
            for j in range(i + 1, 4):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i in range(4):
            term *= matrix[i][perm[i]]
        total += term
    return total


def test_det4_against_permutation_oracle():
    rng = random.Random(3)
    for _ in range(60):
        matrix = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
        assert _det4(matrix) == permutation_det(matrix)


def test_ring_examples(registry, gens6):
    x4, x10, x12 = gens6["X4"], gens6["X10"], gens6["X12"]
    assert (x4 * x12).coeff(1, 0, 1) == 10
    lt = (x10 * x12).leading_term()
    assert lt.index == (2, -2, 2) and lt.coefficient == 1
    assert (x4 * 0).is_zero()
    assert (x4 * x12).weight == 16
    assert (x4 + x4).coeff(0, 0, 1) == 480


def test_add_respects_weight_tags(gens6):
    assert (gens6["X4"] + gens6["X4"]).weight == 4
    assert (gens6["X4"] + gens6["X6"]).weight is None


def test_precision_and_scale_rules(gens6):
    x4 = gens6["X4"]
    assert (x4.truncate(3) * x4).precision == 3
    with pytest.raises(PrecisionError):
        x4.truncate(9)
    other = SiegelExpansion(4, 6, {(0, 0, 0): 1}, scale=2)
    with pytest.raises(ValueError):
        _ = x4 * other
    with pytest.raises(ValueError):
        _ = x4 + other


def test_constructor_validation():
    with pytest.raises(ValueError):
        SiegelExpansion(4, 2, {(1, 3, 1): 1})
    with pytest.raises(ValueError):
        SiegelExpansion(4, 2, {(3, 0, 1): 1})
    exp = SiegelExpansion(4, 2, {(1, 0, 1): Fraction(4, 2), (1, 1, 1): 0})
    assert exp.coeffs == {(1, 0, 1): 2}


def test_reduce_mod_examples(gens6):
    x4red = gens6["X4"].reduce_mod(2)
    assert x4red.coeffs == {(0, 0, 0): 1}
    x10red = gens6["X10"].reduce_mod(2)
    x12red = gens6["X12"].reduce_mod(2)
    assert x10red == x12red
    third = gens6["X4"] * Fraction(1, 3)
    with pytest.raises(NotPIntegral) as info:
        third.reduce_mod(3)
    assert "(0, 0, 0)" in str(info.value)


def test_symmetry_check(gens6):
    assert symmetry_check(gens6["X4"]) == []
    x35 = gens6["X35"]
    assert symmetry_check(x35) == []
    assert all(key[1] != 0 for key in x35.coeffs)
    lopsided = SiegelExpansion(4, 2, {(1, 1, 1): 1, (1, -1, 1): 2})
    bad = symmetry_check(lopsided)
    assert bad and bad[0] == (1, -1, 1)


def test_theta_derivatives(gens6):
    x10 = gens6["X10"]
    t1 = x10.theta(1)
    assert t1.coeff(1, 1, 1) == 1
    assert t1.coeff(2, 1, 1) == 2 * x10.coeff(2, 1, 1)
    assert t1.weight == 12
    t12 = gens6["X4"].theta(12)
    assert all(
        t12.coeff(m, -r, n) == -t12.coeff(m, r, n)
        for (m, r, n) in t12.coeffs
    )
    t2 = gens6["X4"].theta(2)
    assert all(key[2] != 0 for key in t2.coeffs)
    with pytest.raises(ValueError):
        x10.theta(3)


def test_witt_examples(gens6):
    assert gens6["X10"].witt(0).coeffs == {}
    assert gens6["X12"].witt(0) == diag_builder("x12", 6) * 12
    assert gens6["X10"].witt(2).coeff(1, 1) == 1
    assert gens6["X10"].witt(2) == diag_builder("x12", 6)
    # parity: odd order kills even weights, even orders kill odd weights
    for name in ("X4", "X6", "X10", "X12", "Y12", "X16"):
        assert gens6[name].witt(1).coeffs == {}
    assert gens6["X35"].witt(0).coeffs == {}
    assert gens6["X35"].witt(2).coeffs == {}


def test_witt_product_rules(gens6):
    """Restriction is a ring map; the Taylor layers obey the product rule."""
    pairs = list(itertools.combinations_with_replacement(GEN_NAMES, 2))
    for a, b in pairs:
        f, g = gens6[a], gens6[b]
        fg = f * g
        assert fg.witt(0) == f.witt(0) * g.witt(0), (a, b)
        assert fg.witt(1) == f.witt(1) * g.witt(0) + f.witt(0) * g.witt(1), (a, b)
        if f.weight % 2 == 0 and g.weight % 2 == 0:
            assert fg.witt(2) == f.witt(2) * g.witt(0) + f.witt(0) * g.witt(2), (a, b)


def test_leading_term_examples(gens6):
    assert gens6["X35"].leading_term().index == (2, -1, 3)
    f47 = gens6["X12"] * gens6["X35"]
    assert f47.leading_term().index == (3, -2, 4)
    assert gens6["Y12"].leading_term() .index == (0, 0, 1)
    with pytest.raises(ValueError):
        (gens6["X4"] * 0).leading_term()


def test_leading_term_multiplicative(gens6):
    for a, b in itertools.combinations_with_replacement(GEN_NAMES, 2):
        la, lb = gens6[a].leading_term(), gens6[b].leading_term()
        lab = (gens6[a] * gens6[b]).leading_term()
        assert lab.m == la.m + lb.m
        assert lab.r == la.r + lb.r
        assert lab.n == la.n + lb.n
        assert lab.coefficient == la.coefficient * lb.coefficient


def test_vanishing_order_examples(gens6):
    for p in (2, 3, 5):
        assert gens6["X10"].diagonal_vanishing_order(p) == 1
        assert gens6["X35"].diagonal_vanishing_order(p) == 3
    zero = gens6["X4"] * 0
    sentinel = zero.diagonal_vanishing_order(5)
    assert isinstance(sentinel, BeyondPrecision)
    assert sentinel > 6
    assert sentinel >= 2
    with pytest.raises(PrecisionError):
        sentinel < 100


def test_vanishing_order_product_properties(gens6):
    for p in (2, 3, 5):
        reduced = {n: gens6[n].reduce_mod(p) for n in GEN_NAMES}
        x10 = reduced["X10"]
        for a, b in itertools.combinations_with_replacement(GEN_NAMES, 2):
            v = (reduced[a] * reduced[b]).diagonal_vanishing_order()
            va = reduced[a].diagonal_vanishing_order()
            vb = reduced[b].diagonal_vanishing_order()
            assert v >= max(va, vb), (a, b, p)
        for name in GEN_NAMES:
            stepped = (x10 * reduced[name]).diagonal_vanishing_order()
            assert stepped == reduced[name].diagonal_vanishing_order() + 1


def test_leading_terms_of_reduced_monomials(registry):
    """Products of the three mod-p diagonal generators keep unit leading
    terms at the predicted indices, for every combination of weight <= 48."""
    for p in (2, 3):
        for a in range(5):
            for b in range(5):
                for c in range(4):
                    if 10 * a + 12 * b + 16 * c > 48:
                        continue
                    spec = MonomialSpec.from_dict({"X10": a, "Y12": b, "X16": c})
                    exp = registry.monomial(spec, 5).reduce_mod(p)
                    lt = exp.leading_term()
                    assert lt.index == (a + c, -a, a + b + c), (p, a, b, c)
                    assert lt.coefficient % p != 0


def test_wronskian_validation(gens6):
    with pytest.raises(ValueError):
        wronskian35(gens6["X4"], gens6["X6"], gens6["X10"], gens6["X16"])
    with pytest.raises(PrecisionError):
        wronskian35(
            *(gens6[n].truncate(2) for n in ("X4", "X6", "X10", "X12"))
        )


def test_wronskian_matches_registry(registry, gens6):
    built = wronskian35(
        gens6["X4"], gens6["X6"], gens6["X10"], gens6["X12"]
    )
    assert built == registry.generator("X35", 6)
    assert built.weight == 35
    assert all(built.coeff(1, r, n) == 0 for n in range(7) for r in range(-5, 6) if 4 * n >= r * r)
    assert all(built.coeff(m, r, m) == 0 for (m, r, n) in built.coeffs if m == n)


def test_beyond_precision_semantics():
    sentinel = BeyondPrecision(4)
    assert sentinel > 4
    assert sentinel >= 4
    assert not sentinel < 3
    assert sentinel != 17
    assert sentinel == BeyondPrecision(4)
    with pytest.raises(PrecisionError):
        sentinel > 5
