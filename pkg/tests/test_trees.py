from __future__ import annotations

import random
from fractions import Fraction

import pytest

from hopfcalc.series import SeriesProfile, r_from_d
from hopfcalc.trees import (
    DecorationSet,
    DegreeZeroInput,
    Forest,
    ForestAlgebra,
    GradedVector,
    Tree,
    parse_forest,
    parse_tree,
    product,
)

DOT = parse_forest("a[]")
LADDER2 = parse_forest("a[a[]]")
LADDER3 = parse_forest("a[a[a[]]]")
TWO_DOTS = parse_forest("a[] a[]")
CHERRY = parse_forest("a[a[] a[]]")


def terms_as_strings(terms):
    return {(l.encode(), r.encode()): c for (l, r), c in terms.items()}


# ---------------------------------------------------------------------------
# decorations, parsing, serialization


def test_decoration_set_validation():
    with pytest.raises(ValueError):
        DecorationSet(())
    with pytest.raises(ValueError):
        DecorationSet((("a", 1), ("a", 2)))
    with pytest.raises(ValueError):
        DecorationSet((("a", 0),))
    with pytest.raises(ValueError):
        DecorationSet((("a b", 1),))
    d = DecorationSet((("a", 1), ("b", 3)))
    assert d.degree_of("b") == 3
    assert d.degree_counts(4) == [1, 0, 1, 0]
    with pytest.raises(KeyError):
        d.degree_of("c")


def test_decoration_json_round_trip():
    d = DecorationSet((("a", 1), ("b", 2)))
    assert DecorationSet.from_json(d.to_json()) == d
    with pytest.raises(ValueError):
        DecorationSet.from_json("{}")
    with pytest.raises(ValueError):
        DecorationSet.from_json('[{"label": "a"}]')


def test_encode_parse_round_trip():
    assert DOT.encode() == "a[]"
    assert CHERRY.encode() == "a[a[] a[]]"
    assert Forest().encode() == "1"
    assert parse_forest("1") == Forest()
    assert parse_forest("") == Forest()
    alg = ForestAlgebra()
    for n in range(6):
        for f in alg.basis(n):
            assert parse_forest(f.encode()) == f
    assert parse_tree("a[a[] a[a[]]]").encode() == "a[a[] a[a[]]]"
    for bad in ("a", "a[", "a[] ]", "2[a[]]", "a[]extra"):
        with pytest.raises(ValueError):
            parse_tree(bad)


# ---------------------------------------------------------------------------
# enumeration


def test_enumeration_counts_match_series_oracle():
    cases = [
        (DecorationSet.default(), 7),
        (DecorationSet((("a", 1), ("b", 1))), 5),
        (DecorationSet((("a", 1), ("b", 2))), 5),
    ]
    for decorations, top in cases:
        alg = ForestAlgebra(decorations)
        d = SeriesProfile.make("D", decorations.degree_counts(top))
        want = [int(c) for c in r_from_d(d).coeffs]
        assert [alg.dim(n) for n in range(1, top + 1)] == want
        assert alg.basis(0) == (Forest(),)


def test_enumeration_canonical_order_frozen():
    alg = ForestAlgebra()
    assert [f.encode() for f in alg.basis(2)] == ["a[] a[]", "a[a[]]"]
    assert [f.encode() for f in alg.basis(3)] == [
        "a[] a[] a[]",
        "a[] a[a[]]",
        "a[a[] a[]]",
        "a[a[]] a[]",
        "a[a[a[]]]",
    ]
    for n in range(6):
        basis = alg.basis(n)
        assert len(set(basis)) == len(basis)
        assert [f.encode() for f in basis] == sorted(f.encode() for f in basis)
        for i, f in enumerate(basis):
            assert alg.index(f) == i


def test_index_rejects_foreign_forest():
    alg = ForestAlgebra()
    with pytest.raises(KeyError):
        alg.index(parse_forest("b[]"))  # wrong alphabet entirely
    with pytest.raises(KeyError):
        alg.degree(parse_forest("b[]"))


# ---------------------------------------------------------------------------
# product


def test_product_laws():
    assert product(Forest(), LADDER2) == LADDER2
    assert product(LADDER2, Forest()) == LADDER2
    assert product(DOT, DOT) == TWO_DOTS
    assert product(DOT, DOT) != LADDER2
    a, b, c = DOT, LADDER2, CHERRY
    assert product(product(a, b), c) == product(a, product(b, c))
    assert product(a, b) != product(b, a)
    alg = ForestAlgebra()
    assert alg.degree(product(b, c)) == alg.degree(b) + alg.degree(c)


def test_vector_product_matches_forest_product():
    alg = ForestAlgebra()
    x = alg.vector(LADDER2).scale(2) + alg.vector(TWO_DOTS)
    y = alg.vector(DOT)
    xy = alg.vector_product(x, y)
    want = alg.vector(product(LADDER2, DOT)).scale(2) + alg.vector(product(TWO_DOTS, DOT))
    assert xy == want


# ---------------------------------------------------------------------------
# coproduct


def test_coproduct_hand_examples():
    alg = ForestAlgebra()
    assert terms_as_strings(alg.coproduct_terms(DOT)) == {("a[]", "1"): 1, ("1", "a[]"): 1}
    assert terms_as_strings(alg.coproduct_terms(LADDER2)) == {
        ("a[a[]]", "1"): 1,
        ("1", "a[a[]]"): 1,
        ("a[]", "a[]"): 1,
    }
    assert terms_as_strings(alg.coproduct_terms(TWO_DOTS)) == {
        ("a[] a[]", "1"): 1,
        ("1", "a[] a[]"): 1,
        ("a[]", "a[]"): 2,
    }
    # cherry: cutting either edge prunes a dot; cutting both prunes a 2-dot forest
    assert terms_as_strings(alg.coproduct_terms(CHERRY)) == {
        ("a[a[] a[]]", "1"): 1,
        ("1", "a[a[] a[]]"): 1,
        ("a[]", "a[a[]]"): 2,
        ("a[] a[]", "a[]"): 1,
    }
    assert alg.coproduct_terms(Forest()) == {(Forest(), Forest()): 1}


def test_cut_branch_order_is_depth_first():
    # root with two children, left child has its own child: pruning the deep
    # leaf and the right child must list the deep leaf first
    f = parse_forest("a[a[a[]] a[]]")
    alg = ForestAlgebra()
    terms = terms_as_strings(alg.coproduct_terms(f))
    assert terms[("a[] a[]", "a[a[]]")] == 1  # deep leaf then right child
    assert ("a[] a[]", "a[a[]]") in terms


def test_coproduct_tensor_family_shape():
    alg = ForestAlgebra()
    family = alg.coproduct(CHERRY)
    assert set(family) == {(0, 3), (1, 2), (2, 1), (3, 0)}
    block = family[(1, 2)]
    assert block.bidegree == (1, 2)
    assert len(block.coords) == alg.dim(1) * alg.dim(2)
    # coefficient of dot (x) ladder
    assert block.coords[alg.index(DOT) * alg.dim(2) + alg.index(LADDER2)] == 2


def test_grading_structural_assert():
    alg = ForestAlgebra()
    for n in range(5):
        for f in alg.basis(n):
            for (i, j), block in alg.coproduct(f).items():
                assert i + j == n
                assert len(block.coords) == alg.dim(i) * alg.dim(j)


def test_counit_law():
    # (eps x id) Delta = id = (id x eps) Delta; eps kills positive degrees
    alg = ForestAlgebra()
    for n in range(5):
        for f in alg.basis(n):
            terms = alg.coproduct_terms(f)
            left_unit = {r: c for (l, r), c in terms.items() if l.is_unit}
            right_unit = {l: c for (l, r), c in terms.items() if r.is_unit}
            assert left_unit == {f: 1}
            assert right_unit == {f: 1}


def coassociativity_holds(alg: ForestAlgebra, f: Forest) -> bool:
    left = {}
    for (x, y), c in alg.coproduct_terms(f).items():
        for (a, b), d in alg.coproduct_terms(x).items():
            key = (a, b, y)
            left[key] = left.get(key, 0) + c * d
    right = {}
    for (x, y), c in alg.coproduct_terms(f).items():
        for (a, b), d in alg.coproduct_terms(y).items():
            key = (x, a, b)
            right[key] = right.get(key, 0) + c * d
    left = {k: v for k, v in left.items() if v}
    right = {k: v for k, v in right.items() if v}
    return left == right


def test_coassociativity_exhaustive_low_degree():
    alg = ForestAlgebra()
    for n in range(5):
        for f in alg.basis(n):
            assert coassociativity_holds(alg, f)


def test_bialgebra_compatibility_low_degree():
    alg = ForestAlgebra()
    for i in range(1, 4):
        for j in range(1, 5 - i):
            for f in alg.basis(i):
                for g in alg.basis(j):
                    fg = product(f, g)
                    direct = alg.coproduct_terms(fg)
                    composed: dict = {}
                    for (a, b), c in alg.coproduct_terms(f).items():
                        for (x, y), d in alg.coproduct_terms(g).items():
                            key = (a * x, b * y)
                            composed[key] = composed.get(key, Fraction(0)) + c * d
                    assert direct == {k: v for k, v in composed.items() if v}


# ---------------------------------------------------------------------------
# reduced and iterated forms


def test_reduced_coproduct_examples():
    alg = ForestAlgebra()
    assert alg.reduced_coproduct_terms(DOT) == {}
    assert terms_as_strings(alg.reduced_coproduct_terms(LADDER2)) == {("a[]", "a[]"): 1}
    assert terms_as_strings(alg.reduced_coproduct_terms(LADDER3)) == {
        ("a[]", "a[a[]]"): 1,
        ("a[a[]]", "a[]"): 1,
    }
    with pytest.raises(DegreeZeroInput):
        alg.reduced_coproduct_terms(Forest())
    with pytest.raises(DegreeZeroInput):
        alg.reduced_coproduct(Forest())


def test_iterated_reduced_examples():
    alg = ForestAlgebra()
    got = alg.iterated_reduced(2, LADDER3)
    assert got == {(DOT, DOT, DOT): 1}
    assert alg.iterated_reduced(0, LADDER2) == {(LADDER2,): 1}
    assert alg.iterated_reduced(1, alg.vector(LADDER2)) == {(DOT, DOT): 1}
    assert alg.iterated_reduced(3, LADDER3) == {}
    with pytest.raises(DegreeZeroInput):
        alg.iterated_reduced(1, Forest())
    with pytest.raises(ValueError):
        alg.iterated_reduced(-1, LADDER2)


def test_iterated_reduced_association_independence():
    alg = ForestAlgebra()
    rng = random.Random(61)
    for n in (3, 4, 5):
        basis = alg.basis(n)
        for f in rng.sample(basis, min(6, len(basis))):
            results = [alg.iterated_reduced(2, f, position=p) for p in (0, 1, 99)]
            assert results[0] == results[1] == results[2]


def test_reduced_terms_of_vector_is_linear():
    alg = ForestAlgebra()
    x = alg.vector(LADDER2).scale(3) - alg.vector(TWO_DOTS)
    got = alg.reduced_terms_of_vector(x)
    assert got == {(DOT, DOT): Fraction(1)}  # 3*1 - 2
    zero = GradedVector(2, (0, 0))
    assert alg.reduced_terms_of_vector(zero) == {}


# ---------------------------------------------------------------------------
# randomized degree 5-6 checks


def test_coassociativity_and_compatibility_random_degree_5_6():
    alg = ForestAlgebra()
    rng = random.Random(67)
    for _ in range(10):
        n = rng.choice((5, 6))
        f = rng.choice(alg.basis(n))
        assert coassociativity_holds(alg, f)
    for _ in range(10):
        i = rng.randint(1, 3)
        j = rng.randint(max(1, 5 - i), 6 - i)
        f = rng.choice(alg.basis(i))
        g = rng.choice(alg.basis(j))
        direct = alg.coproduct_terms(product(f, g))
        composed: dict = {}
        for (a, b), c in alg.coproduct_terms(f).items():
            for (x, y), d in alg.coproduct_terms(g).items():
                key = (a * x, b * y)
                composed[key] = composed.get(key, Fraction(0)) + c * d
        assert direct == {k: v for k, v in composed.items() if v}
