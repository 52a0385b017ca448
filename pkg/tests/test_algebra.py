import itertools

import pytest

from acyclic.algebra import (
    FiniteField,
    field_arith,
    format_poly,
    gaussian_binomial,
    is_irreducible,
    quadratic_residues,
    rank,
    smallest_irreducible,
    subspace_meet_trivial,
    subspaces,
)

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3), (5, 2), (7, 2)]


@pytest.mark.parametrize("p,d", SMALL_FIELDS)
def test_field_axioms(p, d):
    F = FiniteField(p, d)
    els = range(F.q)
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
    for a in range(1, F.q):
        assert F.mul(a, F.inv(a)) == 1
    assert F.pow(F.generator, F.q - 1) == 1
    # generator really generates
    assert len({F.pow(F.generator, e) for e in range(F.q - 1)}) == F.q - 1


def test_distributivity_gf9():
    F = FiniteField(3, 2, [1, 0, 1])
    for a, b, c in itertools.product(range(9), repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_prime_subfield_is_first_codes():
    F = FiniteField(5, 2, [1, 1, 1])
    assert F.labels[:5] == ["0", "1", "2", "3", "4"]
    assert F.frobenius_fixed(5) == [0, 1, 2, 3, 4]


def test_element_labels_and_encoding():
    F = FiniteField(3, 2, [1, 0, 1])
    x = F.encode([0, 1])
    assert F.label(x) == "x"
    assert F.mul(x, x) == F.encode([2])  # x^2 = -1
    assert F.label(F.encode([2, 1])) == "x+2"
    assert format_poly([1, 1, 2]) == "2x^2+x+1"


def test_field_element_operators():
    F = FiniteField(3, 2, [1, 0, 1])
    x = F.wrap(F.encode([0, 1]))
    assert str(x * x + 1) == "0"
    assert (x / x).code == 1
    assert (x ** 4).code == 1
    assert field_arith(F, "mul", x.code, x.code) == 2


def test_division_by_zero():
    F = FiniteField(5)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_bad_fields():
    with pytest.raises(ValueError):
        FiniteField(4)
    with pytest.raises(ValueError):
        FiniteField(3, 2, [2, 0, 1])  # x^2 + 2 = (x-1)(x+1)


def test_irreducibility():
    assert is_irreducible([1, 0, 1], 3)
    assert not is_irreducible([1, 0, 1], 5)
    assert is_irreducible([1, 1, 1], 5)
    assert is_irreducible(smallest_irreducible(2, 4), 2)


def test_quadratic_residues():
    assert sorted(quadratic_residues(FiniteField(13))) == [1, 3, 4, 9, 10, 12]
    assert len(quadratic_residues(FiniteField(3, 2))) == 4
    with pytest.raises(ValueError):
        quadratic_residues(FiniteField(2, 2))


def test_known_residue_presentations():
    # nonzero squares of GF(25) = GF(5)[x]/(x^2+x+1): multiples of 1, x, x+1
    F = FiniteField(5, 2, [1, 1, 1])
    expected = {F.mul(a, F.encode(c)) for a in range(1, 5) for c in ([1], [0, 1], [1, 1])}
    assert quadratic_residues(F) == expected
    # GF(49) = GF(7)[x]/(x^2+1): multiples of 1, x, x+1, x-1
    F = FiniteField(7, 2, [1, 0, 1])
    expected = {F.mul(a, F.encode(c)) for a in range(1, 7) for c in ([1], [0, 1], [1, 1], [6, 1])}
    assert quadratic_residues(F) == expected


@pytest.mark.parametrize("n,k,q,count", [(4, 2, 2, 35), (3, 1, 3, 13), (5, 2, 2, 155), (4, 2, 3, 130), (6, 3, 2, 1395)])
def test_gaussian_binomial(n, k, q, count):
    assert gaussian_binomial(n, k, q) == count


@pytest.mark.parametrize("n,k,p", [(3, 1, 2), (4, 2, 2), (3, 2, 3), (4, 1, 3)])
def test_subspace_enumeration(n, k, p):
    F = FiniteField(p)
    spaces = subspaces(n, k, F)
    assert len(spaces) == gaussian_binomial(n, k, p)
    keys = {frozenset(s.vectors()) for s in spaces}
    assert len(keys) == len(spaces)
    for s in spaces:
        assert rank(s.basis, F) == k == s.dim
        assert len(s.vectors()) == p**k


def test_meet_trivial():
    F = FiniteField(2)
    spaces = subspaces(4, 2, F)
    for a, b in itertools.combinations(spaces[:12], 2):
        va, vb = set(a.vectors()), set(b.vectors())
        assert subspace_meet_trivial(a, b) == (va & vb == {(0, 0, 0, 0)})
    with pytest.raises(ValueError):
        subspace_meet_trivial(spaces[0], subspaces(3, 1, F)[0])
