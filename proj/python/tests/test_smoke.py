import pytest

import reflekt

U = [[0, 1], [1, 0]]
U3 = [
    [0, 1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 1, 0],
]


def test_arith():
    assert reflekt.jacobi(-1, 7) == -1
    assert reflekt.is_prime(23) and not reflekt.is_prime(161)
    assert reflekt.nonresidue_prime(2, exclude=[7]) == 23
    assert reflekt.find_prime([(7, 8), (2, 3)]) == 23


def test_big_integers_round_trip():
    x, y = reflekt.pell_fundamental(991)
    assert x > 2**64
    assert x * x - 991 * y * y == 1
    assert reflekt.is_prime(2**61 - 1)


def test_lattice():
    lat = reflekt.Lattice(U)
    assert lat.signature() == (1, 1)
    assert lat.det == -1
    assert lat.is_unscaled()
    assert lat.discriminant() == {"invariant_factors": [], "exponent": 1, "order": 1}
    u3 = reflekt.Lattice(U3)
    comp = reflekt.orthogonal_complement(u3, [[1, 1, 0, 0, 0, 0]])
    assert len(comp) == 5
    assert all(u3.pair(row, [1, 1, 0, 0, 0, 0]) == 0 for row in comp)
    assert reflekt.index(u3, [[2, 0, 0, 0, 0, 0]], [[1, 0, 0, 0, 0, 0]]) == 2
    assert reflekt.enumerate_norm_vectors(reflekt.Lattice([[1, 0], [0, -8]]), -4, 3) == [[2, -1], [2, 1]]


def test_binary_forms():
    assert reflekt.mu(1, 0, -8) == -4
    assert reflekt.represents(1, 0, -7, -3)
    assert not reflekt.represents(1, 0, -161, -2)
    assert reflekt.cf_sqrt(7) == (2, [1, 1, 1, 4])
    assert reflekt.binary_roots(1, 0, -8) == [(-4, [2, 1]), (-8, [0, 1])]
    assert reflekt.infinite_order_isometry(8) == [[3, 8], [1, 3]]


def test_roots():
    d8 = reflekt.Lattice([[1, 0], [0, -8]])
    assert reflekt.is_root(d8, [2, 1])
    assert reflekt.reflect(d8, [2, 1], [0, 1]) == [-8, -3]
    verdict = reflekt.reflectivity(reflekt.Lattice([[3, 1], [1, -11]]))
    assert verdict["status"] == "non-reflective"
    assert verdict["pell_unit"] is not None


def test_certificates():
    cert = reflekt.avoid_roots(2, 1)
    assert cert["a"] == 161
    assert reflekt.is_valid(cert)
    cert["a"] = 163
    assert not reflekt.is_valid(cert)

    assert reflekt.is_valid(reflekt.pell_family(5))
    assert reflekt.select_pell_a(4) == 4

    mj = reflekt.mj_family(reflekt.Lattice(U3), [1, 1, 0, 0, 0, 0], N=2, count=3)
    assert [e["mu"] for e in mj["entries"]] == [-24, -32, -40]
    assert reflekt.is_valid(mj)


def test_errors():
    with pytest.raises(reflekt.DomainError):
        reflekt.mu(1, 0, -9)
    with pytest.raises(ValueError):
        reflekt.Lattice([[1, 2], [3, 4]])
    with pytest.raises(TypeError):
        reflekt.jacobi(1.5, 7)
