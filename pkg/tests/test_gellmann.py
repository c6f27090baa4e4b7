import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from supauli import gellmann
from supauli.gellmann import Family, GeneratorIndex

from conftest import kron_oracle, unit


def quarter(*signed):
    """Sum of signed Kronecker strings divided by 4, e.g. ``("+IIX", "-IZX")``."""
    total = 0
    for s in signed:
        total = total + (1 if s[0] == "+" else -1) * kron_oracle(s[1:])
    return total / 4


def test_x1_from_its_pauli_expansion():
    expected = quarter("+IIZ", "+ZII", "+IZI", "+ZZZ")
    np.testing.assert_array_equal(expected, np.diag([1, 0, 0, 0, 0, 0, 0, -1]))
    np.testing.assert_array_equal(gellmann.generator(1, 8), expected)


def test_su2_base_case():
    sy = np.array([[0, -1j], [1j, 0]])
    np.testing.assert_array_equal(gellmann.generator(3, 2), sy)
    gens = gellmann.all_generators(2)
    np.testing.assert_array_equal(gens[0], np.diag([1, -1]))
    np.testing.assert_array_equal(gens[1], np.array([[0, 1], [1, 0]]))


def test_x8_from_its_pauli_expansion():
    expected = quarter("+IIX", "+IZX", "+ZIX", "+ZZX")
    np.testing.assert_array_equal(expected, unit(8, 1, 2) + unit(8, 2, 1))
    np.testing.assert_array_equal(gellmann.generator(8, 8), expected)


def _support(mat):
    rows, cols = np.nonzero(mat)
    return sorted({(int(min(r, c)) + 1, int(max(r, c)) + 1) for r, c in zip(rows, cols)})


@pytest.mark.parametrize(
    "flat, signs",
    [
        (8, "++++"),
        (21, "+-+-"),
        (30, "++--"),
        (35, "+--+"),
    ],
)
def test_row_major_order_is_consistent_with_sector_expansion(flat, signs):
    # Invert the 4x4 block: X = 1/4 (±IIX ±IZX ±ZIX ±ZZX), then read the support.
    mat = quarter(*(s + lab for s, lab in zip(signs, ("IIX", "IZX", "ZIX", "ZZX"))))
    (pos,) = _support(mat)
    idx = gellmann.index_to_position(8, flat)
    assert idx.family is Family.SYMMETRIC_REAL
    assert idx.position == pos
    np.testing.assert_array_equal(gellmann.generator(idx), mat)


def test_index_examples():
    assert gellmann.index_to_position(8, 8).position == (1, 2)
    assert gellmann.index_to_position(8, 21).position == (3, 4)
    assert gellmann.index_to_position(8, 30).position == (5, 6)
    assert gellmann.index_to_position(8, 35).position == (7, 8)
    idx = gellmann.index_to_position(8, 36)
    assert (idx.family, idx.position) == (Family.ANTISYMMETRIC_IMAGINARY, (1, 2))
    assert gellmann.index_to_position(8, 63).position == (7, 8)
    assert gellmann.index_to_position(8, 7).family is Family.DIAGONAL


@pytest.mark.parametrize("flat", [0, 64, -1])
def test_index_out_of_range(flat):
    with pytest.raises(ValueError):
        gellmann.index_to_position(8, flat)
    with pytest.raises(ValueError):
        gellmann.generator(flat, 8)


@given(st.integers(min_value=2, max_value=40), st.data())
def test_index_roundtrip(n, data):
    flat = data.draw(st.integers(min_value=1, max_value=n * n - 1))
    idx = gellmann.index_to_position(n, flat)
    assert gellmann.pair_to_index(n, idx.family, idx.position) == flat


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_index_ranges_and_pair_order(n):
    decoded = [gellmann.index_to_position(n, f) for f in range(1, n * n)]
    pairs = n * (n - 1) // 2
    fams = [d.family for d in decoded]
    assert fams == (
        [Family.DIAGONAL] * (n - 1)
        + [Family.SYMMETRIC_REAL] * pairs
        + [Family.ANTISYMMETRIC_IMAGINARY] * pairs
    )
    row_major = [(j, k) for j in range(1, n + 1) for k in range(j + 1, n + 1)]
    assert [d.position for d in decoded[n - 1 : n - 1 + pairs]] == row_major
    assert [d.position for d in decoded[n - 1 + pairs :]] == row_major


@pytest.mark.parametrize(
    "text, flat",
    [("X8", 8), ("8", 8), ("sym:1,2", 8), ("asym:1,2", 36), ("diag:3", 3), ("asym:7,8", 63)],
)
def test_parse_index(text, flat):
    assert gellmann.parse_index(8, text).flat == flat


@pytest.mark.parametrize("text", ["Xfoo", "sym:2,1", "bogus:1,2", "diag:8"])
def test_parse_index_rejects(text):
    with pytest.raises(ValueError):
        gellmann.parse_index(8, text)


def test_generator_families():
    j, k = 2, 5
    sym = gellmann.generator(gellmann.pair_to_index(6, "sym", (j, k)), 6)
    asym = gellmann.generator(gellmann.pair_to_index(6, "asym", (j, k)), 6)
    np.testing.assert_array_equal(sym, unit(6, j, k) + unit(6, k, j))
    np.testing.assert_array_equal(asym, -1j * unit(6, j, k) + 1j * unit(6, k, j))
    diag = gellmann.generator(4, 6)
    np.testing.assert_array_equal(diag, unit(6, 4, 4) - unit(6, 6, 6))


def test_all_generators_su8():
    gens = gellmann.all_generators(8)
    assert gens.shape == (63, 8, 8)
    for x in gens:
        np.testing.assert_array_equal(x.conj().T, x)
        assert abs(np.trace(x)) < 1e-12


def test_off_diagonal_orthogonality_su8():
    gens = gellmann.all_generators(8)
    for lo, hi in ((7, 35), (35, 63)):
        block = gens[lo:hi]
        gram = np.einsum("aij,bij->ab", block.conj(), block)
        np.testing.assert_array_equal(gram, 2 * np.eye(hi - lo))
    # the E_ii - E_nn family overlaps
    diag = gens[:7]
    gram = np.einsum("aij,bij->ab", diag.conj(), diag)
    assert gram[0, 1] == 1


def test_su3_generators_independent():
    gens = gellmann.all_generators(3)
    assert len(gens) == 8
    rows = [
        [sympy.nsimplify(v) for v in np.concatenate([g.real.ravel(), g.imag.ravel()])]
        for g in gens
    ]
    assert sympy.Matrix(rows).rank() == 8


@pytest.mark.parametrize("n", [2, 3, 8])
def test_orthogonal_diagonal_basis(n):
    basis = gellmann.orthogonal_diagonal_basis(n)
    assert len(basis) == n - 1
    gram = np.einsum("aij,bij->ab", basis.conj(), basis)
    np.testing.assert_allclose(gram, 2 * np.eye(n - 1), atol=1e-12)
    for ell, b in enumerate(basis, start=1):
        assert np.count_nonzero(b - np.diag(np.diag(b))) == 0
        assert abs(np.trace(b)) < 1e-12
        shape = np.zeros(n)
        shape[:ell] = 1
        shape[ell] = -ell
        np.testing.assert_allclose(np.diag(b).real, np.sqrt(2 / (ell * (ell + 1))) * shape)


def test_orthogonal_diagonal_small_cases():
    (b,) = gellmann.orthogonal_diagonal_basis(2)
    np.testing.assert_allclose(b, np.diag([1, -1]))
    b1, b2 = gellmann.orthogonal_diagonal_basis(3)
    assert abs(np.vdot(b1, b2)) < 1e-12


def test_normalize():
    x = gellmann.normalize(gellmann.generator(8, 8))
    assert abs(np.vdot(x, x) - 1) < 1e-15
    with pytest.raises(ValueError):
        gellmann.normalize(np.zeros((2, 2)))


def test_derivative_check():
    assert gellmann.derivative_check(np.zeros((4, 4)), 1e-5) == 0
    for flat in (1, 42):
        x = gellmann.generator(flat, 8)
        err = gellmann.derivative_check(x, 1e-5)
        # forward difference error ~ ||X||^2 h / 2
        assert err <= 1e-4
        assert err > 0


def test_derivative_check_rejects():
    with pytest.raises(ValueError):
        gellmann.derivative_check(np.zeros((2, 3)), 1e-5)
    with pytest.raises(ValueError):
        gellmann.derivative_check(np.eye(2), 0)


def test_generator_index_labels():
    idx = GeneratorIndex(8, 36, Family.ANTISYMMETRIC_IMAGINARY, (1, 2))
    assert str(idx) == "X36"
    assert idx.label() == "asym:1,2"
    assert gellmann.index_to_position(8, 36) == idx
