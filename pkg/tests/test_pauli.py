import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supauli import pauli
from supauli.errors import ResourceLimitError
from supauli.pauli import FormTag, PauliString

from conftest import all_labels, kron_oracle

labels_st = st.text(alphabet="IXYZ", min_size=1, max_size=7)


@pytest.mark.parametrize(
    "labels, flip, z, ycount",
    [
        ("ZIY", 0b001, 0b101, 1),
        ("III", 0b000, 0b000, 0),
        ("XXX", 0b111, 0b000, 0),
        (["Z", "I", "Y"], 0b001, 0b101, 1),
    ],
)
def test_make_string_masks(labels, flip, z, ycount):
    p = pauli.make_string(labels)
    assert (p.flip_mask, p.z_mask, p.y_count) == (flip, z, ycount)
    np.testing.assert_array_equal(pauli.materialize(p), kron_oracle(p.labels))


@pytest.mark.parametrize("bad", ["", [], "IQZ", "i x"])
def test_make_string_rejects(bad):
    with pytest.raises(ValueError):
        pauli.make_string(bad)


def test_from_masks_inverts_masks():
    for lab in all_labels(3):
        p = PauliString(lab)
        assert pauli.from_masks(3, p.flip_mask, p.z_mask) == p


def test_materialize_zIy_matches_printed_matrix():
    i = 1j
    printed = np.array(
        [
            [0, -i, 0, 0, 0, 0, 0, 0],
            [i, 0, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, -i, 0, 0, 0, 0],
            [0, 0, i, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, i, 0, 0],
            [0, 0, 0, 0, -i, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 0, i],
            [0, 0, 0, 0, 0, 0, -i, 0],
        ]
    )
    np.testing.assert_array_equal(pauli.materialize("ZIY"), printed)


def test_materialize_single_identity():
    np.testing.assert_array_equal(pauli.materialize("I"), np.eye(2))


@pytest.mark.parametrize("lab", all_labels(3))
def test_structure_all_three_qubit_strings(lab):
    p = PauliString(lab)
    mat = pauli.materialize(p)
    np.testing.assert_array_equal(mat, kron_oracle(lab))
    for r in range(8):
        nz = np.flatnonzero(mat[r])
        assert nz.tolist() == [r ^ p.flip_mask]
        col, val = p.entry(r)
        assert col == r ^ p.flip_mask
        assert mat[r, col] == val
        assert val in (1, 1j, -1, -1j)
    np.testing.assert_array_equal(mat @ mat, np.eye(8))
    np.testing.assert_array_equal(mat.conj().T, mat)
    assert pauli.classify_form(p).is_diagonal == np.array_equal(mat, np.diag(np.diag(mat)))


@settings(max_examples=60, deadline=None)
@given(labels_st)
def test_materialize_matches_kron(lab):
    np.testing.assert_array_equal(pauli.materialize(lab), kron_oracle(lab))


def test_materialize_cap():
    with pytest.raises(ResourceLimitError):
        pauli.materialize("I" * 13)
    with pytest.raises(ResourceLimitError):
        pauli.materialize("XZ", cap=1)
    assert pauli.materialize("XZ", cap=2).shape == (4, 4)


def test_masks_without_dense_cap():
    p = PauliString("Y" * 63)
    assert p.flip_mask == p.z_mask == 2**63 - 1
    col, val = p.entry(0)
    assert col == 2**63 - 1 and val == pauli.string_phase(63)


@pytest.mark.parametrize(
    "lab, form",
    [("ZIY", "D⊗D⊗OD"), ("III", "D⊗D⊗D"), ("XYZ", "OD⊗OD⊗D")],
)
def test_classify_form(lab, form):
    tag = pauli.classify_form(lab)
    assert str(tag) == form
    # cross-check against the support pattern of the dense matrix
    mat = kron_oracle(lab)
    support_flip = int(np.flatnonzero(mat[0])[0])
    assert tag.mask == support_flip


@pytest.mark.parametrize("text", ["DD-OD", "D⊗D⊗OD", "D-D-OD", "ddod", "D x D x OD"])
def test_form_parse(text):
    assert FormTag.parse(text) == FormTag(3, 0b001)


@pytest.mark.parametrize("bad", ["", "DQ", "O"])
def test_form_parse_rejects(bad):
    with pytest.raises(ValueError):
        FormTag.parse(bad)


def test_hs_inner_examples():
    p = pauli.materialize("XYZ")
    assert pauli.hs_inner(p, p) == 8
    assert pauli.hs_inner(pauli.materialize("IIZ"), pauli.materialize("ZII")) == 0
    x8 = np.zeros((8, 8), dtype=complex)
    x8[0, 1] = x8[1, 0] = 1
    assert pauli.hs_inner(x8, x8) == 2


def test_hs_inner_dim_mismatch():
    with pytest.raises(ValueError):
        pauli.hs_inner(np.eye(2), np.eye(4))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_orthogonality_exhaustive(m):
    mats = [pauli.materialize(p) for p in pauli.enumerate_strings(m)]
    for (i, a), (j, b) in itertools.product(enumerate(mats), repeat=2):
        assert pauli.hs_inner(a, b) == (2**m if i == j else 0)


def test_enumerate_order_and_counts():
    assert [p.labels for p in pauli.enumerate_strings(1)] == ["I", "X", "Y", "Z"]
    strings = pauli.enumerate_strings(3)
    assert [p.labels for p in strings] == all_labels(3)
    assert len(set(strings)) == 64
    assert [p.index for p in strings] == list(range(64))
    assert sorted(reversed(strings)) == strings


def test_enumerate_by_form():
    got = [p.labels for p in pauli.enumerate_strings(3, "DD-OD")]
    assert got == ["IIX", "IIY", "IZX", "IZY", "ZIX", "ZIY", "ZZX", "ZZY"]
    # the 2^m forms partition all strings
    seen = []
    for mask in range(8):
        seen += pauli.enumerate_strings(3, FormTag(3, mask))
    assert sorted(seen) == pauli.enumerate_strings(3)


def test_enumerate_form_length_mismatch():
    with pytest.raises(ValueError):
        pauli.enumerate_strings(2, "DD-OD")
