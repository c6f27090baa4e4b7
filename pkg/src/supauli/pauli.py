"""Pauli strings in flip-mask / z-mask form.

A Pauli string ``P = P_0 ⊗ P_1 ⊗ ... ⊗ P_{m-1}`` is stored as its labels
plus two integer masks. Factor ``q`` maps to bit ``m - 1 - q`` so that the
leftmost factor is the most significant bit of a row index. With this
convention every string is a signed permutation matrix::

    P[r, r ^ flip_mask] = (-i)**y_count * (-1)**popcount(r & z_mask)

and all other entries vanish. Dense matrices are only built on request and
only up to :data:`DENSE_QUBIT_CAP` qubits.
"""

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import ResourceLimitError

__all__ = [
    "DENSE_QUBIT_CAP",
    "LABELS",
    "SINGLE_QUBIT",
    "FormTag",
    "PauliString",
    "make_string",
    "from_masks",
    "materialize",
    "classify_form",
    "hs_inner",
    "enumerate_strings",
    "string_phase",
]

#: Largest qubit count for which dense matrices are built (16M entries).
DENSE_QUBIT_CAP = 12

#: Canonical label order; also the base-4 digit used for enumeration.
LABELS = "IXYZ"

SINGLE_QUBIT = {
    "I": np.array([[1, 0], [0, 1]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_PHASES = (1, -1j, -1, 1j)  # (-i)**k


def string_phase(y_count):
    """Return ``(-i)**y_count`` as an exact complex value."""
    return _PHASES[y_count % 4]


@dataclass(frozen=True)
class FormTag:
    """Per-factor diagonal (D) / off-diagonal (OD) pattern of a Pauli string.

    The tag is equivalent to the string's flip mask: factor ``q`` is OD iff
    bit ``m - 1 - q`` of ``mask`` is set.
    """

    m: int
    mask: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"form needs at least one factor, got m={self.m}")
        if not 0 <= self.mask < (1 << self.m):
            raise ValueError(f"mask {self.mask} out of range for m={self.m}")

    @property
    def pattern(self):
        return tuple(
            "OD" if (self.mask >> (self.m - 1 - q)) & 1 else "D"
            for q in range(self.m)
        )

    @property
    def is_diagonal(self):
        return self.mask == 0

    @property
    def od_count(self):
        return self.mask.bit_count()

    @classmethod
    def parse(cls, text):
        """Parse ``"D⊗D⊗OD"``, ``"DD-OD"``, ``"D-D-OD"`` or ``"DDOD"``.

        Separators (``⊗``, ``-``, ``x``, ``*``, whitespace) are optional
        since ``O`` is always followed by ``D``.
        """
        tokens = []
        i = 0
        s = text.strip().upper()
        while i < len(s):
            ch = s[i]
            if ch in "⊗-X* \t,":
                i += 1
            elif s.startswith("OD", i):
                tokens.append("OD")
                i += 2
            elif ch == "D":
                tokens.append("D")
                i += 1
            else:
                raise ValueError(f"cannot parse form {text!r} at position {i}")
        if not tokens:
            raise ValueError(f"empty form string {text!r}")
        return cls.from_pattern(tokens)

    @classmethod
    def from_pattern(cls, pattern):
        mask = 0
        for tok in pattern:
            if tok not in ("D", "OD"):
                raise ValueError(f"form token must be 'D' or 'OD', got {tok!r}")
            mask = (mask << 1) | (tok == "OD")
        return cls(len(pattern), mask)

    def compact(self):
        """Dash-separated rendering such as ``D-D-OD``."""
        return "-".join(self.pattern)

    def __str__(self):
        return "⊗".join(self.pattern)


@dataclass(frozen=True, order=True)
class PauliString:
    """An ``m``-fold tensor product of single-qubit Pauli matrices.

    Ordering and hashing use the canonical base-4 integer (``I=0, X=1,
    Y=2, Z=3``, leftmost factor most significant), so ``sorted`` yields the
    enumeration order.
    """

    _key: int = field(init=False, repr=False)
    labels: str
    flip_mask: int = field(init=False, compare=False)
    z_mask: int = field(init=False, compare=False)
    y_count: int = field(init=False, compare=False)

    def __post_init__(self):
        labels = self.labels
        if not isinstance(labels, str):
            labels = "".join(labels)
        labels = labels.upper()
        if not labels:
            raise ValueError("a Pauli string needs at least one label")
        flip = z = key = 0
        for ch in labels:
            if ch not in LABELS:
                raise ValueError(f"invalid Pauli label {ch!r} in {labels!r}")
            flip = (flip << 1) | (ch in "XY")
            z = (z << 1) | (ch in "ZY")
            key = key * 4 + LABELS.index(ch)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "flip_mask", flip)
        object.__setattr__(self, "z_mask", z)
        object.__setattr__(self, "y_count", labels.count("Y"))
        # length goes in the key so strings of different m never collide
        object.__setattr__(self, "_key", (len(labels) << 128) | key)

    @property
    def m(self):
        return len(self.labels)

    @property
    def index(self):
        """Position in :func:`enumerate_strings` order."""
        return self._key & ((1 << (2 * self.m)) - 1)

    @property
    def is_identity(self):
        return self.flip_mask == 0 and self.z_mask == 0

    @property
    def phase(self):
        return string_phase(self.y_count)

    def entry(self, row):
        """Return ``(column, value)`` of the single nonzero entry in ``row``."""
        value = self.phase * (-1) ** (row & self.z_mask).bit_count()
        return row ^ self.flip_mask, value

    def __str__(self):
        return self.labels

    def __len__(self):
        return len(self.labels)


def make_string(labels):
    """Build a :class:`PauliString` from a label sequence or literal like ``"ZIY"``."""
    if isinstance(labels, PauliString):
        return labels
    return PauliString(labels if isinstance(labels, str) else "".join(labels))


def from_masks(m, flip_mask, z_mask):
    """Inverse of the ``(flip_mask, z_mask)`` encoding."""
    chars = []
    for q in range(m):
        bit = m - 1 - q
        f = (flip_mask >> bit) & 1
        z = (z_mask >> bit) & 1
        chars.append("IZXY"[f * 2 + z])
    return PauliString("".join(chars))


def _check_cap(m, cap):
    cap = DENSE_QUBIT_CAP if cap is None else cap
    if m > cap:
        raise ResourceLimitError(
            f"dense {2**m}x{2**m} matrix requested for m={m} exceeds cap m<={cap}"
        )


def _row_values(m, flip_mask, z_mask, y_count):
    rows = np.arange(1 << m, dtype=np.int64)
    signs = 1 - 2 * (np.bitwise_count(rows & z_mask) & 1).astype(np.int64)
    return rows, rows ^ flip_mask, string_phase(y_count) * signs


def materialize(p, cap=None):
    """Dense ``2**m x 2**m`` matrix of a Pauli string.

    Equal to the Kronecker product of the single-qubit factors with the
    leftmost label outermost. Raises :class:`ResourceLimitError` for
    ``m`` above ``cap`` (default :data:`DENSE_QUBIT_CAP`).
    """
    p = make_string(p)
    _check_cap(p.m, cap)
    rows, cols, vals = _row_values(p.m, p.flip_mask, p.z_mask, p.y_count)
    out = np.zeros((1 << p.m, 1 << p.m), dtype=complex)
    out[rows, cols] = vals
    return out


def classify_form(p):
    p = make_string(p)
    return FormTag(p.m, p.flip_mask)


def hs_inner(a, b):
    """Hilbert-Schmidt inner product ``Tr(A^dagger B)``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def enumerate_strings(m, form=None):
    """All Pauli strings on ``m`` qubits in canonical base-4 order.

    With ``form`` given, only the ``2**m`` strings of that D/OD pattern are
    returned, still in canonical order.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if form is None:
        choices = [LABELS] * m
    else:
        if isinstance(form, str):
            form = FormTag.parse(form)
        if form.m != m:
            raise ValueError(f"form has {form.m} factors but m={m}")
        choices = ["XY" if tok == "OD" else "IZ" for tok in form.pattern]
    return [PauliString("".join(t)) for t in product(*choices)]
