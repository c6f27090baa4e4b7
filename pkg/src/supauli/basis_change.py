"""Change of basis between su(2^m) generators and Pauli strings.

Pauli coefficients come from the Hilbert-Schmidt projection
``c_P = Tr(P M) / 2^m``. Each off-diagonal generator ``X`` at position
``(j, k)`` lives on a single flip mask ``(j-1) ^ (k-1)``, so it expands over
the ``2^(m-1)`` strings of one D/OD form and one Y-parity, with
coefficients ``±1/2^(m-1)``. Conversely each such string is a ``±1``
combination of the same ``2^(m-1)`` generators. The ``±1`` matrix linking
the two is a :class:`SectorBlock`.

The diagonal generators ``E_ii - E_nn`` are not orthogonal, so the
all-diagonal sector is solved exactly instead of through a transpose.
"""

import enum
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import gellmann, pauli, sugroup
from .errors import OutOfSpanError, UnsupportedDimensionError
from .gellmann import Family, GeneratorIndex
from .pauli import FormTag

__all__ = [
    "PRUNE_TOL",
    "Part",
    "Decomposition",
    "SectorBlock",
    "DiagonalSectorWarning",
    "qubit_count",
    "decompose",
    "fast_decompose",
    "fwht",
    "compose",
    "generator_in_pauli",
    "pauli_in_generators",
    "decompose_in_generators",
    "sector_block",
    "classification_table",
]

#: Coefficients with magnitude below this are dropped from decompositions.
PRUNE_TOL = 1e-14


class Part(enum.Enum):
    REAL = "real"
    IMAGINARY = "imaginary"
    DIAGONAL = "diagonal"


class DiagonalSectorWarning(UserWarning):
    """A real/imaginary block was requested for the all-diagonal form."""


def qubit_count(dim):
    """``m`` with ``2**m == dim``; raises for other dimensions."""
    dim = int(dim)
    if dim < 2 or dim & (dim - 1):
        raise UnsupportedDimensionError(f"dimension {dim} is not a power of two >= 2")
    return dim.bit_length() - 1


@dataclass(frozen=True)
class Decomposition:
    """Sparse map from Pauli string to complex coefficient.

    Missing strings have coefficient zero. ``terms`` is kept in canonical
    string order.
    """

    m: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, value in self.terms.items():
            p = pauli.make_string(key)
            if p.m != self.m:
                raise ValueError(f"string {p} has {p.m} factors, decomposition has m={self.m}")
            clean[p] = complex(value)
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __getitem__(self, key):
        return self.terms.get(pauli.make_string(key), 0j)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def items(self):
        return self.terms.items()

    def to_vector(self):
        """Dense length ``4**m`` coefficient vector in canonical order."""
        vec = np.zeros(4**self.m, dtype=complex)
        for p, c in self.terms.items():
            vec[p.index] = c
        return vec

    def to_json(self):
        return {
            "m": self.m,
            "terms": [
                {"string": p.labels, "re": c.real, "im": c.imag} for p, c in self.terms.items()
            ],
        }

    @classmethod
    def from_json(cls, obj):
        try:
            m = int(obj["m"])
            terms = {}
            for t in obj["terms"]:
                p = pauli.make_string(t["string"])
                terms[p] = terms.get(p, 0j) + complex(t.get("re", 0.0), t.get("im", 0.0))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed decomposition JSON: {exc}") from None
        return cls(m, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for p, c in self.terms.items():
            if c.imag == 0:
                parts.append(f"{c.real:+.6g}*{p}")
            else:
                parts.append(f"+({c.real:.6g}{c.imag:+.6g}i)*{p}")
        return " ".join(parts).lstrip("+")


def _as_square(mat):
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    return mat


def _pruned(m, pairs, tol):
    return Decomposition(m, {p: c for p, c in pairs if abs(c) >= tol})


def decompose(mat, tol=PRUNE_TOL):
    """Pauli coefficients by direct projection onto every dense string.

    Costs ``O(8^m)``; :func:`fast_decompose` gives the same result in
    ``O(m 4^m)``.
    """
    mat = _as_square(mat)
    nq = qubit_count(mat.shape[0])
    scale = 1.0 / mat.shape[0]
    pairs = []
    for p in pauli.enumerate_strings(nq):
        # Tr(P M) = sum_ab P[a, b] M[b, a]
        pairs.append((p, np.sum(pauli.materialize(p) * mat.T) * scale))
    return _pruned(nq, pairs, tol)


def fwht(a):
    """Unnormalized Walsh-Hadamard transform along the last axis.

    ``out[..., z] = sum_s a[..., s] * (-1)**popcount(s & z)``. The last axis
    length must be a power of two.
    """
    a = np.array(a, dtype=complex)
    size = a.shape[-1]
    if size & (size - 1):
        raise ValueError(f"transform length {size} is not a power of two")
    lead = a.shape[:-1]
    h = 1
    while h < size:
        a = a.reshape(*lead, size // (2 * h), 2, h)
        x = a[..., 0, :]
        y = a[..., 1, :]
        a = np.stack((x + y, x - y), axis=-2)
        h *= 2
    return a.reshape(*lead, size)


def fast_decompose(mat, tol=PRUNE_TOL):
    """Pauli coefficients via one Walsh-Hadamard transform per flip mask.

    For flip mask ``f`` the strings differ only in their z-mask ``z``, and
    ``Tr(P M) = (-i)^popcount(f & z) * sum_s M[s ^ f, s] (-1)^popcount(s & z)``,
    which is a Walsh-Hadamard transform of the ``f``-shifted band of ``M``.
    """
    mat = _as_square(mat)
    nq = qubit_count(mat.shape[0])
    dim = mat.shape[0]
    idx = np.arange(dim)
    flips = idx[:, None]
    band = mat[flips ^ idx[None, :], idx[None, :]]  # band[f, s] = M[s ^ f, s]
    spectrum = fwht(band)  # spectrum[f, z]
    ycount = np.bitwise_count(flips & idx[None, :]).astype(np.int64)
    phases = np.array([1, -1j, -1, 1j])[ycount % 4]
    coeffs = phases * spectrum / dim
    f_idx, z_idx = np.nonzero(np.abs(coeffs) >= tol)
    return Decomposition(
        nq,
        {
            pauli.from_masks(nq, int(f), int(z)): coeffs[f, z]
            for f, z in zip(f_idx, z_idx)
        },
    )


def compose(d, m=None):
    """Sum ``c_P * P`` back into a dense matrix.

    ``d`` may be a :class:`Decomposition` or a plain mapping from strings
    (or literals) to coefficients; all strings must share one length.
    """
    if isinstance(d, Decomposition):
        nq, terms = d.m, d.terms
    else:
        terms = {pauli.make_string(k): complex(v) for k, v in dict(d).items()}
        lengths = {p.m for p in terms}
        if len(lengths) > 1:
            raise ValueError(f"mixed string lengths {sorted(lengths)} in decomposition")
        nq = lengths.pop() if lengths else m
        if nq is None:
            raise ValueError("m is required to compose an empty mapping")
    pauli._check_cap(nq, None)
    out = np.zeros((1 << nq, 1 << nq), dtype=complex)
    for p, c in terms.items():
        rows, cols, vals = pauli._row_values(nq, p.flip_mask, p.z_mask, p.y_count)
        out[rows, cols] += c * vals
    return out


def _string_row_values(nq, flip, rows):
    """Values ``P[r, r ^ flip]`` for every z-mask, shape ``(2^m, len(rows))``."""
    z = np.arange(1 << nq, dtype=np.int64)[:, None]
    rows = np.asarray(rows, dtype=np.int64)[None, :]
    phase = np.array([1, -1j, -1, 1j])[np.bitwise_count(z & flip).astype(np.int64) % 4]
    sign = 1 - 2 * (np.bitwise_count(z & rows).astype(np.int64) & 1)
    return phase * sign


def generator_in_pauli(idx, n=None):
    """Pauli expansion of one generator.

    Works from the masks alone: the generator touches one flip mask, so only
    ``2^m`` candidate strings are evaluated. The result has ``2^(m-1)``
    terms of magnitude ``1/2^(m-1)``, all in a single D/OD form.
    """
    if not isinstance(idx, GeneratorIndex):
        if n is None:
            raise ValueError("n is required for a bare flat index")
        idx = gellmann.parse_index(n, idx)
    nq = qubit_count(idx.n)
    dim = idx.n
    if idx.family is Family.DIAGONAL:
        (i,) = idx.position
        flip = 0
        vals = _string_row_values(nq, 0, [i - 1, dim - 1])
        tr = (vals[:, 0] - vals[:, 1]).real
    else:
        j, k = idx.position
        r, c = j - 1, k - 1
        flip = r ^ c
        upper = _string_row_values(nq, flip, [r])[:, 0]  # P[r, c]
        if idx.family is Family.SYMMETRIC_REAL:
            tr = 2 * upper.real  # P[r, c] + P[c, r]
        else:
            tr = -2 * upper.imag  # i P[r, c] - i P[c, r]
    coeffs = tr / dim
    return Decomposition(
        nq,
        {pauli.from_masks(nq, flip, z): coeffs[z] for z in np.nonzero(coeffs)[0]},
    )


def pauli_in_generators(p):
    """Expand a non-identity Pauli string over the generators ``X_1 .. X_{4^m-1}``.

    Returns a dict ``GeneratorIndex -> float`` in ascending flat order.
    Off-diagonal strings give ``2^(m-1)`` coefficients of ``±1``. Diagonal
    strings solve ``P = sum_i c_i (E_ii - E_nn)`` exactly, ``c_i = P_ii``.

    Raises
    ------
    OutOfSpanError
        For the all-identity string, which has nonzero trace.
    """
    p = pauli.make_string(p)
    if p.is_identity:
        raise OutOfSpanError(f"{p} is not traceless and lies outside su({2**p.m})")
    dim = 1 << p.m
    rows = np.arange(dim, dtype=np.int64)
    _, cols, vals = pauli._row_values(p.m, p.flip_mask, p.z_mask, p.y_count)
    out = {}
    if p.flip_mask == 0:
        coeffs = vals.real
        # the E_nn entry is fixed by the others through tracelessness
        residual = abs(coeffs[:-1].sum() + coeffs[-1])
        if residual > 1e-12:
            raise OutOfSpanError(f"diagonal solve for {p} left residual {residual}")
        for i in range(1, dim):
            out[gellmann.index_to_position(dim, i)] = float(coeffs[i - 1])
        return out
    keep = rows < cols
    for r, c, v in zip(rows[keep], cols[keep], vals[keep]):
        pos = (int(r) + 1, int(c) + 1)
        if v.real != 0:
            out[(Family.SYMMETRIC_REAL, pos)] = float(v.real)
        if v.imag != 0:
            out[(Family.ANTISYMMETRIC_IMAGINARY, pos)] = float(-v.imag)
    decoded = {
        gellmann.index_to_position(dim, gellmann.pair_to_index(dim, fam, pos)): c
        for (fam, pos), c in out.items()
    }
    return dict(sorted(decoded.items(), key=lambda kv: kv[0].flat))


def decompose_in_generators(mat, tol=sugroup.HERMITICITY_TOL):
    """Coefficients of a Hermitian traceless matrix over ``X_1 .. X_{n^2-1}``.

    Works for any ``n``; zero coefficients are omitted.
    """
    params = sugroup.extract_params(mat, tol)
    n = params.n
    return {
        gellmann.index_to_position(n, t + 1): float(c)
        for t, c in enumerate(params.vector())
        if abs(c) >= PRUNE_TOL
    }


@dataclass(frozen=True, eq=False)
class SectorBlock:
    """Integer change-of-basis block for one D/OD form and one part.

    ``g[row, col]`` is the coefficient of generator ``indices[col]`` in
    string ``strings[row]``, i.e. ``strings = g @ generators``. For
    off-diagonal sectors the rows of ``g`` are orthogonal and the inverse is
    ``scale * g.T`` with ``scale = 1/2^(m-1)``; for the diagonal sector
    ``scale`` is ``None`` and :meth:`inverse` solves exactly.
    """

    form: FormTag
    part: Part
    strings: tuple
    indices: tuple
    g: np.ndarray
    scale: Fraction | None

    @property
    def m(self):
        return self.form.m

    @property
    def is_symmetric(self):
        return bool(np.array_equal(self.g, self.g.T))

    def inverse(self):
        """Matrix taking string coefficients back to generator coefficients."""
        if self.scale is not None:
            return float(self.scale) * self.g.T
        # columns from the independent Pauli-projection route
        inv = np.zeros(self.g.shape)
        for col, flat in enumerate(self.indices):
            d = generator_in_pauli(gellmann.index_to_position(2**self.m, flat))
            for row, p in enumerate(self.strings):
                inv[col, row] = d[p].real
        return inv

    def normalized(self):
        """``g / sqrt(2^(m-1))``, an orthogonal matrix for off-diagonal sectors."""
        if self.scale is None:
            raise ValueError("the diagonal sector has no orthogonal normalization")
        return self.g / np.sqrt(2 ** (self.m - 1))

    def to_json(self):
        return {
            "form": str(self.form),
            "part": self.part.value,
            "strings": [p.labels for p in self.strings],
            "generators": [f"X{i}" for i in self.indices],
            "g": self.g.tolist(),
            "inverse_scale": None if self.scale is None else str(self.scale),
            "normalized_scale": None if self.scale is None else f"1/sqrt({2 ** (self.m - 1)})",
        }


def _sector_rows(form, part):
    strings = pauli.enumerate_strings(form.m, form)
    if part is Part.DIAGONAL:
        return [p for p in strings if not p.is_identity]
    parity = 0 if part is Part.REAL else 1
    return [p for p in strings if p.y_count % 2 == parity]


def _sector_columns(form, part):
    dim = 1 << form.m
    if part is Part.DIAGONAL:
        return list(range(1, dim))
    family = Family.SYMMETRIC_REAL if part is Part.REAL else Family.ANTISYMMETRIC_IMAGINARY
    cols = [
        gellmann.pair_to_index(dim, family, (r + 1, (r ^ form.mask) + 1))
        for r in range(dim)
        if r < r ^ form.mask
    ]
    return sorted(cols)


def sector_block(form, part=None):
    """The ``±1`` block linking one sector's generators to its Pauli strings.

    ``form`` is a :class:`FormTag` or a string such as ``"DD-OD"``. For the
    all-diagonal form the diagonal block (rows: non-identity diagonal
    strings, columns: ``X_1 .. X_{n-1}``) is returned; asking for a
    real/imaginary part there emits :class:`DiagonalSectorWarning`.
    """
    if isinstance(form, str):
        form = FormTag.parse(form)
    part = None if part is None else Part(part)
    if form.is_diagonal:
        if part not in (None, Part.DIAGONAL):
            warnings.warn(
                f"form {form} has no {part.value} part; returning the diagonal sector",
                DiagonalSectorWarning,
                stacklevel=2,
            )
        part = Part.DIAGONAL
    elif part in (None, Part.DIAGONAL):
        raise ValueError(f"form {form} needs part 'real' or 'imaginary'")
    strings = _sector_rows(form, part)
    indices = _sector_columns(form, part)
    col_of = {flat: c for c, flat in enumerate(indices)}
    g = np.zeros((len(strings), len(indices)), dtype=np.int64)
    for row, p in enumerate(strings):
        for idx, coeff in pauli_in_generators(p).items():
            g[row, col_of[idx.flat]] = int(coeff)
    scale = None if part is Part.DIAGONAL else Fraction(1, 2 ** (form.m - 1))
    return SectorBlock(form, part, tuple(strings), tuple(indices), g, scale)


def classification_table(m):
    """Group every generator index by D/OD form and part.

    Returns ``{FormTag: {"real": [...], "imaginary": [...], "diagonal": [...]}}``
    with forms in flip-mask order and indices ascending.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    dim = 1 << m
    table = {
        FormTag(m, mask): {"real": [], "imaginary": [], "diagonal": []} for mask in range(dim)
    }
    for flat in range(1, dim * dim):
        idx = gellmann.index_to_position(dim, flat)
        if idx.family is Family.DIAGONAL:
            table[FormTag(m, 0)]["diagonal"].append(flat)
            continue
        j, k = idx.position
        cell = "real" if idx.family is Family.SYMMETRIC_REAL else "imaginary"
        table[FormTag(m, (j - 1) ^ (k - 1))][cell].append(flat)
    return table
