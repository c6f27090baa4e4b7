"""Generators of su(n) in the flat ``X_1 .. X_{n^2-1}`` labelling.

The flat index runs over three families in turn:

* ``1 .. n-1``: diagonal, ``X_i = E_ii - E_nn``;
* next ``n(n-1)/2``: symmetric real, ``E_jk + E_kj``;
* last ``n(n-1)/2``: antisymmetric imaginary, ``-i E_jk + i E_kj``.

Off-diagonal pairs ``(j, k)``, ``j < k``, are taken row-major over the strict
upper triangle. All positions are 1-based. The diagonal family is the one
obtained by differentiating the general traceless Hermitian element with
respect to each free diagonal entry; it is not Hilbert-Schmidt orthogonal.
Use :func:`orthogonal_diagonal_basis` for the orthogonal variant.
"""

import enum
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

__all__ = [
    "Family",
    "GeneratorIndex",
    "index_to_position",
    "pair_to_index",
    "parse_index",
    "generator",
    "all_generators",
    "orthogonal_diagonal_basis",
    "normalize",
    "derivative_check",
]


class Family(enum.Enum):
    DIAGONAL = "diag"
    SYMMETRIC_REAL = "sym"
    ANTISYMMETRIC_IMAGINARY = "asym"


@dataclass(frozen=True)
class GeneratorIndex:
    """Decoded flat generator index.

    ``position`` is ``(i,)`` for the diagonal family and ``(j, k)`` with
    ``j < k`` otherwise.
    """

    n: int
    flat: int
    family: Family
    position: tuple

    def __str__(self):
        return f"X{self.flat}"

    def label(self):
        """Family-qualified label, e.g. ``sym:1,2``."""
        return f"{self.family.value}:{','.join(map(str, self.position))}"


def _n_pairs(n):
    return n * (n - 1) // 2


def _check_n(n):
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got n={n}")


def _pair_offset(n, j):
    # number of pairs in rows 1 .. j-1
    return (j - 1) * n - (j - 1) * j // 2


def index_to_position(n, flat):
    """Decode a flat index ``1 .. n^2-1`` into family and position."""
    _check_n(n)
    if not 1 <= flat <= n * n - 1:
        raise ValueError(f"flat index {flat} out of range 1..{n * n - 1} for n={n}")
    if flat < n:
        return GeneratorIndex(n, flat, Family.DIAGONAL, (flat,))
    t = flat - n  # 0-based offset within an off-diagonal family
    family = Family.SYMMETRIC_REAL
    if t >= _n_pairs(n):
        t -= _n_pairs(n)
        family = Family.ANTISYMMETRIC_IMAGINARY
    j = 1
    while _pair_offset(n, j + 1) <= t:
        j += 1
    k = j + 1 + t - _pair_offset(n, j)
    return GeneratorIndex(n, flat, family, (j, k))


def pair_to_index(n, family, position):
    """Inverse of :func:`index_to_position`; returns the flat index."""
    _check_n(n)
    family = Family(family)
    if family is Family.DIAGONAL:
        (i,) = position
        if not 1 <= i <= n - 1:
            raise ValueError(f"diagonal position {i} out of range 1..{n - 1}")
        return i
    j, k = position
    if not 1 <= j < k <= n:
        raise ValueError(f"pair {position} must satisfy 1 <= j < k <= {n}")
    t = _pair_offset(n, j) + (k - j - 1)
    if family is Family.ANTISYMMETRIC_IMAGINARY:
        t += _n_pairs(n)
    return n + t


def parse_index(n, text):
    """Parse ``"X8"``, ``"8"``, ``"sym:1,2"``, ``"asym:1,2"`` or ``"diag:3"``."""
    if isinstance(text, GeneratorIndex):
        return text
    if isinstance(text, (int, np.integer)):
        return index_to_position(n, int(text))
    s = text.strip()
    if ":" in s:
        fam, pos = s.split(":", 1)
        try:
            family = Family(fam.strip().lower())
            position = tuple(int(v) for v in pos.split(","))
        except ValueError as exc:
            raise ValueError(f"cannot parse generator label {text!r}") from exc
        return index_to_position(n, pair_to_index(n, family, position))
    if s[:1] in ("X", "x"):
        s = s[1:]
    try:
        flat = int(s)
    except ValueError as exc:
        raise ValueError(f"cannot parse generator label {text!r}") from exc
    return index_to_position(n, flat)


def generator(idx, n=None):
    """Dense generator matrix.

    Parameters
    ----------
    idx : GeneratorIndex, int or str
        Which generator. Integers and strings need ``n``.
    n : int, optional
        Dimension; ignored when ``idx`` is already a :class:`GeneratorIndex`.
    """
    if not isinstance(idx, GeneratorIndex):
        if n is None:
            raise ValueError("n is required for a bare flat index")
        idx = parse_index(n, idx)
    n = idx.n
    out = np.zeros((n, n), dtype=complex)
    if idx.family is Family.DIAGONAL:
        (i,) = idx.position
        out[i - 1, i - 1] = 1
        out[n - 1, n - 1] = -1
    elif idx.family is Family.SYMMETRIC_REAL:
        j, k = idx.position
        out[j - 1, k - 1] = 1
        out[k - 1, j - 1] = 1
    else:
        j, k = idx.position
        out[j - 1, k - 1] = -1j
        out[k - 1, j - 1] = 1j
    return out


def all_generators(n):
    """The ``n^2 - 1`` generators in flat order, as an ``(n^2-1, n, n)`` array."""
    _check_n(n)
    return np.stack([generator(index_to_position(n, f)) for f in range(1, n * n)])


def orthogonal_diagonal_basis(n):
    """Pairwise orthogonal traceless diagonal matrices built from ``X_1..X_{n-1}``.

    The ``l``-th element is ``sqrt(2 / (l (l+1))) * diag(1, .., 1, -l, 0, ..)``
    with ``l`` leading ones, assembled as an explicit linear combination of
    the ``E_ii - E_nn`` generators.
    """
    _check_n(n)
    diag = [generator(index_to_position(n, i)) for i in range(1, n)]
    out = []
    for ell in range(1, n):
        coeffs = np.zeros(n - 1)
        coeffs[:ell] = 1.0
        if ell + 1 < n:
            coeffs[ell] = -ell
        mat = np.tensordot(coeffs, diag, axes=1)
        out.append(np.sqrt(2.0 / (ell * (ell + 1))) * mat)
    return np.stack(out)


def normalize(x):
    """Scale ``x`` to unit Hilbert-Schmidt norm."""
    x = np.asarray(x)
    norm = np.sqrt(np.vdot(x, x).real)
    if norm == 0:
        raise ValueError("cannot normalize the zero matrix")
    return x / norm


def derivative_check(x, h):
    """Max-norm error of the forward difference ``(exp(hX) - I)/h`` against ``X``.

    The error is ``O(h ||X||^2)``; callers compare it with their tolerance.
    """
    x = np.asarray(x, dtype=complex)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {x.shape}")
    if h <= 0:
        raise ValueError(f"step must be positive, got h={h}")
    fd = (expm(h * x) - np.eye(x.shape[0])) / h
    return float(np.max(np.abs(fd - x)))
