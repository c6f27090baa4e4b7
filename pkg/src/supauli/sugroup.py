"""Parameterization of su(n) and exponentiation to SU(n).

An element of su(n) (Hermitian, traceless) carries ``n^2 - 1`` real
parameters::

    H = [[psi_1,        a_1 - i b_1,  ...            ],
         [a_1 + i b_1,  psi_2,        ...            ],
         [...                         psi_n          ]]

with ``psi_n = -(psi_1 + ... + psi_{n-1})`` and the off-diagonal pairs
numbered row-major over the upper triangle. Parameter ``t`` in the flat
vector ``(psi, a, b)`` multiplies generator ``X_{t+1}`` of
:mod:`supauli.gellmann`.

Exponentiating ``H`` directly gives a positive-definite matrix, not a
unitary one. :class:`Convention` selects between that literal reading and
the unitary ``exp(iH)``.
"""

import enum
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import SuConditionError

__all__ = [
    "Convention",
    "SuParameters",
    "ConditionResult",
    "SuConditionReport",
    "HERMITICITY_TOL",
    "free_parameter_count",
    "build_element",
    "extract_params",
    "exponentiate",
    "check_su_conditions",
]

#: Default absolute tolerance for accepting a matrix as Hermitian/traceless.
HERMITICITY_TOL = 1e-10


class Convention(enum.Enum):
    LITERAL = "literal"
    UNITARY = "unitary"


def free_parameter_count(n):
    """Real degrees of freedom of su(n): ``n^2 - 1``.

    Counted as ``2n^2`` real numbers, minus ``n`` imaginary diagonal parts,
    minus the ``n^2 - n`` lower-triangle reals fixed by Hermiticity, minus
    one for the trace condition.
    """
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got n={n}")
    hermitian = 2 * n * n - n - (2 * (n * n - n)) // 2
    return hermitian - 1


@dataclass(frozen=True, eq=False)
class SuParameters:
    n: int
    psi: np.ndarray
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        n = self.n
        if n < 2:
            raise ValueError(f"dimension must be >= 2, got n={n}")
        pairs = n * (n - 1) // 2
        for name, want in (("psi", n - 1), ("a", pairs), ("b", pairs)):
            arr = np.array(getattr(self, name), dtype=float).reshape(-1)
            if arr.size != want:
                raise ValueError(f"{name} has {arr.size} entries, expected {want} for n={n}")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def psi_last(self):
        """The implied last diagonal entry ``-(psi_1 + ... + psi_{n-1})``."""
        return -float(np.sum(self.psi))

    def vector(self):
        """Flat vector ordered like the generator indices ``X_1 .. X_{n^2-1}``."""
        return np.concatenate([self.psi, self.a, self.b])

    @classmethod
    def from_vector(cls, n, vec):
        vec = np.asarray(vec, dtype=float).reshape(-1)
        if vec.size != n * n - 1:
            raise ValueError(f"expected {n * n - 1} parameters for n={n}, got {vec.size}")
        pairs = n * (n - 1) // 2
        return cls(n, vec[: n - 1], vec[n - 1 : n - 1 + pairs], vec[n - 1 + pairs :])

    @classmethod
    def zeros(cls, n):
        return cls.from_vector(n, np.zeros(n * n - 1))

    @classmethod
    def unit(cls, n, flat, value=1.0):
        """Single nonzero parameter at generator index ``flat`` (1-based)."""
        vec = np.zeros(n * n - 1)
        vec[flat - 1] = value
        return cls.from_vector(n, vec)

    def to_json(self):
        return {
            "n": self.n,
            "psi": self.psi.tolist(),
            "a": self.a.tolist(),
            "b": self.b.tolist(),
        }

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(int(obj["n"]), obj["psi"], obj["a"], obj["b"])
        except KeyError as exc:
            raise ValueError(f"parameter JSON is missing key {exc}") from None

    def __eq__(self, other):
        if not isinstance(other, SuParameters):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.vector(), other.vector())


def build_element(p):
    """Assemble the Hermitian traceless matrix described by ``p``."""
    n = p.n
    out = np.zeros((n, n), dtype=complex)
    out[np.diag_indices(n)] = np.append(p.psi, p.psi_last)
    rows, cols = np.triu_indices(n, 1)
    upper = p.a - 1j * p.b
    out[rows, cols] = upper
    out[cols, rows] = np.conj(upper)
    return out


@dataclass(frozen=True)
class ConditionResult:
    label: str
    description: str
    violation: float
    passed: bool


@dataclass(frozen=True)
class SuConditionReport:
    conditions: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.conditions)

    @property
    def failed(self):
        return tuple(c.label for c in self.conditions if not c.passed)

    def __str__(self):
        lines = []
        for c in self.conditions:
            status = "pass" if c.passed else "FAIL"
            lines.append(f"({c.label}) {c.description}: {status} (max violation {c.violation:.3g})")
        return "\n".join(lines)


def check_su_conditions(mat, tol=HERMITICITY_TOL):
    """Check the three Hermitian-traceless conditions on a square matrix.

    Returns a :class:`SuConditionReport` with the max violation per
    condition rather than raising.
    """
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    diag = np.diag(mat)
    real_diag = float(np.max(np.abs(diag.imag)))
    trace = float(abs(np.sum(diag)))
    rows, cols = np.triu_indices(mat.shape[0], 1)
    if rows.size:
        conj = float(np.max(np.abs(mat[rows, cols] - np.conj(mat[cols, rows]))))
    else:
        conj = 0.0
    return SuConditionReport(
        (
            ConditionResult("i", "diagonal entries are real", real_diag, real_diag <= tol),
            ConditionResult("ii", "trace vanishes", trace, trace <= tol),
            ConditionResult(
                "iii", "upper triangle is conjugate of lower triangle", conj, conj <= tol
            ),
        )
    )


def extract_params(mat, tol=HERMITICITY_TOL):
    """Read the ``n^2 - 1`` parameters off a Hermitian traceless matrix.

    Raises
    ------
    SuConditionError
        If ``mat`` violates any condition by more than ``tol``; the message
        names the failed conditions.
    """
    mat = np.asarray(mat, dtype=complex)
    report = check_su_conditions(mat, tol)
    if not report.passed:
        raise SuConditionError(
            "matrix is not in su(n): failed condition(s) "
            + ", ".join(f"({c})" for c in report.failed)
            + "\n"
            + str(report),
            report.failed,
        )
    n = mat.shape[0]
    rows, cols = np.triu_indices(n, 1)
    upper = mat[rows, cols]
    return SuParameters(n, mat.diagonal()[: n - 1].real, upper.real, -upper.imag)


def exponentiate(p, convention=Convention.UNITARY):
    """Map parameters to the group.

    ``UNITARY`` returns ``exp(iH)``, a special unitary matrix.
    ``LITERAL`` returns ``exp(H)``, which is Hermitian positive
    definite with unit determinant but not unitary unless ``H = 0``.
    """
    h = build_element(p)
    convention = Convention(convention)
    if convention is Convention.UNITARY:
        return expm(1j * h)
    return expm(h)
