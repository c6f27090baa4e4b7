"""Invariant suites run by ``supauli verify``.

Each suite returns a :class:`CheckResult`; none of them raise on failure.
"""

from dataclasses import dataclass

import numpy as np

from . import basis_change, gellmann, pauli, sugroup

__all__ = ["CheckResult", "SUITES", "run_suite", "random_hermitian"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def __str__(self):
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def random_hermitian(dim, rng):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (a + a.conj().T) / 2


def orthogonality(m, tol=1e-12, **_):
    """``Tr(P^dagger Q) = 2^m [P == Q]`` for every pair of strings."""
    mats = np.stack([pauli.materialize(p) for p in pauli.enumerate_strings(m)])
    gram = np.einsum("aij,bij->ab", mats.conj(), mats)
    err = float(np.max(np.abs(gram - (2**m) * np.eye(len(mats)))))
    return CheckResult(
        "orthogonality", err <= tol, f"{len(mats)} strings, max Gram error {err:.3g}"
    )


def roundtrip(m, trials=100, seed=0, tol=1e-12, **_):
    """compose(decompose(M)) == M and extract(build(p)) == p on random inputs."""
    rng = np.random.default_rng(seed)
    dim = 2**m
    worst = 0.0
    for _ in range(trials):
        mat = random_hermitian(dim, rng)
        back = basis_change.compose(basis_change.fast_decompose(mat))
        worst = max(worst, float(np.max(np.abs(back - mat))))
    mismatched = 0
    for _ in range(trials):
        p = sugroup.SuParameters.from_vector(dim, rng.standard_normal(dim * dim - 1))
        if sugroup.extract_params(sugroup.build_element(p)) != p:
            mismatched += 1
    ok = worst <= tol and mismatched == 0
    return CheckResult(
        "roundtrip",
        ok,
        f"{trials} trials, max matrix error {worst:.3g}, parameter mismatches {mismatched}",
    )


def generator_pauli_matrix(m):
    """Coefficients of every generator over the non-identity strings.

    Row ``t`` is generator ``X_{t+1}``; column ``s`` is string ``s+1`` in
    canonical order (string 0, the identity, is dropped).
    """
    dim = 2**m
    out = np.zeros((dim * dim - 1, dim * dim - 1))
    for flat in range(1, dim * dim):
        vec = basis_change.generator_in_pauli(flat, dim).to_vector()
        out[flat - 1] = vec[1:].real
    return out


def rank(m, **_):
    dim = 2**m
    r = int(np.linalg.matrix_rank(generator_pauli_matrix(m)))
    want = dim * dim - 1
    return CheckResult("rank", r == want, f"rank {r} of {want}")


def identity_free(m, tol=1e-15, **_):
    dim = 2**m
    ident = "I" * m
    worst = max(
        abs(basis_change.generator_in_pauli(flat, dim)[ident]) for flat in range(1, dim * dim)
    )
    return CheckResult(
        "identity-free",
        worst <= tol,
        f"{dim * dim - 1} generators, max identity coefficient {worst:.3g}",
    )


def unitarity(m, trials=100, seed=0, tol=1e-10, **_):
    rng = np.random.default_rng(seed)
    dim = 2**m
    worst_u = worst_det = 0.0
    for _ in range(trials):
        p = sugroup.SuParameters.from_vector(dim, rng.standard_normal(dim * dim - 1))
        u = sugroup.exponentiate(p, sugroup.Convention.UNITARY)
        worst_u = max(worst_u, float(np.max(np.abs(u.conj().T @ u - np.eye(dim)))))
        worst_det = max(worst_det, float(abs(np.linalg.det(u) - 1)))
    return CheckResult(
        "unitarity",
        worst_u <= tol and worst_det <= tol,
        f"{trials} trials, max |U^dag U - I| {worst_u:.3g}, max |det U - 1| {worst_det:.3g}",
    )


def derivative(m, h=1e-5, tol=1e-4, **_):
    dim = 2**m
    worst = max(
        gellmann.derivative_check(gellmann.generator(flat, dim), h) for flat in range(1, dim * dim)
    )
    return CheckResult(
        "derivative", worst <= tol, f"{dim * dim - 1} generators, max error {worst:.3g} at h={h}"
    )


SUITES = {
    "orthogonality": orthogonality,
    "roundtrip": roundtrip,
    "rank": rank,
    "identity-free": identity_free,
    "unitarity": unitarity,
    "derivative": derivative,
}


def run_suite(name, m=3, **kwargs):
    """Run one suite, or every suite for ``name == "all"``."""
    if name == "all":
        return [fn(m, **kwargs) for fn in SUITES.values()]
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(
            f"unknown suite {name!r}; choose from {', '.join([*SUITES, 'all'])}"
        ) from None
    return [fn(m, **kwargs)]
