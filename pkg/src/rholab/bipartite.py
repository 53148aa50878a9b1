"""Tensor-product states, entanglement detection, partial traces, and
local measurement on two-factor systems.

Index convention: a bipartite amplitude vector stores C[m, n] at flat index
m * dim_b + n, i.e. row-major with the a-factor index major.  This pins the
column (0, 1, 0, 0)^T for |z+>|z->, and np.kron on 1-D arrays reproduces it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .density import DensityOperator
from .errors import ShapeError, ValidationError
from .linalg import as_ket, as_square, hermitian_eig

KET_NORM_ATOL = 1e-12
BASIS_ATOL = 1e-10

# Singular values below this count as zero when deciding Schmidt rank;
# separates genuine rank from eigensolver noise at this scale.
SCHMIDT_RANK_TOL = 1e-9


@dataclass(frozen=True)
class BipartiteSpace:
    """Dimensions of the two tensor factors."""

    dim_a: int
    dim_b: int

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise ValidationError("factor dimensions must be at least 1")

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b


@dataclass(frozen=True)
class BipartiteKet:
    """A normalized pure state on a bipartite space."""

    space: BipartiteSpace
    amplitudes: np.ndarray

    def __init__(self, space: BipartiteSpace, amplitudes):
        amps = as_ket(amplitudes)
        if amps.size != space.dim:
            raise ShapeError(f"expected {space.dim} amplitudes, got {amps.size}")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > KET_NORM_ATOL:
            raise ValidationError(f"bipartite ket not normalized: |psi| = {norm!r}")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "amplitudes", amps)

    def coefficient_matrix(self) -> np.ndarray:
        """Amplitudes reshaped to C[m, n] over (a-index, b-index)."""
        return self.amplitudes.reshape(self.space.dim_a, self.space.dim_b)

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def density(self) -> DensityOperator:
        return DensityOperator(self.projector())


def product_state(a_ket, b_ket) -> BipartiteKet:
    """The product state with coefficients C[m, n] = A_m B_n."""
    a = as_ket(a_ket)
    b = as_ket(b_ket)
    for name, k in (("a", a), ("b", b)):
        norm = float(np.linalg.norm(k))
        if abs(norm - 1.0) > KET_NORM_ATOL:
            raise ValidationError(f"factor ket {name} not normalized: |k| = {norm!r}")
    return BipartiteKet(BipartiteSpace(a.size, b.size), np.kron(a, b))


def singlet() -> BipartiteKet:
    """The two-spin total-spin-zero state 2^{-1/2}(|+->-|-+>), unique up to phase."""
    amps = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / math.sqrt(2.0)
    return BipartiteKet(BipartiteSpace(2, 2), amps)


@dataclass(frozen=True)
class SchmidtForm:
    """Diagonal biorthogonal form sum_k c_k |a_k>|b_k> of a bipartite ket.

    Coefficients are positive and descending; only coefficients above
    SCHMIDT_RANK_TOL are kept, so `rank` certifies entanglement (rank 1
    if and only if the state is a product state).
    """

    coefficients: np.ndarray
    a_kets: tuple[np.ndarray, ...]
    b_kets: tuple[np.ndarray, ...]

    @property
    def rank(self) -> int:
        return int(self.coefficients.size)

    def reconstruct(self) -> np.ndarray:
        """Flat amplitudes of sum_k c_k |a_k>|b_k>."""
        dim = self.a_kets[0].size * self.b_kets[0].size
        amps = np.zeros(dim, dtype=complex)
        for c, a, b in zip(self.coefficients, self.a_kets, self.b_kets):
            amps += c * np.kron(a, b)
        return amps


def schmidt(k: BipartiteKet) -> SchmidtForm:
    """Schmidt decomposition via the Hermitian eigenproblem of C^dag C.

    The b-kets come from the eigenvectors of C^dag C; each coefficient is
    evaluated as the image norm |C v| rather than sqrt(eigenvalue), which
    is the same number but avoids the sqrt(eps) noise floor of the squared
    form, keeping the rank threshold meaningful.
    """
    c = k.coefficient_matrix()
    gram = c.conj().T @ c
    eig = hermitian_eig(gram)
    entries = []
    for idx in range(eig.eigenvalues.size):
        v = eig.eigenvectors[:, idx]
        image = c @ v
        sigma = float(np.linalg.norm(image))
        if sigma <= SCHMIDT_RANK_TOL:
            continue
        entries.append((sigma, image / sigma, v.conj()))
    entries.sort(key=lambda e: -e[0])
    return SchmidtForm(
        np.array([e[0] for e in entries]),
        tuple(e[1] for e in entries),
        tuple(e[2] for e in entries),
    )


def _space_for(op: np.ndarray, space: BipartiteSpace) -> np.ndarray:
    m = as_square(op)
    if m.shape[0] != space.dim:
        raise ShapeError(f"operator dimension {m.shape[0]} != {space.dim_a}x{space.dim_b}")
    return m


def partial_trace_b(op, space: BipartiteSpace) -> np.ndarray:
    """Trace out the b factor: (Tr^b op)_{mk} = sum_n op_{(m,n),(k,n)}."""
    m = _space_for(op, space)
    blocks = m.reshape(space.dim_a, space.dim_b, space.dim_a, space.dim_b)
    return np.einsum("mnkn->mk", blocks)


def partial_trace_a(op, space: BipartiteSpace) -> np.ndarray:
    """Trace out the a factor: (Tr^a op)_{nl} = sum_m op_{(m,n),(m,l)}."""
    m = _space_for(op, space)
    blocks = m.reshape(space.dim_a, space.dim_b, space.dim_a, space.dim_b)
    return np.einsum("mnml->nl", blocks)


def _product_factors(k: BipartiteKet) -> tuple[np.ndarray, np.ndarray]:
    form = schmidt(k)
    if form.rank != 1:
        raise ValidationError(f"expected a product state, got Schmidt rank {form.rank}")
    return form.a_kets[0], form.b_kets[0]


def overlap_residue(alpha: complex, psi1: BipartiteKet, beta: complex, psi2: BipartiteKet) -> np.ndarray:
    """Reduced a-side matrix of |psi><psi| for psi = alpha psi1 + beta psi2.

    psi1 = |F1>|X1> and psi2 = |F2>|X2> must be product states.  Evaluates
    the closed form

        |alpha|^2 P_F1 + |beta|^2 P_F2
            + (alpha conj(beta) <X2|X1> |F1><F2| + h.c.)

    and checks it against the partial trace of the outer product; the cross
    term vanishes exactly when the b-side overlap <X2|X1> is zero.
    """
    f1, x1 = _product_factors(psi1)
    f2, x2 = _product_factors(psi2)
    if psi1.space != psi2.space:
        raise ShapeError("both components must live on the same bipartite space")
    b_overlap = complex(np.vdot(x2, x1))
    cross = alpha * np.conj(beta) * b_overlap * np.outer(f1, f2.conj())
    closed = (
        abs(alpha) ** 2 * np.outer(f1, f1.conj())
        + abs(beta) ** 2 * np.outer(f2, f2.conj())
        + cross
        + cross.conj().T
    )

    psi = alpha * psi1.amplitudes + beta * psi2.amplitudes
    direct = partial_trace_b(np.outer(psi, psi.conj()), psi1.space)
    if float(np.max(np.abs(closed - direct))) > 1e-11:
        raise ArithmeticError("closed-form reduced matrix disagrees with partial trace")
    return closed


def _factor_basis(basis, dim: int) -> np.ndarray:
    kets = [as_ket(k) for k in basis]
    b = np.column_stack(kets)
    if b.shape[0] != dim or b.shape[1] != dim:
        raise ValidationError(
            f"basis must be complete: got {b.shape[1]} kets of dimension {b.shape[0]}, need {dim}"
        )
    dev = float(np.max(np.abs(b.conj().T @ b - np.eye(dim))))
    if dev > BASIS_ATOL:
        raise ValidationError(f"factor basis is not orthonormal: max deviation {dev:.3e}")
    return b


def _infer_space(d: DensityOperator, basis_a, basis_b) -> BipartiteSpace:
    if basis_a is not None:
        dim_a = as_ket(basis_a[0]).size
    elif basis_b is not None:
        dim_a = d.dim // as_ket(basis_b[0]).size
    else:
        raise ValidationError("at least one factor basis is required")
    if dim_a < 1 or d.dim % dim_a != 0:
        raise ShapeError(f"factor dimension {dim_a} does not divide full dimension {d.dim}")
    return BipartiteSpace(dim_a, d.dim // dim_a)


def local_measurement(d: DensityOperator, basis_a=None, basis_b=None) -> DensityOperator:
    """Projective measurement on one or both factors.

    Projectors are R_m x R_n built from the given bases; a missing basis
    means the identity on that factor.  The output is sum R rho R over the
    joint projector set.
    """
    space = _infer_space(d, basis_a, basis_b)
    a_projs = _factor_projectors(basis_a, space.dim_a)
    b_projs = _factor_projectors(basis_b, space.dim_b)
    out = np.zeros_like(d.matrix)
    for pa in a_projs:
        for pb in b_projs:
            r = np.kron(pa, pb)
            out += r @ d.matrix @ r
    return DensityOperator(out)


def _factor_projectors(basis, dim: int) -> list[np.ndarray]:
    if basis is None:
        return [np.eye(dim, dtype=complex)]
    b = _factor_basis(basis, dim)
    return [np.outer(b[:, m], b[:, m].conj()) for m in range(dim)]


def measurement_probabilities(d: DensityOperator, basis_a, basis_b) -> np.ndarray:
    """Joint outcome probabilities p[m, n] = Tr(rho R_m x R_n).

    Both bases must be complete, so the probabilities sum to 1.
    """
    space = _infer_space(d, basis_a, basis_b)
    ba = _factor_basis(basis_a, space.dim_a)
    bb = _factor_basis(basis_b, space.dim_b)
    probs = np.empty((space.dim_a, space.dim_b))
    for m in range(space.dim_a):
        for n in range(space.dim_b):
            joint = np.kron(ba[:, m], bb[:, n])
            probs[m, n] = float(np.vdot(joint, d.matrix @ joint).real)
    return probs


def no_signalling_check(d: DensityOperator, basis_a) -> tuple[np.ndarray, np.ndarray]:
    """Reduced b-side density before and after an a-side measurement.

    The two returned matrices are equal (to roundoff): a local measurement
    on a leaves the b observer's density operator unchanged.
    """
    space = _infer_space(d, basis_a, None)
    before = partial_trace_a(d.matrix, space)
    measured = local_measurement(d, basis_a=basis_a)
    after = partial_trace_a(measured.matrix, space)
    return before, after
