"""Three-qubit braid operator generated by eight-vertex matrices.

The operator is the triple product

    B = (R(theta) x I2) (I2 x R(theta + theta')) (R(theta') x I2),

where each R is the unitary eight-vertex matrix at imaginary rapidity and
"x" is the tensor product; the left factor acts on qubits (1, 2), the
middle one on qubits (2, 3), and qubit 1 is the slowest-varying index.
B satisfies the braid relation: the same product with the (1,2) and (2,3)
embeddings exchanged gives the identical operator.

State vectors carry their eight amplitudes with the even-parity quadruple
first (parity = number of flipped qubits, written ``b``):

    index 0..3:  |111>, |1bb>, |b1b>, |bb1>
    index 4..7:  |bbb>, |b11>, |1b1>, |11b>

Because each R couples a two-qubit pair only to itself or to its double
flip, both quadruples are closed under B: the operator is block diagonal
in this ordering, and the two 4x4 blocks are entrywise equal (flipping all
three qubits of input and output leaves every matrix element unchanged).
The even block is available in closed form, two products of vertex-matrix
entries per amplitude; the dense tensor-product construction acts as the
independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .qseries import DEFAULT_TOL, QTolerance
from .vertex import ModelParams, eight_vertex_phases, matrix_from_quad

EVEN_LABELS = ("111", "1bb", "b1b", "bb1")
ODD_LABELS = ("bbb", "b11", "1b1", "11b")
BASIS_LABELS = EVEN_LABELS + ODD_LABELS

# Position of each basis state in the plain lexicographic (tensor-product)
# ordering, |111> = 0 ... |bbb> = 7 with qubit 1 slowest.
SUB_TO_LEX = (0, 3, 5, 6, 7, 4, 2, 1)

_NORM_TOL = 1e-8


@dataclass(frozen=True)
class BraidParams:
    """Eight-vertex parameters (p, q) and the two rapidities of B."""

    p: float
    q: float
    theta: float
    theta_prime: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.theta) and math.isfinite(self.theta_prime)):
            raise DomainError(
                f"rapidities must be finite, got ({self.theta}, {self.theta_prime})"
            )
        # Validates p and q once; per-rapidity reduction happens in model_at.
        ModelParams(self.p, self.q, 0.0)

    def model_at(self, theta: float) -> ModelParams:
        return ModelParams(self.p, self.q, theta)


@dataclass(frozen=True)
class BraidMixers:
    """Half-sums and half-differences of the vertex phases at the three rapidities.

    For each rapidity the pair (f_+, f_-) reproduces the matrix entries
    (a, d) and the pair (g_+, g_-) the entries (c, b).  Unprimed fields
    belong to theta, singly primed to theta', doubly primed to
    theta + theta'.
    """

    f_p: complex
    f_m: complex
    fp_p: complex
    fp_m: complex
    fpp_p: complex
    fpp_m: complex
    g_p: complex
    g_m: complex
    gp_p: complex
    gp_m: complex
    gpp_p: complex
    gpp_m: complex


@dataclass(frozen=True)
class BraidCoeffs:
    """Image amplitudes of one basis state under B.

    (alpha, beta, gamma, delta) are the amplitudes of the four same-parity
    basis states in their fixed quadruple order; state_index (1..4) names
    the input basis state within that quadruple.  Unitarity of B forces
    |alpha|^2 + |beta|^2 + |gamma|^2 + |delta|^2 = 1.
    """

    alpha: complex
    beta: complex
    gamma: complex
    delta: complex
    state_index: int
    parity: str = "even"

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha, self.beta, self.gamma, self.delta])

    def norm_sq(self) -> float:
        return float(
            abs(self.alpha) ** 2
            + abs(self.beta) ** 2
            + abs(self.gamma) ** 2
            + abs(self.delta) ** 2
        )


@dataclass(frozen=True)
class ProductState:
    """Un-entangled three-qubit state, one normalized amplitude pair per qubit."""

    x1: complex
    x1b: complex
    y1: complex
    y1b: complex
    z1: complex
    z1b: complex

    def __post_init__(self) -> None:
        for name, hi, lo in (
            ("x", self.x1, self.x1b),
            ("y", self.y1, self.y1b),
            ("z", self.z1, self.z1b),
        ):
            norm_sq = abs(hi) ** 2 + abs(lo) ** 2
            if abs(norm_sq - 1.0) > 1e-12:
                raise DomainError(
                    f"factor {name} is not normalized: |{name}1|^2 + |{name}1b|^2 = {norm_sq!r}"
                )

    @classmethod
    def normalized(
        cls, x1: complex, x1b: complex, y1: complex, y1b: complex,
        z1: complex, z1b: complex,
    ) -> "ProductState":
        """Build a ProductState, rescaling each qubit factor to unit norm."""
        pairs = []
        for name, hi, lo in (("x", x1, x1b), ("y", y1, y1b), ("z", z1, z1b)):
            norm = math.sqrt(abs(hi) ** 2 + abs(lo) ** 2)
            if norm == 0.0:
                raise DomainError(f"factor {name} is identically zero")
            pairs.extend((hi / norm, lo / norm))
        return cls(*pairs)


def basis_state(label_or_index: str | int) -> np.ndarray:
    """Unit vector for a basis label ('111', '1bb', ...) or index 0..7."""
    if isinstance(label_or_index, str):
        try:
            k = BASIS_LABELS.index(label_or_index)
        except ValueError:
            raise DomainError(
                f"unknown basis label {label_or_index!r}; expected one of {BASIS_LABELS}"
            ) from None
    else:
        k = label_or_index
        if not 0 <= k < 8:
            raise DomainError(f"basis index must be in 0..7, got {k}")
    vec = np.zeros(8, dtype=complex)
    vec[k] = 1.0
    return vec


def product_state_vector(ps: ProductState) -> np.ndarray:
    """Expand a product state into its eight basis amplitudes."""
    amp = {
        "1": (ps.x1, ps.y1, ps.z1),
        "b": (ps.x1b, ps.y1b, ps.z1b),
    }
    vec = np.empty(8, dtype=complex)
    for k, label in enumerate(BASIS_LABELS):
        vec[k] = amp[label[0]][0] * amp[label[1]][1] * amp[label[2]][2]
    return vec


def check_normalized(state: np.ndarray) -> np.ndarray:
    """Validate an 8-amplitude state vector; returns it as a complex array."""
    state = np.asarray(state, dtype=complex)
    if state.shape != (8,):
        raise DomainError(f"state must have shape (8,), got {state.shape}")
    norm_sq = float(np.sum(np.abs(state) ** 2))
    if abs(norm_sq - 1.0) > _NORM_TOL:
        raise DomainError(f"state is not normalized: |s|^2 = {norm_sq!r}")
    return state


def mixers(bp: BraidParams, tol: QTolerance = DEFAULT_TOL) -> BraidMixers:
    """Vertex-phase half-sums/differences at theta, theta' and theta + theta'."""
    qt = eight_vertex_phases(bp.model_at(bp.theta), tol)
    qp = eight_vertex_phases(bp.model_at(bp.theta_prime), tol)
    qs = eight_vertex_phases(bp.model_at(bp.theta + bp.theta_prime), tol)
    return BraidMixers(
        f_p=qt.a, f_m=qt.d, fp_p=qp.a, fp_m=qp.d, fpp_p=qs.a, fpp_m=qs.d,
        g_p=qt.c, g_m=qt.b, gp_p=qp.c, gp_m=qp.b, gpp_p=qs.c, gpp_m=qs.b,
    )


def coeff_quad(entries, entries_prime, entries_sum, i: int):
    """Closed-form image amplitudes of the i-th same-parity basis state.

    Each ``entries*`` argument is the tuple (a, d, c, b) of vertex-matrix
    entries at rapidity theta, theta' and theta + theta' respectively.
    Each amplitude is a sum of two triple products of such entries, one
    per path through the three two-qubit factors of B.  The forms are
    re-derived directly from the operator product and are continuously
    cross-checked against the dense construction in the test suite.

    Works elementwise when handed equal-length numpy arrays instead of
    scalars, which is how the sweep module evaluates whole grid rows.
    """
    a, d, c, b = entries
    a1, d1, c1, b1 = entries_prime
    a2, d2, c2, b2 = entries_sum
    if i == 1:
        return (
            a * a1 * a2 + d * d1 * c2,
            c * a1 * d2 + b * d1 * b2,
            b * a1 * d2 + c * d1 * b2,
            d * a1 * a2 + a * d1 * c2,
        )
    if i == 2:
        return (
            a * c1 * d2 + d * b1 * b2,
            c * c1 * a2 + b * b1 * c2,
            b * c1 * a2 + c * b1 * c2,
            d * c1 * d2 + a * b1 * b2,
        )
    if i == 3:
        return (
            a * b1 * d2 + d * c1 * b2,
            c * b1 * a2 + b * c1 * c2,
            b * b1 * a2 + c * c1 * c2,
            d * b1 * d2 + a * c1 * b2,
        )
    if i == 4:
        return (
            d * a1 * c2 + a * d1 * a2,
            b * a1 * b2 + c * d1 * d2,
            c * a1 * b2 + b * d1 * d2,
            a * a1 * c2 + d * d1 * a2,
        )
    raise DomainError(f"basis state index must be 1..4, got {i}")


def coeffs_from_mixers(m: BraidMixers, i: int) -> BraidCoeffs:
    """Image amplitudes of the i-th basis state from precomputed mixers."""
    quad = coeff_quad(
        (m.f_p, m.f_m, m.g_p, m.g_m),
        (m.fp_p, m.fp_m, m.gp_p, m.gp_m),
        (m.fpp_p, m.fpp_m, m.gpp_p, m.gpp_m),
        i,
    )
    return BraidCoeffs(*quad, state_index=i)


def braid_coeffs(bp: BraidParams, i: int, tol: QTolerance = DEFAULT_TOL) -> BraidCoeffs:
    """Closed-form amplitudes of B applied to the i-th even basis state.

    By the all-flip symmetry the same four numbers are the amplitudes of
    the i-th odd basis state's image on the odd quadruple.
    """
    return coeffs_from_mixers(mixers(bp, tol), i)


def braid_even_block(bp: BraidParams, tol: QTolerance = DEFAULT_TOL) -> np.ndarray:
    """4x4 closed-form block of B; column i-1 is braid_coeffs(bp, i)."""
    m = mixers(bp, tol)
    cols = [coeffs_from_mixers(m, i).as_array() for i in (1, 2, 3, 4)]
    return np.column_stack(cols)


def _lex_matrix(bp: BraidParams, tol: QTolerance) -> np.ndarray:
    """Dense B in plain lexicographic ordering via explicit tensor products."""
    eye2 = np.eye(2, dtype=complex)
    r_t = matrix_from_quad(eight_vertex_phases(bp.model_at(bp.theta), tol))
    r_s = matrix_from_quad(
        eight_vertex_phases(bp.model_at(bp.theta + bp.theta_prime), tol)
    )
    r_p = matrix_from_quad(eight_vertex_phases(bp.model_at(bp.theta_prime), tol))
    return np.kron(r_t, eye2) @ np.kron(eye2, r_s) @ np.kron(r_p, eye2)


def braid_matrix(bp: BraidParams, tol: QTolerance = DEFAULT_TOL) -> np.ndarray:
    """Dense 8x8 braid operator in the parity-ordered basis.

    Built by explicit tensor-product embedding and two matrix products;
    block diagonal, with the odd block equal to the even block.  This is
    the brute-force oracle for the closed-form coefficients.
    """
    lex = _lex_matrix(bp, tol)
    order = np.array(SUB_TO_LEX)
    return lex[np.ix_(order, order)]


def braid_apply(
    bp: BraidParams, state: np.ndarray, tol: QTolerance = DEFAULT_TOL
) -> np.ndarray:
    """Apply the dense braid operator to a normalized 8-amplitude state."""
    state = check_normalized(state)
    return braid_matrix(bp, tol) @ state


def braid_apply_product(
    bp: BraidParams, ps: ProductState, tol: QTolerance = DEFAULT_TOL
) -> np.ndarray:
    """Apply B to a product state via the closed-form coefficient block."""
    block = braid_even_block(bp, tol)
    vec = product_state_vector(ps)
    out = np.empty(8, dtype=complex)
    out[:4] = block @ vec[:4]
    out[4:] = block @ vec[4:]
    return out


def verify_braid_relation(bp: BraidParams, tol: QTolerance = DEFAULT_TOL) -> float:
    """Max-norm residual of the braid relation at the given parameters.

    Compares R12(theta) R23(theta+theta') R12(theta') against
    R23(theta') R12(theta+theta') R23(theta) as dense 8x8 matrices.
    """
    eye2 = np.eye(2, dtype=complex)
    total = bp.theta + bp.theta_prime
    r = {
        t: matrix_from_quad(eight_vertex_phases(bp.model_at(t), tol))
        for t in (bp.theta, bp.theta_prime, total)
    }
    r12 = {t: np.kron(m, eye2) for t, m in r.items()}
    r23 = {t: np.kron(eye2, m) for t, m in r.items()}
    lhs = r12[bp.theta] @ r23[total] @ r12[bp.theta_prime]
    rhs = r23[bp.theta_prime] @ r12[total] @ r23[bp.theta]
    return float(np.max(np.abs(lhs - rhs)))
