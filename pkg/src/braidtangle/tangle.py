"""Reduced density matrices, the spin-flip construction, and the 3-tangle.

The 3-tangle of a normalized three-qubit pure state is computed two ways:

* generically, as 4x the modulus of the 2x2x2 hyperdeterminant of the
  amplitude tensor (a degree-4 polynomial; 1 for the GHZ state, 0 for the
  W state and for every product state, invariant under permutations of
  the qubits);

* in closed form for single-parity states alpha |111> + beta |1bb> +
  gamma |b1b> + delta |bb1> (or the all-flipped quadruple), where it
  reduces to 16 |alpha beta gamma delta|.

The spin-flip route goes through the reduced density matrix rho of qubits
(1, 2): with rho~ = (sy x sy) conj(rho) (sy x sy), the product rho rho~
has at most two nonzero eigenvalues, 4|alpha delta|^2 and 4|beta gamma|^2,
whose square roots multiply to the closed-form tangle above.
"""

from __future__ import annotations

import numpy as np

from .braid import SUB_TO_LEX, BraidCoeffs, check_normalized
from .errors import DomainError

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])

# |gamma| or |delta| below this makes the ratio-form eigenvectors undefined.
DEGENERATE_THRESHOLD = 1e-12

_LEX_ORDER = np.array(SUB_TO_LEX)


def lex_amplitudes(state: np.ndarray) -> np.ndarray:
    """Reorder a parity-ordered 8-vector into plain lexicographic order."""
    state = np.asarray(state, dtype=complex)
    lex = np.empty(8, dtype=complex)
    lex[_LEX_ORDER] = state
    return lex


def permute_qubits(state: np.ndarray, order: tuple[int, int, int]) -> np.ndarray:
    """Rearrange the three qubit slots of a state vector.

    ``order[k]`` names the input qubit (1-based) that lands in output slot
    k.  Used to exercise permutation invariance of the 3-tangle.
    """
    if sorted(order) != [1, 2, 3]:
        raise DomainError(f"order must be a permutation of (1, 2, 3), got {order}")
    psi = lex_amplitudes(state).reshape(2, 2, 2)
    out_lex = np.transpose(psi, [o - 1 for o in order]).reshape(8)
    return out_lex[_LEX_ORDER]


def partial_trace(state: np.ndarray, traced: int = 3) -> np.ndarray:
    """Reduced density matrix of a pure state after tracing out one qubit.

    ``traced`` is 1, 2 or 3.  The remaining two qubits keep their relative
    order, giving a 4x4 matrix in the two-qubit basis (|11>, |1b>, |b1>,
    |bb>).
    """
    if traced not in (1, 2, 3):
        raise DomainError(f"traced qubit must be 1, 2 or 3, got {traced}")
    state = check_normalized(state)
    psi = lex_amplitudes(state).reshape(2, 2, 2)
    kept = [ax for ax in range(3) if ax != traced - 1]
    rearranged = np.transpose(psi, kept + [traced - 1]).reshape(4, 2)
    return rearranged @ rearranged.conj().T


def reduced_density_12(state: np.ndarray) -> np.ndarray:
    """Reduced density matrix of qubits (1, 2): partial trace over qubit 3."""
    return partial_trace(state, traced=3)


def spin_flip(rho: np.ndarray) -> np.ndarray:
    """Spin-flipped matrix (sy x sy) conj(rho) (sy x sy)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise DomainError(f"expected a 4x4 matrix, got shape {rho.shape}")
    syy = np.kron(SIGMA_Y, SIGMA_Y)
    return syy @ rho.conj() @ syy


def closed_rho_rho_tilde(bc: BraidCoeffs) -> np.ndarray:
    """Closed form of rho12 * spin_flip(rho12) for a single-parity state.

    Nonzero only on the diagonal and anti-diagonal of the two corner 2x2
    blocks; every entry is quartic in the amplitudes.
    """
    al, be, ga, de = bc.alpha, bc.beta, bc.gamma, bc.delta
    out = np.zeros((4, 4), dtype=complex)
    out[0, 0] = out[3, 3] = abs(al) ** 2 * abs(de) ** 2
    out[1, 1] = out[2, 2] = abs(be) ** 2 * abs(ga) ** 2
    out[0, 3] = abs(al) ** 2 * al * de.conjugate()
    out[3, 0] = abs(de) ** 2 * de * al.conjugate()
    out[1, 2] = abs(be) ** 2 * be * ga.conjugate()
    out[2, 1] = abs(ga) ** 2 * ga * be.conjugate()
    return 2.0 * out


def rho_rho_tilde_eigen(bc: BraidCoeffs) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and eigenvectors of rho12 * spin_flip(rho12), closed form.

    Returns ``(values, vectors)`` with ``values = [4|alpha delta|^2, 0,
    4|beta gamma|^2, 0]`` and ``vectors[:, k]`` the unit eigenvector for
    ``values[k]``; the first pair lives on the corner components (1, 4),
    the second on the inner components (2, 3).  When |delta| (or |gamma|)
    vanishes the corresponding 2x2 block of the product is zero, the
    ratio-form vectors are undefined, and the coordinate basis vectors of
    that block are returned instead.
    """
    al, be, ga, de = bc.alpha, bc.beta, bc.gamma, bc.delta
    values = np.array(
        [
            4.0 * (abs(al) * abs(de)) ** 2,
            0.0,
            4.0 * (abs(be) * abs(ga)) ** 2,
            0.0,
        ]
    )
    vectors = np.zeros((4, 4), dtype=complex)
    if abs(de) > DEGENERATE_THRESHOLD:
        ratio = al / de
        norm = np.sqrt(abs(ratio) ** 2 + 1.0)
        vectors[:, 0] = (ratio / norm, 0.0, 0.0, 1.0 / norm)
        vectors[:, 1] = (ratio / norm, 0.0, 0.0, -1.0 / norm)
    else:
        vectors[:, 0] = (1.0, 0.0, 0.0, 0.0)
        vectors[:, 1] = (0.0, 0.0, 0.0, 1.0)
    if abs(ga) > DEGENERATE_THRESHOLD:
        ratio = be / ga
        norm = np.sqrt(abs(ratio) ** 2 + 1.0)
        vectors[:, 2] = (0.0, ratio / norm, 1.0 / norm, 0.0)
        vectors[:, 3] = (0.0, ratio / norm, -1.0 / norm, 0.0)
    else:
        vectors[:, 2] = (0.0, 1.0, 0.0, 0.0)
        vectors[:, 3] = (0.0, 0.0, 1.0, 0.0)
    return values, vectors


def tangle_even(bc: BraidCoeffs) -> float:
    """3-tangle of a single-parity state: 16 |alpha beta gamma delta|."""
    return 16.0 * abs(bc.alpha * bc.beta * bc.gamma * bc.delta)


def hyperdeterminant(state: np.ndarray) -> complex:
    """2x2x2 hyperdeterminant of the amplitude tensor of an 8-vector.

    Degree-4 polynomial in the amplitudes; vanishes exactly on product
    states and on the W class.
    """
    state = np.asarray(state, dtype=complex)
    if state.shape != (8,):
        raise DomainError(f"state must have shape (8,), got {state.shape}")
    t = lex_amplitudes(state)
    a000, a001, a010, a011, a100, a101, a110, a111 = t
    d1 = (
        a000 ** 2 * a111 ** 2
        + a001 ** 2 * a110 ** 2
        + a010 ** 2 * a101 ** 2
        + a100 ** 2 * a011 ** 2
    )
    d2 = (
        a000 * a111 * a011 * a100
        + a000 * a111 * a101 * a010
        + a000 * a111 * a110 * a001
        + a011 * a100 * a101 * a010
        + a011 * a100 * a110 * a001
        + a101 * a010 * a110 * a001
    )
    d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100
    return d1 - 2.0 * d2 + 4.0 * d3


def tangle_generic(state: np.ndarray) -> float:
    """3-tangle of an arbitrary normalized three-qubit pure state."""
    state = check_normalized(state)
    return 4.0 * abs(hyperdeterminant(state))
