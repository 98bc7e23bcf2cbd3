"""Projector basis and unitary two-qubit vertex matrices.

The 4x4 matrices built here act on a two-qubit space with basis ordering
``(|11>, |1b>, |b1>, |bb>)``, where ``b`` marks the flipped single-qubit
state.  Every matrix has nonzero entries only on the diagonal and the
anti-diagonal,

    | a 0 0 d |
    | 0 c b 0 |
    | 0 b c 0 |
    | d 0 0 a |

and is a sum of four orthogonal projectors with coefficients (a+d), (a-d),
(c+b), (c-b).  Each coefficient has the factorized form f(z)/f(1/z) with
real-coefficient f; at imaginary rapidity, z = exp(i theta), every
coefficient is therefore a pure phase and the matrix is unitary, with
R(theta) R(-theta) equal to the identity.

Two families are provided: the ferroelectric six-vertex matrix, whose
coefficients are hyperbolic ratios in an anisotropy gamma, and the
eight-vertex matrix, whose coefficients are ratios of q-Pochhammer
products in an elliptic nome p and an asymmetry parameter q.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularityError, UnitModulusError
from .qseries import DEFAULT_TOL, QTolerance, pochhammer_ratio

# |denominator| below this counts as sitting on a pole.
SINGULAR_THRESHOLD = 1e-14
# A computed phase whose modulus deviates from 1 by more than this is a bug,
# not rounding; smaller deviations are renormalized away.
UNIT_MODULUS_TOL = 1e-8

PROJECTOR_LABELS = ("P1+", "P1-", "P2+", "P2-")


def canonical_angle(theta: float) -> float:
    """Reduce an angle modulo 2*pi into the canonical range (-pi, pi]."""
    t = math.remainder(theta, math.tau)
    if t <= -math.pi:
        t += math.tau
    return t


@dataclass(frozen=True)
class SixVertexParams:
    """Anisotropy gamma and rapidity theta of the ferroelectric matrix."""

    gamma: float
    theta: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.gamma) and math.isfinite(self.theta)):
            raise DomainError(
                f"gamma and theta must be finite, got ({self.gamma}, {self.theta})"
            )


@dataclass(frozen=True)
class ModelParams:
    """Elliptic nome p, asymmetry q and rapidity theta of an eight-vertex matrix.

    p must lie in (0, 1) for the infinite products to converge.  q may be
    any positive value other than 1; q = 1 puts a removable 0/0 into one
    coefficient prefactor at theta = 0 and is excluded outright.  theta is
    reduced into (-pi, pi] on construction (all coefficients are 2*pi
    periodic in theta).
    """

    p: float
    q: float
    theta: float

    def __post_init__(self) -> None:
        if not 0.0 < self.p < 1.0:
            raise DomainError(f"p must lie in (0, 1), got {self.p}")
        if not self.q > 0.0:
            raise DomainError(f"q must be positive, got {self.q}")
        if self.q == 1.0:
            raise DomainError("q = 1 is excluded (singular coefficient prefactor)")
        if not math.isfinite(self.theta):
            raise DomainError(f"theta must be finite, got {self.theta}")
        object.__setattr__(self, "theta", canonical_angle(self.theta))
        if self.q > self.p ** -0.5:
            # Denominator factors of the product ratios have zeros at
            # theta in {0, pi} once q exceeds 1/sqrt(p).
            warnings.warn(
                f"q={self.q} exceeds p^(-1/2)={self.p ** -0.5:.4g}; coefficient "
                "denominators approach zero near theta = 0 or pi",
                stacklevel=2,
            )


@dataclass(frozen=True)
class PhaseQuad:
    """The four unit-modulus projector coefficients (a+d, a-d, c+b, c-b)."""

    apd: complex
    amd: complex
    cpb: complex
    cmb: complex

    @property
    def a(self) -> complex:
        return (self.apd + self.amd) / 2.0

    @property
    def d(self) -> complex:
        return (self.apd - self.amd) / 2.0

    @property
    def c(self) -> complex:
        return (self.cpb + self.cmb) / 2.0

    @property
    def b(self) -> complex:
        return (self.cpb - self.cmb) / 2.0


def projector_basis() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """The four orthogonal symmetric projectors spanning the vertex matrices.

    Returned in the order P1+, P1-, P2+, P2- (see PROJECTOR_LABELS).  The
    first pair lives on the outer 2x2 corner block, the second pair on the
    inner block; entries are exactly 0 or +-1/2, the four matrices are
    idempotent, mutually orthogonal and sum to the identity.
    """
    p1p = np.zeros((4, 4))
    p1m = np.zeros((4, 4))
    p2p = np.zeros((4, 4))
    p2m = np.zeros((4, 4))
    p1p[0, 0] = p1p[3, 3] = p1p[0, 3] = p1p[3, 0] = 0.5
    p1m[0, 0] = p1m[3, 3] = 0.5
    p1m[0, 3] = p1m[3, 0] = -0.5
    p2p[1, 1] = p2p[2, 2] = p2p[1, 2] = p2p[2, 1] = 0.5
    p2m[1, 1] = p2m[2, 2] = 0.5
    p2m[1, 2] = p2m[2, 1] = -0.5
    return p1p, p1m, p2p, p2m


def matrix_from_quad(quad: PhaseQuad) -> np.ndarray:
    """Assemble the 4x4 vertex matrix from its projector coefficients."""
    p1p, p1m, p2p, p2m = projector_basis()
    return (
        quad.apd * p1p.astype(complex)
        + quad.amd * p1m
        + quad.cpb * p2p
        + quad.cmb * p2m
    )


def six_vertex_r(params: SixVertexParams) -> np.ndarray:
    """Unitary ferroelectric six-vertex matrix at imaginary rapidity.

    The corner-block coefficients are both 1; the inner-block coefficients
    are cosh((gamma - i theta)/2) / cosh((gamma + i theta)/2) and the
    analogous sinh ratio.  Raises :class:`SingularityError` when a
    denominator vanishes (gamma = 0 with theta = 0 for the sinh ratio,
    gamma = 0 with theta = +-pi for the cosh ratio).
    """
    half = 0.5 * complex(params.gamma, params.theta)
    half_conj = 0.5 * complex(params.gamma, -params.theta)
    sinh_den = cmath.sinh(half)
    cosh_den = cmath.cosh(half)
    if abs(sinh_den) < SINGULAR_THRESHOLD or abs(cosh_den) < SINGULAR_THRESHOLD:
        raise SingularityError(
            f"six-vertex coefficient pole at gamma={params.gamma}, theta={params.theta}"
        )
    ratio_c = cmath.cosh(half_conj) / cosh_den
    ratio_s = cmath.sinh(half_conj) / sinh_den
    return matrix_from_quad(PhaseQuad(1.0 + 0.0j, 1.0 + 0.0j, ratio_c, ratio_s))


def _force_unit_modulus(value: complex, label: str) -> complex:
    mod = abs(value)
    if abs(mod - 1.0) > UNIT_MODULUS_TOL:
        raise UnitModulusError(
            f"coefficient {label} has modulus {mod!r}, expected a pure phase"
        )
    return value / mod


def eight_vertex_phases(
    params: ModelParams, tol: QTolerance = DEFAULT_TOL
) -> PhaseQuad:
    """The four phase coefficients of the eight-vertex matrix.

    With z = exp(i theta) and nome p:

        a+-d  =  (-+ sqrt(p) z / q; p) (-+ sqrt(p) q / z; p)
                 ------------------------------------------
                 (-+ sqrt(p) / (q z); p) (-+ sqrt(p) q z; p)

        c+-b  =  sqrt(q/z) +- sqrt(z/q)     (-+ p z / q; p) (-+ p q / z; p)
                 ----------------------  *  ------------------------------
                 sqrt(q z) +- 1/sqrt(q z)   (-+ p / (q z); p) (-+ p q z; p)

    where the upper sign of each "+-" pairs with the lower sign of "-+".
    All four results are pure phases; each is renormalized to exact
    modulus 1 (deviations beyond UNIT_MODULUS_TOL raise
    :class:`UnitModulusError` instead of being hidden).
    """
    theta = params.theta
    p, q = params.p, params.q
    z = cmath.exp(1j * theta)
    zi = cmath.exp(-1j * theta)
    zh = cmath.exp(0.5j * theta)
    zhi = cmath.exp(-0.5j * theta)
    sp = math.sqrt(p)
    sq = math.sqrt(q)

    apd = pochhammer_ratio(-sp / q * z, -sp * q * zi, -sp / q * zi, -sp * q * z, p, tol)
    amd = pochhammer_ratio(sp / q * z, sp * q * zi, sp / q * zi, sp * q * z, p, tol)

    den_plus = sq * zh + zhi / sq
    den_minus = sq * zh - zhi / sq
    if abs(den_minus) < SINGULAR_THRESHOLD or abs(den_plus) < SINGULAR_THRESHOLD:
        raise SingularityError(
            f"prefactor denominator vanished at q={q}, theta={theta}"
        )
    cpb = (sq * zhi + zh / sq) / den_plus * pochhammer_ratio(
        -p / q * z, -p * q * zi, -p / q * zi, -p * q * z, p, tol
    )
    cmb = (sq * zhi - zh / sq) / den_minus * pochhammer_ratio(
        p / q * z, p * q * zi, p / q * zi, p * q * z, p, tol
    )

    return PhaseQuad(
        _force_unit_modulus(apd, "a+d"),
        _force_unit_modulus(amd, "a-d"),
        _force_unit_modulus(cpb, "c+b"),
        _force_unit_modulus(cmb, "c-b"),
    )


def eight_vertex_r(params: ModelParams, tol: QTolerance = DEFAULT_TOL) -> np.ndarray:
    """Unitary eight-vertex matrix at imaginary rapidity."""
    return matrix_from_quad(eight_vertex_phases(params, tol))


def phase_angles(quad: PhaseQuad) -> tuple[float, float, float, float]:
    """Principal arguments in (-pi, pi] of the four phase coefficients.

    Reporting convenience only; downstream computation always consumes the
    complex phases themselves, never unwrapped angles.
    """
    return (
        cmath.phase(quad.apd),
        cmath.phase(quad.amd),
        cmath.phase(quad.cpb),
        cmath.phase(quad.cmb),
    )
