import cmath
import math
import warnings

import numpy as np
import pytest

from braidtangle.errors import DomainError, SingularityError
from braidtangle.qseries import QTolerance
from braidtangle.vertex import (
    ModelParams,
    PhaseQuad,
    SixVertexParams,
    canonical_angle,
    eight_vertex_phases,
    eight_vertex_r,
    matrix_from_quad,
    phase_angles,
    projector_basis,
    six_vertex_r,
)

# Frozen at p=0.1, q=0.5, theta=pi/3 after cross-checking against 200-term
# partial products evaluated in 40-digit arithmetic.
FROZEN_QUAD = PhaseQuad(
    apd=0.8114110157034773 + 0.5844759734968171j,
    amd=0.4084046386995185 - 0.9128009920506853j,
    cpb=0.8040595069521121 + 0.5945488283395448j,
    cmb=-0.20152721343552843 + 0.9794829157493821j,
)


def random_params(rng, count):
    for _ in range(count):
        yield (
            rng.uniform(0.01, 0.9),
            rng.uniform(0.05, 0.95),
            rng.uniform(-0.99 * math.pi, 0.99 * math.pi),
        )


# --------------------------------------------------------------------------
# projectors


def test_projector_entries_are_the_exact_half_matrices():
    p1p, p1m, p2p, p2m = projector_basis()
    assert np.array_equal(
        p1p, 0.5 * np.array([[1, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 1]])
    )
    assert np.array_equal(
        p1m, 0.5 * np.array([[1, 0, 0, -1], [0, 0, 0, 0], [0, 0, 0, 0], [-1, 0, 0, 1]])
    )
    assert np.array_equal(
        p2p, 0.5 * np.array([[0, 0, 0, 0], [0, 1, 1, 0], [0, 1, 1, 0], [0, 0, 0, 0]])
    )
    assert np.array_equal(
        p2m, 0.5 * np.array([[0, 0, 0, 0], [0, 1, -1, 0], [0, -1, 1, 0], [0, 0, 0, 0]])
    )


def test_projector_algebra():
    projectors = projector_basis()
    for i, pi in enumerate(projectors):
        for j, pj in enumerate(projectors):
            expected = pi if i == j else np.zeros((4, 4))
            assert np.max(np.abs(pi @ pj - expected)) < 1e-14
        assert np.array_equal(pi, pi.T)
    assert np.max(np.abs(sum(projectors) - np.eye(4))) == 0.0


# --------------------------------------------------------------------------
# angles and parameter validation


@pytest.mark.parametrize(
    "raw, expected",
    [
        (0.0, 0.0),
        (math.pi, math.pi),
        (-math.pi, math.pi),
        (3 * math.pi, math.pi),
        (2 * math.pi, 0.0),
        (2.5 * math.pi, 0.5 * math.pi),
        (-2.5 * math.pi, -0.5 * math.pi),
    ],
)
def test_canonical_angle(raw, expected):
    assert canonical_angle(raw) == pytest.approx(expected, abs=1e-12)
    assert -math.pi < canonical_angle(raw) <= math.pi


@pytest.mark.parametrize("p", [0.0, 1.0, -0.5, 1.5])
def test_model_params_rejects_bad_p(p):
    with pytest.raises(DomainError):
        ModelParams(p, 0.5, 0.0)


@pytest.mark.parametrize("q", [0.0, -1.0, 1.0])
def test_model_params_rejects_bad_q(q):
    with pytest.raises(DomainError):
        ModelParams(0.1, q, 0.0)


def test_model_params_reduces_theta():
    assert ModelParams(0.1, 0.5, 3 * math.pi).theta == pytest.approx(math.pi)
    assert ModelParams(0.1, 0.5, -math.pi).theta == pytest.approx(math.pi)


def test_model_params_warns_on_large_q():
    with pytest.warns(UserWarning):
        ModelParams(0.1, 4.0, 0.3)  # 1/sqrt(0.1) ~ 3.16


def test_six_vertex_params_must_be_finite():
    with pytest.raises(DomainError):
        SixVertexParams(math.inf, 0.0)
    with pytest.raises(DomainError):
        SixVertexParams(0.3, math.nan)


# --------------------------------------------------------------------------
# six-vertex


def test_six_vertex_identity_at_zero_rapidity():
    r = six_vertex_r(SixVertexParams(gamma=0.3, theta=0.0))
    assert np.max(np.abs(r - np.eye(4))) < 1e-15


def test_six_vertex_unitary():
    r = six_vertex_r(SixVertexParams(gamma=0.3, theta=1.0))
    assert np.max(np.abs(r.conj().T @ r - np.eye(4))) < 1e-12


def test_six_vertex_matches_direct_entry_formula():
    gamma, theta = 0.3, 1.0
    r = six_vertex_r(SixVertexParams(gamma=gamma, theta=theta))
    rc = cmath.cosh(0.5 * complex(gamma, -theta)) / cmath.cosh(0.5 * complex(gamma, theta))
    rs = cmath.sinh(0.5 * complex(gamma, -theta)) / cmath.sinh(0.5 * complex(gamma, theta))
    expected = np.array(
        [
            [1, 0, 0, 0],
            [0, (rc + rs) / 2, (rc - rs) / 2, 0],
            [0, (rc - rs) / 2, (rc + rs) / 2, 0],
            [0, 0, 0, 1],
        ],
        dtype=complex,
    )
    assert np.max(np.abs(r - expected)) < 1e-14


def test_six_vertex_singularities():
    with pytest.raises(SingularityError):
        six_vertex_r(SixVertexParams(gamma=0.0, theta=0.0))
    with pytest.raises(SingularityError):
        six_vertex_r(SixVertexParams(gamma=0.0, theta=math.pi))


# --------------------------------------------------------------------------
# eight-vertex phases


def test_phases_at_zero_rapidity_are_all_one():
    quad = eight_vertex_phases(ModelParams(0.1, 0.5, 0.0))
    for value in (quad.apd, quad.amd, quad.cpb, quad.cmb):
        assert abs(value - 1.0) < 1e-14
    assert abs(quad.a - 1.0) < 1e-14
    assert abs(quad.d) < 1e-14


def test_phases_at_pi():
    quad = eight_vertex_phases(ModelParams(0.1, 0.5, math.pi))
    assert abs(quad.apd - 1.0) < 1e-12
    assert abs(quad.amd - 1.0) < 1e-12
    assert abs(quad.cpb + 1.0) < 1e-12
    assert abs(quad.cmb + 1.0) < 1e-12
    assert abs(quad.c + 1.0) < 1e-12
    assert abs(quad.b) < 1e-12


def test_phases_frozen_regression_point():
    quad = eight_vertex_phases(ModelParams(0.1, 0.5, math.pi / 3))
    for got, expected in zip(
        (quad.apd, quad.amd, quad.cpb, quad.cmb),
        (FROZEN_QUAD.apd, FROZEN_QUAD.amd, FROZEN_QUAD.cpb, FROZEN_QUAD.cmb),
    ):
        assert abs(got - expected) < 1e-12
        assert abs(abs(got) - 1.0) < 1e-10


def test_phase_prefactor_singularity_near_q_one():
    params = ModelParams(0.1, 1.0 + 2e-16, 0.0)
    with pytest.raises(SingularityError):
        eight_vertex_phases(params)


def test_phases_respect_tolerance_cap():
    from braidtangle.errors import CapExceededError

    with pytest.raises(CapExceededError):
        eight_vertex_phases(ModelParams(0.9, 0.5, 1.0), QTolerance(max_terms=3))


# --------------------------------------------------------------------------
# eight-vertex matrix


def test_eight_vertex_identity_at_zero_rapidity():
    r = eight_vertex_r(ModelParams(0.1, 0.5, 0.0))
    assert np.max(np.abs(r - np.eye(4))) < 1e-14


def test_eight_vertex_sparsity_and_symmetry():
    r = eight_vertex_r(ModelParams(0.1, 0.5, 1.2))
    zero_positions = [
        (0, 1), (0, 2), (1, 0), (1, 3), (2, 0), (2, 3), (3, 1), (3, 2),
    ]
    for pos in zero_positions:
        assert r[pos] == 0.0
    assert r[0, 0] == r[3, 3]
    assert r[1, 1] == r[2, 2]
    assert r[0, 3] == r[3, 0]
    assert r[1, 2] == r[2, 1]


def test_eight_vertex_unitarity_and_factorization_at_a_point():
    r_pos = eight_vertex_r(ModelParams(0.1, 0.5, 1.2))
    r_neg = eight_vertex_r(ModelParams(0.1, 0.5, -1.2))
    assert np.max(np.abs(r_pos.conj().T @ r_pos - np.eye(4))) < 1e-10
    assert np.max(np.abs(r_pos @ r_neg - np.eye(4))) < 1e-10


def test_random_grid_invariants():
    rng = np.random.default_rng(1)
    eye = np.eye(4)
    for p, q, theta in random_params(rng, 100):
        quad = eight_vertex_phases(ModelParams(p, q, theta))
        r = matrix_from_quad(quad)
        assert np.max(np.abs(r.conj().T @ r - eye)) < 1e-9
        r_neg = eight_vertex_r(ModelParams(p, q, -theta))
        assert np.max(np.abs(r @ r_neg - eye)) < 1e-9
        # Each coefficient is a phase: conjugation inverts it.
        for w in (quad.apd, quad.amd, quad.cpb, quad.cmb):
            assert abs(w.conjugate() - 1.0 / w) < 1e-10
        # q -> 1/q with theta -> -theta reproduces the same coefficients
        # (1/q may sit beyond the proximity-warning bound; that is expected).
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            mirrored = eight_vertex_phases(ModelParams(p, 1.0 / q, -theta))
        assert abs(mirrored.apd - quad.apd) < 1e-9
        assert abs(mirrored.amd - quad.amd) < 1e-9
        assert abs(mirrored.cpb - quad.cpb) < 1e-9
        assert abs(mirrored.cmb - quad.cmb) < 1e-9


# --------------------------------------------------------------------------
# phase angles


def test_phase_angles_trivial_quads():
    assert phase_angles(PhaseQuad(1, 1, 1, 1)) == (0.0, 0.0, 0.0, 0.0)
    angles = phase_angles(PhaseQuad(1, 1, -1, -1))
    assert angles == (0.0, 0.0, math.pi, math.pi)


def test_phase_angles_round_trip():
    quad = eight_vertex_phases(ModelParams(0.1, 0.5, math.pi / 3))
    psi_p, psi_m, phi_p, phi_m = phase_angles(quad)
    assert abs(cmath.exp(1j * psi_p) - quad.apd) < 1e-12
    assert abs(cmath.exp(1j * psi_m) - quad.amd) < 1e-12
    assert abs(cmath.exp(1j * phi_p) - quad.cpb) < 1e-12
    assert abs(cmath.exp(1j * phi_m) - quad.cmb) < 1e-12
    for angle in (psi_p, psi_m, phi_p, phi_m):
        assert -math.pi < angle <= math.pi
