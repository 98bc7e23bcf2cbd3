"""Unitary 6- and 8-vertex braid matrices and the 3-tangle they generate.

The pipeline, bottom to top:

* :mod:`braidtangle.qseries` -- q-Pochhammer infinite products;
* :mod:`braidtangle.vertex`  -- projector basis and the unitary two-qubit
  vertex matrices whose coefficients those products parametrize;
* :mod:`braidtangle.braid`   -- the three-qubit braid operator, in closed
  form and as a dense tensor-product construction;
* :mod:`braidtangle.tangle`  -- reduced density matrices, the spin-flip
  product and the 3-tangle (closed form and hyperdeterminant);
* :mod:`braidtangle.sweep`   -- two-parameter tau grids with CSV/SVG output;
* :mod:`braidtangle.cli`     -- the ``braidtangle`` command.
"""

from .braid import (
    BASIS_LABELS,
    EVEN_LABELS,
    ODD_LABELS,
    BraidCoeffs,
    BraidMixers,
    BraidParams,
    ProductState,
    basis_state,
    braid_apply,
    braid_apply_product,
    braid_coeffs,
    braid_even_block,
    braid_matrix,
    coeffs_from_mixers,
    mixers,
    product_state_vector,
    verify_braid_relation,
)
from .errors import (
    BraidTangleError,
    CapExceededError,
    DomainError,
    PoleError,
    SingularityError,
    UnitModulusError,
)
from .qseries import DEFAULT_TOL, QTolerance, partial_product, pochhammer, pochhammer_ratio
from .sweep import (
    AxisSpec,
    GridSpec,
    SweepResult,
    run_grid,
    sweep_pq,
    sweep_theta,
    write_csv,
    write_svg_heatmap,
)
from .tangle import (
    closed_rho_rho_tilde,
    hyperdeterminant,
    partial_trace,
    permute_qubits,
    reduced_density_12,
    rho_rho_tilde_eigen,
    spin_flip,
    tangle_even,
    tangle_generic,
)
from .vertex import (
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

__version__ = "0.1.0"
