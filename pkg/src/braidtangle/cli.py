"""Command line interface.

Subcommands:

* ``coeffs``       -- vertex-matrix entries, phases and unitarity residual
* ``braid``        -- image of a basis or product state under the braid
                      operator, with its 3-tangle (closed form and
                      hyperdeterminant)
* ``sweep-theta``  -- tau over a (theta, theta') grid, CSV/SVG output
* ``sweep-pq``     -- tau over a (p, q) grid, CSV/SVG output
* ``verify``       -- seeded randomized battery of every algebraic
                      identity the library relies on

Exit codes: 0 success, 1 verification failure (or a strict sweep with
missing nodes), 2 usage or domain error.  Angles accept ``pi`` literals
such as ``pi/3`` or ``-2pi/3``.  All reports print 12 significant digits;
``--json`` emits the same fields as a single JSON object.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
import warnings

import numpy as np

from . import braid as braid_mod
from . import sweep as sweep_mod
from . import tangle as tangle_mod
from . import vertex as vertex_mod
from .errors import BraidTangleError, DomainError
from .qseries import DEFAULT_TOL, QTolerance

_PI_FORM = re.compile(
    r"^\s*([+-]?)(\d+\.?\d*|\.\d+)?\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*|\.\d+))?\s*$",
    re.IGNORECASE,
)


def parse_angle(text: str) -> float:
    """Parse a radian value: plain float, or 'pi', '-pi/3', '2pi/3', '0.5pi'."""
    try:
        return float(text)
    except ValueError:
        pass
    m = _PI_FORM.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}")
    sign = -1.0 if m.group(1) == "-" else 1.0
    coefficient = float(m.group(2)) if m.group(2) else 1.0
    divisor = float(m.group(3)) if m.group(3) else 1.0
    return sign * coefficient * math.pi / divisor


def parse_product(text: str) -> braid_mod.ProductState:
    """Parse 'x1,x1b,y1,y1b,z1,z1b' with complex literals like 0.5-0.5j."""
    parts = text.split(",")
    if len(parts) != 6:
        raise DomainError(
            f"--product needs 6 comma-separated amplitudes, got {len(parts)}"
        )
    try:
        amplitudes = [complex(part.strip()) for part in parts]
    except ValueError:
        raise DomainError(f"cannot parse product amplitudes in {text!r}") from None
    return braid_mod.ProductState.normalized(*amplitudes)


def _sig(v: float) -> str:
    return f"{v:.12g}"


def _cfmt(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _tolerance(args: argparse.Namespace) -> QTolerance:
    if args.eps is None and args.max_terms is None:
        return DEFAULT_TOL
    return QTolerance(
        eps=DEFAULT_TOL.eps if args.eps is None else args.eps,
        max_terms=DEFAULT_TOL.max_terms if args.max_terms is None else args.max_terms,
    )


# ---------------------------------------------------------------------------
# coeffs


def cmd_coeffs(args: argparse.Namespace) -> int:
    tol = _tolerance(args)
    if args.six_vertex:
        if args.gamma is None:
            print("coeffs: --six-vertex requires --gamma", file=sys.stderr)
            return 2
        params = vertex_mod.SixVertexParams(gamma=args.gamma, theta=args.theta)
        r = vertex_mod.six_vertex_r(params)
        quad = vertex_mod.PhaseQuad(r[0, 0] + r[0, 3], r[0, 0] - r[0, 3],
                                    r[1, 1] + r[1, 2], r[1, 1] - r[1, 2])
        header = {"model": "six-vertex", "gamma": args.gamma, "theta": params.theta}
    else:
        if args.p is None or args.q is None:
            print("coeffs: --p and --q are required (or use --six-vertex)", file=sys.stderr)
            return 2
        params = vertex_mod.ModelParams(p=args.p, q=args.q, theta=args.theta)
        quad = vertex_mod.eight_vertex_phases(params, tol)
        r = vertex_mod.matrix_from_quad(quad)
        header = {"model": "eight-vertex", "p": args.p, "q": args.q, "theta": params.theta}
    residual = float(np.max(np.abs(r.conj().T @ r - np.eye(4))))
    psi_p, psi_m, phi_p, phi_m = vertex_mod.phase_angles(quad)

    if args.json:
        payload = dict(header)
        payload.update(
            a=_pair(quad.a), b=_pair(quad.b), c=_pair(quad.c), d=_pair(quad.d),
            apd=_pair(quad.apd), amd=_pair(quad.amd),
            cpb=_pair(quad.cpb), cmb=_pair(quad.cmb),
            psi_plus=psi_p, psi_minus=psi_m, phi_plus=phi_p, phi_minus=phi_m,
            unitarity_residual=residual,
        )
        print(json.dumps(payload, sort_keys=True))
        return 0

    print("  ".join(f"{k} = {_sig(v) if isinstance(v, float) else v}"
                    for k, v in header.items()))
    for name, value in (("a", quad.a), ("b", quad.b), ("c", quad.c), ("d", quad.d)):
        print(f"{name}   = {_cfmt(value)}")
    for name, value in (("a+d", quad.apd), ("a-d", quad.amd),
                        ("c+b", quad.cpb), ("c-b", quad.cmb)):
        print(f"{name} = {_cfmt(value)}")
    print(f"Psi+ = {_sig(psi_p)}  Psi- = {_sig(psi_m)}")
    print(f"Phi+ = {_sig(phi_p)}  Phi- = {_sig(phi_m)}")
    print(f"unitarity residual = {residual:.6e}")
    return 0


# ---------------------------------------------------------------------------
# braid


def cmd_braid(args: argparse.Namespace) -> int:
    tol = _tolerance(args)
    bp = braid_mod.BraidParams(
        p=args.p, q=args.q, theta=args.theta, theta_prime=args.theta_prime
    )
    labels = braid_mod.BASIS_LABELS

    if args.product is not None:
        ps = parse_product(args.product)
        out = braid_mod.braid_apply_product(bp, ps, tol)
        state_desc = sweep_mod.state_label(ps)
        base = None
    else:
        k = labels.index(args.state)
        coeffs = braid_mod.braid_coeffs(bp, (k % 4) + 1, tol)
        out = np.zeros(8, dtype=complex)
        base = 0 if k < 4 else 4
        out[base:base + 4] = coeffs.as_array()
        state_desc = args.state

    norm_residual = abs(float(np.sum(np.abs(out) ** 2)) - 1.0)
    weight_even = float(np.sum(np.abs(out[:4]) ** 2))
    weight_odd = float(np.sum(np.abs(out[4:]) ** 2))
    if weight_even < 1e-12 or weight_odd < 1e-12:
        block_amps = out[:4] if weight_odd < 1e-12 else out[4:]
        tau_closed = 16.0 * abs(np.prod(block_amps))
    else:
        # 16|c1 c2 c3 c4| only applies to states confined to one parity block.
        tau_closed = None
    tau_hyper = tangle_mod.tangle_generic(out)

    if args.json:
        payload = {
            "p": bp.p, "q": bp.q, "theta": bp.theta, "theta_prime": bp.theta_prime,
            "state": state_desc,
            "amplitudes": {name: _pair(out[i]) for i, name in enumerate(labels)},
            "norm_residual": norm_residual,
            "tau_closed": tau_closed,
            "tau_hyperdeterminant": tau_hyper,
        }
        print(json.dumps(payload, sort_keys=True))
        return 0

    print(f"p = {_sig(bp.p)}  q = {_sig(bp.q)}  "
          f"theta = {_sig(bp.theta)}  theta' = {_sig(bp.theta_prime)}")
    print(f"input state: {state_desc}")
    if base is None:
        for i, name in enumerate(labels):
            print(f"  |{name}> : {_cfmt(out[i])}")
    else:
        for offset, tag in enumerate(("alpha", "beta", "gamma", "delta")):
            name = labels[base + offset]
            print(f"  {tag:5s} -> |{name}> : {_cfmt(out[base + offset])}")
    print(f"norm residual = {norm_residual:.6e}")
    if tau_closed is None:
        print("tau (closed form)      = n/a (state spans both parity blocks)")
    else:
        print(f"tau (closed form)      = {_sig(tau_closed)}")
    print(f"tau (hyperdeterminant) = {_sig(tau_hyper)}")
    return 0


# ---------------------------------------------------------------------------
# sweeps


def _sweep_state(args: argparse.Namespace):
    if args.product is not None:
        return parse_product(args.product)
    # Odd labels share their tangles with the even partner by the all-flip
    # symmetry, so both map onto the even index 1..4.
    return braid_mod.BASIS_LABELS.index(args.state) % 4 + 1


def _finish_sweep(result, args: argparse.Namespace) -> int:
    sweep_mod.write_csv(result, args.out)
    if args.svg is not None:
        sweep_mod.write_svg_heatmap(result, args.svg)
    missing = int(np.count_nonzero(np.isnan(result.values)))
    present = result.values[~np.isnan(result.values)]
    lo = _sig(float(present.min())) if present.size else "n/a"
    hi = _sig(float(present.max())) if present.size else "n/a"
    print(f"wrote {args.out} ({result.values.size} nodes, {missing} missing); "
          f"tau in [{lo}, {hi}]")
    if args.svg is not None:
        print(f"wrote {args.svg}")
    if missing and args.strict:
        print(f"sweep: {missing} nodes failed (--strict)", file=sys.stderr)
        return 1
    return 0


def cmd_sweep_theta(args: argparse.Namespace) -> int:
    result = sweep_mod.sweep_theta(
        p=args.p,
        q=args.q,
        n=args.n,
        state=_sweep_state(args),
        theta_range=(args.theta_lo, args.theta_hi),
        theta_prime_range=(args.theta_prime_lo, args.theta_prime_hi),
        tol=_tolerance(args),
    )
    return _finish_sweep(result, args)


def cmd_sweep_pq(args: argparse.Namespace) -> int:
    result = sweep_mod.sweep_pq(
        theta=args.theta,
        theta_prime=args.theta_prime,
        p_range=(args.p_lo, args.p_hi),
        q_range=(args.q_lo, args.q_hi),
        n=args.n,
        state=_sweep_state(args),
        tol=_tolerance(args),
    )
    return _finish_sweep(result, args)


# ---------------------------------------------------------------------------
# verify


def _draw_cases(seed: int, cases: int) -> list[dict]:
    """Seeded random parameter points; numpy default_rng (PCG64) throughout."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(cases):
        out.append(
            {
                "p": rng.uniform(0.01, 0.9),
                "q": rng.uniform(0.05, 0.95),
                "theta": rng.uniform(-0.99 * math.pi, 0.99 * math.pi),
                "theta_prime": rng.uniform(-0.99 * math.pi, 0.99 * math.pi),
                "gamma": rng.uniform(0.1, 2.0),
            }
        )
    return out


def run_battery(seed: int, cases: int, tol: QTolerance = DEFAULT_TOL) -> list[dict]:
    """Every identity the library asserts, over seeded random parameters.

    Returns one record per check: name, max residual, limit, pass flag.
    """
    if cases < 1:
        raise DomainError(f"cases must be >= 1, got {cases}")
    eye4 = np.eye(4)
    eye8 = np.eye(8)
    draws = _draw_cases(seed, cases)
    residuals: dict[str, float] = {}

    def track(name: str, value: float) -> None:
        residuals[name] = max(residuals.get(name, 0.0), float(value))

    # Projector algebra is parameter free.
    projectors = vertex_mod.projector_basis()
    worst = 0.0
    for i, pi in enumerate(projectors):
        for j, pj in enumerate(projectors):
            expected = pi if i == j else 0.0
            worst = max(worst, float(np.max(np.abs(pi @ pj - expected))))
    track("projector-algebra", worst)
    track("projector-algebra", float(np.max(np.abs(sum(projectors) - eye4))))

    for case in draws:
        p, q = case["p"], case["q"]
        theta, theta_prime = case["theta"], case["theta_prime"]

        r6 = vertex_mod.six_vertex_r(
            vertex_mod.SixVertexParams(gamma=case["gamma"], theta=theta)
        )
        track("six-vertex-unitarity", np.max(np.abs(r6.conj().T @ r6 - eye4)))

        quad = vertex_mod.eight_vertex_phases(vertex_mod.ModelParams(p, q, theta), tol)
        r8 = vertex_mod.matrix_from_quad(quad)
        track("eight-vertex-unitarity", np.max(np.abs(r8.conj().T @ r8 - eye4)))
        r8_neg = vertex_mod.eight_vertex_r(vertex_mod.ModelParams(p, q, -theta), tol)
        track("canonical-factorization", np.max(np.abs(r8_neg @ r8 - eye4)))

        with warnings.catch_warnings():
            # 1/q may exceed 1/sqrt(p); the mirrored evaluation is still
            # well defined away from theta in {0, pi}.
            warnings.simplefilter("ignore")
            quad_inv = vertex_mod.eight_vertex_phases(
                vertex_mod.ModelParams(p, 1.0 / q, -theta), tol
            )
        track(
            "q-inversion-symmetry",
            max(
                abs(quad.apd - quad_inv.apd),
                abs(quad.amd - quad_inv.amd),
                abs(quad.cpb - quad_inv.cpb),
                abs(quad.cmb - quad_inv.cmb),
            ),
        )

        bp = braid_mod.BraidParams(p, q, theta, theta_prime)
        track("braid-relation", braid_mod.verify_braid_relation(bp, tol))

        dense = braid_mod.braid_matrix(bp, tol)
        track("bar-symmetry", np.max(np.abs(dense[4:, 4:] - dense[:4, :4])))
        track(
            "block-structure",
            max(np.max(np.abs(dense[:4, 4:])), np.max(np.abs(dense[4:, :4]))),
        )
        mix = braid_mod.mixers(bp, tol)
        for i in (1, 2, 3, 4):
            bc = braid_mod.coeffs_from_mixers(mix, i)
            track("closed-form-vs-dense", np.max(np.abs(bc.as_array() - dense[:4, i - 1])))
            track("normalization", abs(bc.norm_sq() - 1.0))

            tau = tangle_mod.tangle_even(bc)
            image = np.zeros(8, dtype=complex)
            image[:4] = dense[:4, i - 1]
            track("tangle-oracle", abs(tau - tangle_mod.tangle_generic(image)))
            track("tangle-range", max(0.0, -tau, tau - 1.0))

            rho = tangle_mod.reduced_density_12(image)
            product = rho @ tangle_mod.spin_flip(rho)
            track(
                "spin-flip-consistency",
                np.max(np.abs(product - tangle_mod.closed_rho_rho_tilde(bc))),
            )
            closed_values = tangle_mod.rho_rho_tilde_eigen(bc)[0]
            numeric = np.sort(np.abs(np.linalg.eigvals(product)))
            track(
                "eigenvalue-consistency",
                np.max(np.abs(np.sort(closed_values) - numeric)),
            )

        image = dense @ braid_mod.basis_state("111")
        tau = tangle_mod.tangle_generic(image)
        for order in ((1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)):
            permuted = tangle_mod.permute_qubits(image, order)
            track("permutation-invariance", abs(tangle_mod.tangle_generic(permuted) - tau))

    # Zero line: theta' = -theta collapses B to the identity.
    zero_worst = 0.0
    for theta in np.linspace(-math.pi, math.pi, 101):
        bc = braid_mod.braid_coeffs(
            braid_mod.BraidParams(0.1, 0.5, float(theta), float(-theta)), 1, tol
        )
        zero_worst = max(zero_worst, tangle_mod.tangle_even(bc))
    track("zero-line", zero_worst)

    limits = {
        "projector-algebra": 1e-14,
        "six-vertex-unitarity": 1e-9,
        "eight-vertex-unitarity": 1e-9,
        "canonical-factorization": 1e-9,
        "q-inversion-symmetry": 1e-9,
        "braid-relation": 1e-9,
        "bar-symmetry": 1e-12,
        "block-structure": 1e-12,
        "closed-form-vs-dense": 1e-10,
        "normalization": 1e-10,
        "tangle-oracle": 1e-10,
        "tangle-range": 1e-10,
        "spin-flip-consistency": 1e-12,
        "eigenvalue-consistency": 1e-9,
        "permutation-invariance": 1e-10,
        "zero-line": 1e-10,
    }
    return [
        {
            "name": name,
            "residual": residuals[name],
            "limit": limit,
            "passed": residuals[name] < limit,
        }
        for name, limit in limits.items()
    ]


def cmd_verify(args: argparse.Namespace) -> int:
    checks = run_battery(args.seed, args.cases, _tolerance(args))
    all_passed = all(c["passed"] for c in checks)
    if args.json:
        print(json.dumps(
            {"seed": args.seed, "cases": args.cases, "checks": checks,
             "passed": all_passed},
            sort_keys=True,
        ))
        return 0 if all_passed else 1
    print(f"seed = {args.seed}  cases = {args.cases}")
    for c in checks:
        status = "pass" if c["passed"] else "FAIL"
        print(f"{c['name']:26s} residual {c['residual']:.6e}  limit {c['limit']:.0e}  {status}")
    print("all checks passed" if all_passed else "SOME CHECKS FAILED")
    return 0 if all_passed else 1


# ---------------------------------------------------------------------------
# parser


def _add_tolerance_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--eps", type=float, default=None,
                     help="product truncation tolerance (default 1e-15)")
    sub.add_argument("--max-terms", type=int, default=None,
                     help="product factor cap (default 10000)")


def _add_state_flags(sub: argparse.ArgumentParser) -> None:
    group = sub.add_mutually_exclusive_group()
    group.add_argument("--state", choices=braid_mod.BASIS_LABELS, default="111",
                       help="basis state label (default 111)")
    group.add_argument("--product", default=None, metavar="X1,X1B,Y1,Y1B,Z1,Z1B",
                       help="comma-separated product-state amplitudes (complex "
                            "literals like 0.5-0.5j); each qubit factor is "
                            "normalized automatically")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidtangle",
        description="Unitary vertex-model braid matrices and 3-tangle scans.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeffs", help="vertex matrix entries and phases")
    c.add_argument("--p", type=float, default=None)
    c.add_argument("--q", type=float, default=None)
    c.add_argument("--theta", type=parse_angle, required=True)
    c.add_argument("--six-vertex", action="store_true",
                   help="use the ferroelectric six-vertex matrix")
    c.add_argument("--gamma", type=float, default=None,
                   help="six-vertex anisotropy (with --six-vertex)")
    c.add_argument("--json", action="store_true")
    _add_tolerance_flags(c)
    c.set_defaults(func=cmd_coeffs)

    b = sub.add_parser("braid", help="apply the braid operator to a state")
    b.add_argument("--p", type=float, required=True)
    b.add_argument("--q", type=float, required=True)
    b.add_argument("--theta", type=parse_angle, required=True)
    b.add_argument("--theta-prime", type=parse_angle, required=True)
    _add_state_flags(b)
    b.add_argument("--json", action="store_true")
    _add_tolerance_flags(b)
    b.set_defaults(func=cmd_braid)

    st = sub.add_parser("sweep-theta", help="tau over a (theta, theta') grid")
    st.add_argument("--p", type=float, required=True)
    st.add_argument("--q", type=float, required=True)
    st.add_argument("--n", type=int, required=True, help="grid points per axis")
    st.add_argument("--theta-lo", type=parse_angle, default=-math.pi)
    st.add_argument("--theta-hi", type=parse_angle, default=math.pi)
    st.add_argument("--theta-prime-lo", type=parse_angle, default=-math.pi)
    st.add_argument("--theta-prime-hi", type=parse_angle, default=math.pi)
    _add_state_flags(st)
    st.add_argument("--out", required=True, help="CSV output path")
    st.add_argument("--svg", default=None, help="optional SVG heatmap path")
    st.add_argument("--strict", action="store_true",
                    help="exit 1 if any node failed to evaluate")
    _add_tolerance_flags(st)
    st.set_defaults(func=cmd_sweep_theta)

    sp = sub.add_parser("sweep-pq", help="tau over a (p, q) grid")
    sp.add_argument("--theta", type=parse_angle, required=True)
    sp.add_argument("--theta-prime", type=parse_angle, required=True)
    sp.add_argument("--n", type=int, required=True, help="grid points per axis")
    sp.add_argument("--p-lo", type=float, default=0.01)
    sp.add_argument("--p-hi", type=float, default=0.9)
    sp.add_argument("--q-lo", type=float, default=0.05)
    sp.add_argument("--q-hi", type=float, default=0.95)
    _add_state_flags(sp)
    sp.add_argument("--out", required=True, help="CSV output path")
    sp.add_argument("--svg", default=None, help="optional SVG heatmap path")
    sp.add_argument("--strict", action="store_true",
                    help="exit 1 if any node failed to evaluate")
    _add_tolerance_flags(sp)
    sp.set_defaults(func=cmd_sweep_pq)

    v = sub.add_parser("verify", help="run the randomized identity battery")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cases", type=int, default=100)
    v.add_argument("--json", action="store_true")
    _add_tolerance_flags(v)
    v.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BraidTangleError as exc:
        print(f"braidtangle: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"braidtangle: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
