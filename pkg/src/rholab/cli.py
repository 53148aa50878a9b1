"""Command-line front end.

Three commands: `demo` replays the worked examples with PASS/FAIL checks
against pinned expected values, `evolve` integrates a scenario file and
writes a trajectory CSV, `sample` draws seeded singlet coincidences and
writes an event CSV.  Exit codes: 0 success, 2 usage or input error,
3 numerical-invariant failure during integration.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import __version__
from .bell import (
    DetectorPair,
    chsh_value,
    empirical_correlation,
    filter_inequality_demo,
    ghz_check,
    maximal_chsh_orientations,
    no_cloning_demo,
    sample_events,
    singlet_correlation,
    singlet_variance,
)
from .bipartite import no_signalling_check, partial_trace_a, singlet
from .channels import LindbladGenerator, evolve_lindblad
from .density import (
    DensityOperator,
    ProperMixture,
    gram_factor,
    mixture_to_density,
    purity,
    remix,
)
from .entropy import jump_entropy_rate, von_neumann_entropy
from .errors import IntegrationError, ValidationError
from .spin import UnitVector3, spin_half_basis, spin_one_set

DEFAULT_SEED = 42

# Expected values printed by the demos.  All are exact consequences of the
# implemented formulas; the quoted decimals match the standard results.
_EXPECTED = {
    "chsh_max": 2.0 * math.sqrt(2.0),  # Tsirelson value on the maximal orientations
    "p_full_span": 0.25,  # P(pi/2) for the spin filter
    "p_half_span_doubled": math.sin(math.pi / 8.0) ** 2,  # 2 P(pi/4) = 0.146...
    "nonunique_weights": (0.75, 0.25),  # remixed weights of the worked example
    "cloning_fidelity": 0.5,  # overlap^2 of linear clone with true clone
}


def _fmt(x: float) -> str:
    return f"{x:.17g}"


class _Checks:
    """Collects printed PASS/FAIL lines for one demo."""

    def __init__(self):
        self.ok = True

    def check(self, label: str, value: float, expected: float, tol: float) -> None:
        good = abs(value - expected) <= tol
        self.ok = self.ok and good
        status = "PASS" if good else "FAIL"
        print(f"  {label}: {_fmt(value)} expected {_fmt(expected)} [{status}]")

    def check_true(self, label: str, good: bool) -> None:
        self.ok = self.ok and good
        print(f"  {label} [{'PASS' if good else 'FAIL'}]")


def _demo_chsh() -> bool:
    checks = _Checks()
    a0, a1, b0, b1 = maximal_chsh_orientations()
    print("CHSH on a0=z, a1=x, b0=-(x+z)/sqrt2, b1=(x-z)/sqrt2")
    value = chsh_value(a0, a1, b0, b1)
    checks.check("<X>", value, _EXPECTED["chsh_max"], 1e-12)
    checks.check_true("violates the value-assignment bound |<X>| <= 2", abs(value) > 2.0)
    return checks.ok


def _demo_filter() -> bool:
    checks = _Checks()
    report = filter_inequality_demo()
    print("Spin filter: realist segment bound P(pi/2) <= 2 P(pi/4)")
    checks.check("P(pi/2)", report.p_full_span, _EXPECTED["p_full_span"], 1e-12)
    checks.check(
        "2 P(pi/4)", report.doubled_p_half_span, _EXPECTED["p_half_span_doubled"], 1e-12
    )
    checks.check_true("quantum law violates the bound", report.violates_realist_bound)
    return checks.ok


def _demo_ghz() -> bool:
    checks = _Checks()
    report = ghz_check()
    print("GHZ three-spin eigenvalue pattern on 2^{-1/2}(|---> - |+++>)")
    for label, expected in report.expected.items():
        checks.check(f"S_{label}", report.eigenvalues[label], expected, 1e-12)
    checks.check_true("max eigen-residual below 1e-12", report.max_residual <= 1e-12)
    print(
        "  value-assignment product a_x b_x c_x = "
        f"{report.classical_xxx_product:+.0f}, quantum S_xxx = "
        f"{report.eigenvalues['xxx']:+.0f}"
    )
    return checks.ok


def _demo_nocloning() -> bool:
    checks = _Checks()
    report = no_cloning_demo()
    print("Linear basis-cloning map applied to |x+>|blank>")
    checks.check("fidelity to true clone", report.fidelity, _EXPECTED["cloning_fidelity"], 1e-12)
    for i, f in enumerate(report.basis_fidelities):
        checks.check(f"basis ket {i} clone fidelity", f, 1.0, 1e-12)
    cross = max(abs(report.cross_amplitudes[0]), abs(report.cross_amplitudes[1]))
    checks.check("largest cross-term amplitude", cross, 0.0, 1e-12)
    return checks.ok


def _print_mixture(label: str, mixture: ProperMixture) -> None:
    print(f"  {label}:")
    for weight, ket in mixture.terms:
        amps = ", ".join(f"{c.real:+.6f}{c.imag:+.6f}i" for c in ket)
        print(f"    p={weight:.6f}  ket=({amps})")


def _demo_nonunique() -> bool:
    checks = _Checks()
    kets = spin_half_basis()
    print("Two distinct proper mixtures of one density operator")
    first = ProperMixture([(0.5, kets.x_plus), (0.5, kets.y_plus)])
    chi1 = (kets.x_plus + kets.y_plus) / math.sqrt(3.0)
    chi2 = kets.x_plus - kets.y_plus
    second = ProperMixture([(0.75, chi1), (0.25, chi2)])
    _print_mixture("mixture 1 (equal x+/y+ weights)", first)
    _print_mixture("mixture 2 (3/4, 1/4 on non-orthogonal kets)", second)
    rho1 = mixture_to_density(first).matrix
    rho2 = mixture_to_density(second).matrix
    deviation = float(np.max(np.abs(rho1 - rho2)))
    checks.check("max entrywise density deviation", deviation, 0.0, 1e-11)

    factor = gram_factor(first, [kets.z_plus, kets.z_minus])
    u = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
    remixed = remix(factor, u)
    weights = sorted(remixed.weights, reverse=True)
    expected = _EXPECTED["nonunique_weights"]
    checks.check("remixed weight 1", weights[0], expected[0], 1e-12)
    checks.check("remixed weight 2", weights[1], expected[1], 1e-12)
    deviation = float(np.max(np.abs(mixture_to_density(remixed).matrix - rho1)))
    checks.check("remixed density deviation", deviation, 0.0, 1e-11)
    return checks.ok


def _demo_singlet() -> bool:
    checks = _Checks()
    print("Singlet correlation, variance, and reduced density")
    z = UnitVector3(0.0, 0.0, 1.0)
    x = UnitVector3(1.0, 0.0, 0.0)
    checks.check("correlation at a=b=z", singlet_correlation(DetectorPair(z, z)), -1.0, 1e-12)
    checks.check("correlation at a=z, b=x", singlet_correlation(DetectorPair(z, x)), 0.0, 1e-12)
    checks.check("variance at a=b", singlet_variance(DetectorPair(z, z)), 0.0, 1e-12)
    checks.check("variance at a perp b", singlet_variance(DetectorPair(z, x)), 1.0, 1e-12)
    reduced = partial_trace_a(singlet().projector(), singlet().space)
    deviation = float(np.max(np.abs(reduced - np.eye(2) / 2.0)))
    checks.check("reduced density deviation from I/2", deviation, 0.0, 1e-12)
    return checks.ok


def _demo_spin1() -> bool:
    checks = _Checks()
    s = spin_one_set()
    print("Spin-1 operator identities")
    eye = np.eye(3)
    for axis in "xyz":
        dev = float(
            np.max(np.abs(s.spin_squared(axis) + s.projector(axis, 0) - eye))
        )
        checks.check(f"S_{axis}^2 + P_{axis}0 - I", dev, 0.0, 1e-12)
    partition = s.projector("x", 0) + s.projector("y", 0) + s.projector("z", 0)
    checks.check("P_x0 + P_y0 + P_z0 - I", float(np.max(np.abs(partition - eye))), 0.0, 1e-12)
    comm = s.sx2 @ s.sy2 - s.sy2 @ s.sx2
    checks.check("[S_x^2, S_y^2]", float(np.max(np.abs(comm))), 0.0, 1e-12)
    return checks.ok


def _demo_nosignal() -> bool:
    checks = _Checks()
    print("Reduced b-side density before/after an a-side measurement (singlet)")
    kets = spin_half_basis()
    for label, basis in (("z", (kets.z_plus, kets.z_minus)), ("x", (kets.x_plus, kets.x_minus))):
        before, after = no_signalling_check(singlet().density(), list(basis))
        dev = float(np.max(np.abs(before - after)))
        checks.check(f"a-basis {label}: max change of rho_b", dev, 0.0, 1e-11)
        dev_half = float(np.max(np.abs(before - np.eye(2) / 2.0)))
        checks.check(f"a-basis {label}: rho_b deviation from I/2", dev_half, 0.0, 1e-12)
    return checks.ok


_DEMOS = {
    "nonunique": _demo_nonunique,
    "chsh": _demo_chsh,
    "ghz": _demo_ghz,
    "filter": _demo_filter,
    "singlet": _demo_singlet,
    "spin1": _demo_spin1,
    "nocloning": _demo_nocloning,
    "nosignal": _demo_nosignal,
}


def cmd_demo(name: str) -> int:
    runner = _DEMOS.get(name)
    if runner is None:
        print(f"unknown demo {name!r}; choose from {', '.join(sorted(_DEMOS))}", file=sys.stderr)
        return 2
    ok = runner()
    print("overall: " + ("PASS" if ok else "FAIL"))
    return 0 if ok else 3


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    """Parsed open-system evolution scenario."""

    dim: int
    rho0: DensityOperator
    hamiltonian: np.ndarray
    jump_ops: tuple[np.ndarray, ...]
    t_end: float
    dt: float
    sample_every: int


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _complex_entry(value, where: str) -> complex:
    if not isinstance(value, (list, tuple)) or len(value) != 2 or not all(map(_is_number, value)):
        raise ScenarioError(f"{where}: complex entries must be [re, im] pairs, got {value!r}")
    return complex(float(value[0]), float(value[1]))


def _complex_matrix(value, dim: int, where: str) -> np.ndarray:
    if not isinstance(value, list) or len(value) != dim:
        raise ScenarioError(f"{where}: expected {dim} rows")
    out = np.empty((dim, dim), dtype=complex)
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != dim:
            raise ScenarioError(f"{where}: row {i} must have {dim} entries")
        for j, entry in enumerate(row):
            out[i, j] = _complex_entry(entry, f"{where}[{i}][{j}]")
    return out


def load_scenario(path: str) -> Scenario:
    """Parse and validate a scenario JSON document."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ScenarioError("scenario document must be a JSON object")

    required = ("dim", "rho0", "hamiltonian", "jump_ops", "t_end", "dt", "sample_every")
    for field in required:
        if field not in raw:
            raise ScenarioError(f"missing required field {field!r}")

    dim = raw["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ScenarioError(f"dim must be a positive integer, got {dim!r}")
    rho0_matrix = _complex_matrix(raw["rho0"], dim, "rho0")
    hamiltonian = _complex_matrix(raw["hamiltonian"], dim, "hamiltonian")
    if not isinstance(raw["jump_ops"], list):
        raise ScenarioError("jump_ops must be a list of matrices")
    jump_ops = tuple(
        _complex_matrix(op, dim, f"jump_ops[{k}]") for k, op in enumerate(raw["jump_ops"])
    )
    t_end = raw["t_end"]
    dt = raw["dt"]
    sample_every = raw["sample_every"]
    if not _is_number(t_end) or t_end < 0:
        raise ScenarioError(f"t_end must be a non-negative number, got {t_end!r}")
    if not _is_number(dt) or dt <= 0:
        raise ScenarioError(f"dt must be a positive number, got {dt!r}")
    if not isinstance(sample_every, int) or isinstance(sample_every, bool) or sample_every < 1:
        raise ScenarioError(f"sample_every must be a positive integer, got {sample_every!r}")

    try:
        rho0 = DensityOperator(rho0_matrix)
        generator = LindbladGenerator(hamiltonian, jump_ops)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc
    del generator
    return Scenario(
        dim=dim,
        rho0=rho0,
        hamiltonian=hamiltonian,
        jump_ops=jump_ops,
        t_end=float(t_end),
        dt=float(dt),
        sample_every=sample_every,
    )


@dataclass(frozen=True)
class TrajectoryRow:
    t: float
    trace_re: float
    purity: float
    entropy_nats: float
    min_eigenvalue: float
    entropy_production: float


TRAJECTORY_HEADER = "t,trace_re,purity,entropy_nats,min_eigenvalue,entropy_production"


def trajectory_rows(scenario: Scenario) -> list[TrajectoryRow]:
    generator = LindbladGenerator(scenario.hamiltonian, scenario.jump_ops)
    samples = evolve_lindblad(
        generator,
        scenario.rho0,
        scenario.t_end,
        scenario.dt,
        sample_every=scenario.sample_every,
    )
    rows = []
    for sample in samples:
        rows.append(
            TrajectoryRow(
                t=sample.time,
                trace_re=sample.raw_trace,
                purity=purity(sample.state),
                entropy_nats=von_neumann_entropy(sample.state),
                min_eigenvalue=sample.min_eigenvalue,
                entropy_production=jump_entropy_rate(sample.state, scenario.jump_ops),
            )
        )
    return rows


def cmd_evolve(scenario_path: str, output_path: str) -> int:
    try:
        scenario = load_scenario(scenario_path)
    except ScenarioError as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return 2
    try:
        rows = trajectory_rows(scenario)
    except IntegrationError as exc:
        print(f"integration failure: {exc}", file=sys.stderr)
        return 3
    with open(output_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(TRAJECTORY_HEADER + "\n")
        for row in rows:
            fh.write(
                ",".join(
                    _fmt(v)
                    for v in (
                        row.t,
                        row.trace_re,
                        row.purity,
                        row.entropy_nats,
                        row.min_eigenvalue,
                        row.entropy_production,
                    )
                )
                + "\n"
            )
    print(f"wrote {len(rows)} samples to {output_path}")
    return 0


EVENT_HEADER = "a_x,a_y,a_z,b_x,b_y,b_z,outcome_a,outcome_b"


def _parse_vector(text: str, label: str) -> UnitVector3:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValidationError(f"{label} must be three comma-separated numbers, got {text!r}")
    try:
        values = [float(p) for p in parts]
    except ValueError as exc:
        raise ValidationError(f"{label}: {exc}") from exc
    return UnitVector3(*values)


def cmd_sample(a_text: str, b_text: str, n: int, seed: int, output_path: str) -> int:
    try:
        a = _parse_vector(a_text, "--a")
        b = _parse_vector(b_text, "--b")
        if n < 1:
            raise ValidationError(f"--n must be at least 1, got {n}")
        events = sample_events(DetectorPair(a, b), n, seed)
    except ValidationError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    empirical = empirical_correlation(events)
    analytic = -a.dot(b)
    with open(output_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# seed={seed} n={n}\n")
        fh.write(EVENT_HEADER + "\n")
        for e in events:
            fh.write(
                f"{_fmt(e.a.nx)},{_fmt(e.a.ny)},{_fmt(e.a.nz)},"
                f"{_fmt(e.b.nx)},{_fmt(e.b.ny)},{_fmt(e.b.nz)},"
                f"{e.outcome_a},{e.outcome_b}\n"
            )
        fh.write(
            f"# summary empirical_correlation={_fmt(empirical)} "
            f"analytic_correlation={_fmt(analytic)}\n"
        )
    print(
        f"wrote {n} events to {output_path}; empirical correlation {_fmt(empirical)}, "
        f"analytic {_fmt(analytic)}"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rholab",
        description="Density-operator laboratory: worked-example demos, "
        "open-system evolution, and singlet sampling.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    demo = sub.add_parser("demo", help="run a worked-example demo with PASS/FAIL checks")
    demo.add_argument("name", help=f"one of: {', '.join(sorted(_DEMOS))}")

    evolve = sub.add_parser("evolve", help="integrate a scenario file and write a trajectory CSV")
    evolve.add_argument("--scenario", required=True, help="path to the scenario JSON file")
    evolve.add_argument("--out", required=True, help="path for the trajectory CSV")

    sample = sub.add_parser("sample", help="draw singlet coincidences and write an event CSV")
    sample.add_argument("--a", required=True, help="detector a orientation as x,y,z")
    sample.add_argument("--b", required=True, help="detector b orientation as x,y,z")
    sample.add_argument("--n", required=True, type=int, help="number of events")
    sample.add_argument("--seed", type=int, default=DEFAULT_SEED, help="RNG seed (default 42)")
    sample.add_argument("--out", required=True, help="path for the event CSV")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help/--version exit 0; usage errors exit 2
        return int(exc.code or 0)
    if args.command == "demo":
        return cmd_demo(args.name)
    if args.command == "evolve":
        return cmd_evolve(args.scenario, args.out)
    if args.command == "sample":
        return cmd_sample(args.a, args.b, args.n, args.seed, args.out)
    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
