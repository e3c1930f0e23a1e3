"""Command-line driver: ``scan`` (figure data as CSV), ``classify`` (report on a
density-matrix file) and ``root`` (x where S_f^A changes sign).

Exit status of ``classify``: 0 separability not excluded, 1 entanglement
certified, 2 input error.
"""

import argparse
import csv
import io
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .criteria import (
    classify,
    find_entropic_root,
    majorization_compare,
    ppt_test,
)
from .entropies import (
    DEFAULT_BATTERY,
    ExpForm,
    Tsallis,
    VonNeumann,
    normalized_gap,
    reduced_spectra,
    s_f,
    s_f_gap,
)
from .errors import ConfigError, NoSignChange, SeparabilityError
from .oracles import werner_xr_asymptote
from .states import (
    GhzWerner,
    PsiMixture,
    SingletPolarized,
    SingletProduct,
    StateFamily,
    WernerPopescu,
    normalize_subsystems,
    random_pure_state,
)
from .textio import read_density

FAMILIES = ("singlet-polarized", "singlet-product", "psi-mixture", "werner", "ghz-werner")
ENTROPIES = ("vn", "tsallis", "exp")
DEFAULT_Q = {
    "tsallis": tuple(f.q for f in DEFAULT_BATTERY if isinstance(f, Tsallis)),
    "exp": tuple(f.q for f in DEFAULT_BATTERY if isinstance(f, ExpForm)),
}

SCAN_COLUMNS = (
    "x", "entropy_name", "q", "p1", "p1A", "sigma1", "S_f", "S_fA", "Sbar_fA",
    "disorder_pass", "first_violation_index",
)


def fmt(value: float) -> str:
    """Locale-free float with 12 significant digits (negative zero printed as 0)."""
    value = float(value)
    if value == 0.0:
        value = 0.0
    return f"{value:.12g}"


@dataclass(frozen=True)
class ScanConfig:
    family: StateFamily
    x_start: float = 0.0
    x_stop: float = 1.0
    x_steps: int = 41
    battery: tuple = DEFAULT_BATTERY
    subsystem_a: tuple = (0,)

    def __post_init__(self):
        if not 0.0 <= self.x_start < self.x_stop <= 1.0:
            raise ConfigError(f"need 0 <= x-start < x-stop <= 1, got [{self.x_start}, {self.x_stop}]")
        if self.x_steps < 2:
            raise ConfigError("x-steps must be at least 2")
        if not self.family.parametric:
            raise ConfigError(f"{type(self.family).__name__} has no mixing parameter to scan")
        if not self.battery:
            raise ConfigError("empty entropy battery")

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(self.x_start, self.x_stop, self.x_steps)


def scan_rows(config: ScanConfig) -> list:
    """One row per (x, entropy, q), sorted by (x, entropy_name, q)."""
    rows = []
    for x in config.grid:
        rho = config.family.with_x(float(x)).density()
        spec, spec_a = reduced_spectra(rho, config.subsystem_a)
        sigma1 = ppt_test(rho, config.subsystem_a)
        verdict = majorization_compare(spec, spec_a)
        for f in config.battery:
            rows.append({
                "x": float(x),
                "entropy_name": f.name,
                "q": float(f.q),
                "p1": spec.p1,
                "p1A": spec_a.p1,
                "sigma1": sigma1,
                "S_f": s_f(spec, f),
                "S_fA": s_f_gap(spec, spec_a, f),
                "Sbar_fA": normalized_gap(spec, spec_a, f),
                "disorder_pass": verdict.is_more_mixed,
                "first_violation_index": verdict.first_violation_index,
            })
    rows.sort(key=lambda r: (r["x"], r["entropy_name"], r["q"]))
    return rows


def format_scan_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCAN_COLUMNS)
    for r in rows:
        writer.writerow([
            fmt(r["x"]), r["entropy_name"], fmt(r["q"]), fmt(r["p1"]), fmt(r["p1A"]),
            fmt(r["sigma1"]), fmt(r["S_f"]), fmt(r["S_fA"]), fmt(r["Sbar_fA"]),
            "true" if r["disorder_pass"] else "false",
            "" if r["first_violation_index"] is None else r["first_violation_index"],
        ])
    return buf.getvalue()


# --- flag handling ----------------------------------------------------------

def build_battery(entropies, qs) -> tuple:
    """vn ignores q; tsallis/exp take every --q, or their default q set when none given."""
    if not entropies:
        return DEFAULT_BATTERY
    battery = []
    for name in dict.fromkeys(entropies):
        if name == "vn":
            battery.append(VonNeumann())
        elif name == "tsallis":
            for q in qs or DEFAULT_Q["tsallis"]:
                if q <= 0:
                    raise ConfigError(f"Tsallis needs q > 0, got {q}")
                battery.append(Tsallis(q))
        elif name == "exp":
            battery.extend(ExpForm(q) for q in (qs or DEFAULT_Q["exp"]))
        else:
            raise ConfigError(f"unknown entropy {name!r}")
    return tuple(battery)


def _random_pair_with_overlap(r: float, seed: int):
    rng = np.random.Generator(np.random.Philox(seed))
    u = random_pure_state(rng, 2)
    u_perp = np.array([-u[1].conjugate(), u[0].conjugate()])
    phase = np.exp(2j * np.pi * rng.random())
    v = np.sqrt(r) * u * np.exp(2j * np.pi * rng.random()) + np.sqrt(1 - r) * phase * u_perp
    return tuple(u), tuple(v)


def build_family(args) -> tuple:
    """(family template at x = 0, default subsystem A)."""
    name = args.family
    try:
        if name == "singlet-polarized":
            return SingletPolarized(0.0), (0,)
        if name == "singlet-product":
            if args.seed is None:
                return SingletProduct.from_overlap(0.0, args.r), (0,)
            u, v = _random_pair_with_overlap(args.r, args.seed)
            return SingletProduct(0.0, u, v), (0,)
        if name == "psi-mixture":
            return PsiMixture.from_a2(0.0, args.a2), (0,)
        if name == "werner":
            return WernerPopescu(0.0), (0,)
        if name == "ghz-werner":
            m = args.n - 1 if args.m is None else args.m
            if not 1 <= m <= args.n - 1:
                raise ConfigError(f"need 1 <= m <= n-1, got m={m}, n={args.n}")
            return GhzWerner(0.0, args.d, args.n), tuple(range(m))
    except SeparabilityError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None
    raise ConfigError(f"unknown family {name!r}")


def parse_subsystem(text, dims=None) -> tuple:
    try:
        subs = tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError:
        raise ConfigError(f"bad --subsystem {text!r}; expected indices like '0' or '0,1'") from None
    if not subs:
        raise ConfigError("empty --subsystem")
    if dims is not None:
        try:
            subs = normalize_subsystems(dims, subs)
        except SeparabilityError as exc:
            raise ConfigError(str(exc)) from None
    return subs


def _family_and_subsystem(args):
    family, default_sub = build_family(args)
    sub = default_sub if args.subsystem is None else parse_subsystem(args.subsystem, family.dims)
    return family, sub


# --- subcommands -------------------------------------------------------------

def cmd_scan(args) -> int:
    family, sub = _family_and_subsystem(args)
    config = ScanConfig(
        family=family,
        x_start=args.x_start,
        x_stop=args.x_stop,
        x_steps=args.x_steps,
        battery=build_battery(args.entropy, args.q),
        subsystem_a=sub,
    )
    text = format_scan_csv(scan_rows(config))
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise ConfigError(f"cannot write {args.out}: {exc.strerror or exc}") from None
    else:
        sys.stdout.write(text)
    return 0


def report_lines(report) -> list:
    lines = [
        f"p1 = {fmt(report.p1)}",
        f"p1_A = {fmt(report.p1_A)}",
        f"p1_B = {fmt(report.p1_B)}",
        f"largest eigenvalue test (p1 <= p1_A): {'pass' if report.largest_eig_pass else 'FAIL'}",
        f"disorder criterion A: {'pass' if report.disorder_pass_A else 'FAIL'}",
        f"disorder criterion B: {'pass' if report.disorder_pass_B else 'FAIL'}",
        f"PPT minimum eigenvalue sigma1 = {fmt(report.ppt_min_eigenvalue)}",
        f"reduction operator minimum eigenvalue = {fmt(report.reduction_min_eigenvalue)}",
        "entropic S_f^A:",
    ]
    for (name, q), value in report.entropic_values.items():
        lines.append(f"  {name:8s} q={fmt(q):>6s}  {fmt(value)}")
    lines.append(f"verdict: {report.verdict}")
    return lines


def report_csv(report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("quantity", "q", "value"))
    for key in ("p1", "p1_A", "p1_B", "ppt_min_eigenvalue", "reduction_min_eigenvalue"):
        writer.writerow((key, "", fmt(getattr(report, key))))
    for key in ("largest_eig_pass", "disorder_pass_A", "disorder_pass_B", "entangled"):
        writer.writerow((key, "", "true" if getattr(report, key) else "false"))
    for (name, q), value in report.entropic_values.items():
        writer.writerow((f"S_fA:{name}", fmt(q), fmt(value)))
    return buf.getvalue()


def cmd_classify(args) -> int:
    rho = read_density(args.input)
    sub = parse_subsystem(args.subsystem or "0", rho.dims)
    report = classify(rho, sub, build_battery(args.entropy, args.q))
    print("\n".join(report_lines(report)))
    if args.out:
        try:
            Path(args.out).write_text(report_csv(report))
        except OSError as exc:
            raise ConfigError(f"cannot write {args.out}: {exc.strerror or exc}") from None
    return 1 if report.entangled else 0


def cmd_root(args) -> int:
    family, sub = _family_and_subsystem(args)
    battery = build_battery(args.entropy, args.q)
    status = 0
    for f in battery:
        try:
            xr = find_entropic_root(family, sub, f)
        except NoSignChange as exc:
            print(f"{f.label}: {exc}", file=sys.stderr)
            status = 1
            continue
        line = f"{f.name} q={fmt(f.q)} x_r={xr:.10f}"
        if args.family == "werner" and f.name in ("tsallis", "exp"):
            line += f" asymptote={werner_xr_asymptote(f.q, f.name):.10f}"
        print(line)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entsep", description="Generalized entropic separability criteria."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def entropy_flags(p):
        p.add_argument("--entropy", action="append", choices=ENTROPIES,
                       help="entropy family (repeatable); default: full battery")
        p.add_argument("--q", action="append", type=float,
                       help="entropic index (repeatable); applies to tsallis and exp")

    def family_flags(p):
        p.add_argument("--family", required=True, choices=FAMILIES)
        p.add_argument("--a2", type=float, default=0.8, help="|a|^2 for psi-mixture")
        p.add_argument("--r", type=float, default=1.0, help="|<u|v>|^2 for singlet-product")
        p.add_argument("--d", type=int, default=2, help="qudit dimension (ghz-werner)")
        p.add_argument("--n", type=int, default=3, help="number of qudits (ghz-werner)")
        p.add_argument("--m", type=int, default=None, help="size of subsystem A (ghz-werner)")
        p.add_argument("--seed", type=int, default=None,
                       help="random orientation of u, v for singlet-product")
        p.add_argument("--subsystem", default=None, help="indices forming subsystem A, e.g. 0 or 0,1")

    p_scan = sub.add_parser("scan", help="tabulate criteria along a state family")
    family_flags(p_scan)
    entropy_flags(p_scan)
    p_scan.add_argument("--x-start", type=float, default=0.0)
    p_scan.add_argument("--x-stop", type=float, default=1.0)
    p_scan.add_argument("--x-steps", type=int, default=41)
    p_scan.add_argument("--out", default=None, help="CSV output path (default stdout)")
    p_scan.set_defaults(func=cmd_scan)

    p_cls = sub.add_parser("classify", help="run every criterion on a density-matrix file")
    p_cls.add_argument("input")
    p_cls.add_argument("--subsystem", default=None)
    p_cls.add_argument("--out", default=None, help="also write the report as CSV")
    entropy_flags(p_cls)
    p_cls.set_defaults(func=cmd_classify)

    p_root = sub.add_parser("root", help="x where S_f^A changes sign")
    family_flags(p_root)
    entropy_flags(p_root)
    p_root.set_defaults(func=cmd_root)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SeparabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
