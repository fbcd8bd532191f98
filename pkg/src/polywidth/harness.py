"""Experiment harness: per-instance verification of the width bounds and the
vertex/facet count inequality, with CSV, JSON and SVG reporting.

For each configured instance the pipeline is: generate, enumerate facets
when feasible, move into sandwich position if needed (the unit ball inside,
the sqrt(n) ball outside; every verified inequality is scale-invariant, so
position is normalized by an exact scalar map once the radius ratio is
right), count faces, estimate both mean widths on one shared sphere sample,
then evaluate every check.

The final chain check composes the two explicit width bounds instead of
asserting any opaque absolute constant: each applicable bound is inverted
into a certified lower bound on the corresponding log-count, a side whose
log-count already exceeds dim/4 contributes that threshold directly, and
the product of the two lower bounds must not exceed log|V| * log|F|.
"""

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from .families import (MAX_ENUM_DIM, MAX_ENUM_VERTICES, FaceCounts,
                       FamilySpec, face_counts, generate,
                       with_enumerated_facets)
from .john import apply_transform, duality_gap, john_map, mvee_symmetric
from .polytope import circumradius, inradius, scale_polytope
from .spheremc import (Estimate, gauge_series, product_from_series,
                       sample_sphere, support_series, _mean_estimate)
from .svgplot import scatter_svg

DEFAULT_SAMPLES = 100_000
DEFAULT_SEED = 20240
DEFAULT_JOHN_TOL = 1e-7


@dataclass(frozen=True)
class BoundCheck:
    """Outcome of one explicit width bound: lhs <= rhs + 3 * std_error.

    ``applicable`` is False when the bound's hypothesis (log-count below
    dim/4) fails; the check then passes vacuously but the numbers are still
    reported.
    """

    lhs: float
    rhs: float
    margin: float
    applicable: bool
    passed: bool


def check_mean_support_bound(mstar: Estimate, radius: float,
                             num_vertices: int, dim: int) -> BoundCheck:
    """Mean support against R * (sqrt(4 log|V| / n) + 1/|V|).

    Applicable while log|V| < n/4; otherwise there is nothing to prove and
    the check is vacuous.
    """
    log_v = math.log(num_vertices)
    applicable = log_v < dim / 4.0
    rhs = radius * (math.sqrt(4.0 * log_v / dim) + 1.0 / num_vertices)
    margin = rhs + 3.0 * mstar.std_error - mstar.value
    return BoundCheck(mstar.value, rhs, margin, applicable,
                      (not applicable) or margin >= 0.0)


def check_mean_gauge_bound(mg: Estimate, inner_radius: float,
                           num_facets: int, dim: int) -> BoundCheck:
    """Mean gauge against (1/r) * (sqrt(4 log|F| / n) + 1/|F|).

    This is the support bound applied to the polar body: facets of P are
    its vertices and 1/r its circumradius.  Applicable while log|F| < n/4.
    """
    log_f = math.log(num_facets)
    applicable = log_f < dim / 4.0
    rhs = (1.0 / inner_radius) * (math.sqrt(4.0 * log_f / dim) + 1.0 / num_facets)
    margin = rhs + 3.0 * mg.std_error - mg.value
    return BoundCheck(mg.value, rhs, margin, applicable,
                      (not applicable) or margin >= 0.0)


@dataclass(frozen=True)
class ChainCheck:
    """Outcome of the composed count-product check.

    ``lhs`` is log|V| * log|F|; ``rhs`` multiplies one certified lower bound
    per side: (n/4) * ((M*_lo)/R - 1/|V|)^2 from the inverted support bound
    (and its polar twin for facets), or the threshold n/4 outright for a
    side whose log-count already exceeds it.  MC estimates enter through
    their 3-sigma lower confidence value, so ``rhs`` is conservative.
    """

    product_ok: bool
    sandwich_ok: bool
    chain_ok: bool
    lhs: float
    rhs: float
    mid_factor: float
    empirical_constant: float
    vertex_side_direct: bool
    facet_side_direct: bool
    passed: bool


def check_product_chain(num_vertices: int, num_facets: int, dim: int,
                        inner_radius: float, outer_radius: float,
                        mg: Estimate, mstar: Estimate, product: Estimate,
                        john_tol: float = DEFAULT_JOHN_TOL) -> ChainCheck:
    log_v = math.log(num_vertices)
    log_f = math.log(num_facets)
    lhs = log_v * log_f

    product_ok = product.value >= 1.0 - 3.0 * product.std_error
    ratio = inner_radius / outer_radius
    sandwich_ok = ratio >= (1.0 - 10.0 * john_tol) / math.sqrt(dim)

    vertex_direct = log_v >= dim / 4.0
    if vertex_direct:
        lower_v = dim / 4.0
    else:
        mstar_lo = mstar.value - 3.0 * mstar.std_error
        lower_v = dim / 4.0 * max(0.0, mstar_lo / outer_radius
                                  - 1.0 / num_vertices) ** 2
    facet_direct = log_f >= dim / 4.0
    if facet_direct:
        lower_f = dim / 4.0
    else:
        mg_lo = mg.value - 3.0 * mg.std_error
        lower_f = dim / 4.0 * max(0.0, mg_lo * inner_radius
                                  - 1.0 / num_facets) ** 2
    rhs = lower_v * lower_f
    chain_ok = lhs >= rhs - 1e-12

    mid_factor = dim ** 2 * ratio ** 2 * product.value ** 2
    return ChainCheck(product_ok, sandwich_ok, chain_ok, lhs, rhs, mid_factor,
                      lhs / dim, vertex_direct, facet_direct,
                      product_ok and sandwich_ok and chain_ok)


# CSV schema: (column, parser). Floats are written with repr() so parsing
# reproduces every value bit-for-bit.
def _parse_bool(s):
    return s == "true"


def _opt(parser):
    return lambda s: None if s == "" else parser(s)


_COLUMNS = [
    ("family", str), ("dim", int), ("pairs", _opt(int)), ("gen_seed", _opt(int)),
    ("num_vertices", _opt(int)), ("num_facets", _opt(int)),
    ("count_method", str),
    ("inradius", _opt(float)), ("circumradius", _opt(float)),
    ("john_applied", _parse_bool), ("john_gap", _opt(float)),
    ("sample_seed", _opt(int)), ("sample_count", _opt(int)),
    ("mean_gauge", _opt(float)), ("mean_gauge_se", _opt(float)),
    ("mean_support", _opt(float)), ("mean_support_se", _opt(float)),
    ("width_product", _opt(float)), ("width_product_se", _opt(float)),
    ("support_bound_lhs", _opt(float)), ("support_bound_rhs", _opt(float)),
    ("support_bound_applicable", _parse_bool), ("support_bound_pass", _parse_bool),
    ("gauge_bound_lhs", _opt(float)), ("gauge_bound_rhs", _opt(float)),
    ("gauge_bound_applicable", _parse_bool), ("gauge_bound_pass", _parse_bool),
    ("product_pass", _parse_bool), ("sandwich_pass", _parse_bool),
    ("chain_lhs", _opt(float)), ("chain_rhs", _opt(float)),
    ("chain_mid_factor", _opt(float)), ("empirical_constant", _opt(float)),
    ("chain_pass", _parse_bool),
    ("all_pass", _parse_bool), ("error", str),
]

CSV_COLUMNS = [name for name, _ in _COLUMNS]


@dataclass
class InstanceReport:
    """One CSV row: everything measured and checked for one instance."""

    family: str
    dim: int
    pairs: int | None = None
    gen_seed: int | None = None
    num_vertices: int | None = None
    num_facets: int | None = None
    count_method: str = ""
    inradius: float | None = None
    circumradius: float | None = None
    john_applied: bool = False
    john_gap: float | None = None
    sample_seed: int | None = None
    sample_count: int | None = None
    mean_gauge: float | None = None
    mean_gauge_se: float | None = None
    mean_support: float | None = None
    mean_support_se: float | None = None
    width_product: float | None = None
    width_product_se: float | None = None
    support_bound_lhs: float | None = None
    support_bound_rhs: float | None = None
    support_bound_applicable: bool = False
    support_bound_pass: bool = False
    gauge_bound_lhs: float | None = None
    gauge_bound_rhs: float | None = None
    gauge_bound_applicable: bool = False
    gauge_bound_pass: bool = False
    product_pass: bool = False
    sandwich_pass: bool = False
    chain_lhs: float | None = None
    chain_rhs: float | None = None
    chain_mid_factor: float | None = None
    empirical_constant: float | None = None
    chain_pass: bool = False
    all_pass: bool = False
    error: str = ""

    def to_row(self):
        row = []
        for name, _ in _COLUMNS:
            v = getattr(self, name)
            if v is None:
                row.append("")
            elif isinstance(v, bool):
                row.append("true" if v else "false")
            elif isinstance(v, float):
                row.append(repr(v))
            else:
                row.append(str(v))
        return row

    @classmethod
    def from_row(cls, row):
        kwargs = {name: parser(cell)
                  for (name, parser), cell in zip(_COLUMNS, row)}
        return cls(**kwargs)


def evaluate_instance(spec: FamilySpec, sample_count: int, sample_seed: int,
                      john_tol: float = DEFAULT_JOHN_TOL,
                      mvee_tol: float = DEFAULT_JOHN_TOL) -> InstanceReport:
    """Run the full pipeline on one instance; raises on internal errors."""
    report = InstanceReport(family=spec.family, dim=spec.dim, pairs=spec.pairs,
                            gen_seed=spec.seed, sample_seed=sample_seed,
                            sample_count=sample_count)
    p = generate(spec)
    if (p.hrep is None and p.vrep is not None
            and p.dim <= MAX_ENUM_DIM and p.vrep.count <= MAX_ENUM_VERTICES):
        p = with_enumerated_facets(p)

    counts = face_counts(p, spec)
    report.num_vertices, report.num_facets = counts.num_vertices, counts.num_facets
    report.count_method = counts.method

    dim = p.dim
    r, big_r = inradius(p), circumradius(p)
    if r / big_r < (1.0 - 10.0 * john_tol) / math.sqrt(dim):
        form = mvee_symmetric(p.vrep.vertices, tol=mvee_tol)
        report.john_gap = duality_gap(form, p.vrep.vertices)
        p = apply_transform(p, john_map(form))
        report.john_applied = True
        r, big_r = inradius(p), circumradius(p)
    if abs(r - 1.0) > 1e-12:
        p = scale_polytope(p, 1.0 / r)
        r, big_r = inradius(p), circumradius(p)
    report.inradius, report.circumradius = r, big_r

    sample = sample_sphere(dim, sample_count, sample_seed)
    g = gauge_series(p, sample)
    h = support_series(p, sample)
    mg = _mean_estimate(g, sample.seed)
    mstar = _mean_estimate(h, sample.seed)
    product = product_from_series(g, h, sample.seed)
    report.mean_gauge, report.mean_gauge_se = mg.value, mg.std_error
    report.mean_support, report.mean_support_se = mstar.value, mstar.std_error
    report.width_product, report.width_product_se = product.value, product.std_error

    sb = check_mean_support_bound(mstar, big_r, counts.num_vertices, dim)
    gb = check_mean_gauge_bound(mg, r, counts.num_facets, dim)
    chain = check_product_chain(counts.num_vertices, counts.num_facets, dim,
                                r, big_r, mg, mstar, product, john_tol)
    report.support_bound_lhs, report.support_bound_rhs = sb.lhs, sb.rhs
    report.support_bound_applicable, report.support_bound_pass = sb.applicable, sb.passed
    report.gauge_bound_lhs, report.gauge_bound_rhs = gb.lhs, gb.rhs
    report.gauge_bound_applicable, report.gauge_bound_pass = gb.applicable, gb.passed
    report.product_pass = chain.product_ok
    report.sandwich_pass = chain.sandwich_ok
    report.chain_lhs, report.chain_rhs = chain.lhs, chain.rhs
    report.chain_mid_factor = chain.mid_factor
    report.empirical_constant = chain.empirical_constant
    report.chain_pass = chain.chain_ok
    report.all_pass = sb.passed and gb.passed and chain.passed
    return report


def _spec_from_entry(entry: dict) -> FamilySpec:
    return FamilySpec(family=entry["family"], dim=int(entry.get("dim", 0)),
                      pairs=entry.get("pairs"), seed=entry.get("seed"),
                      path=entry.get("path"))


def _derive_sample_seed(base_seed: int, index: int) -> int:
    state = np.random.SeedSequence(entropy=base_seed,
                                   spawn_key=(index,)).generate_state(1, np.uint64)
    return int(state[0])


def _run_one(payload):
    entry, sample_count, sample_seed, john_tol, mvee_tol = payload
    spec = _spec_from_entry(entry)
    try:
        return evaluate_instance(spec, sample_count, sample_seed,
                                 john_tol=john_tol, mvee_tol=mvee_tol)
    except Exception as exc:  # keep the run going; the row records the failure
        return InstanceReport(family=spec.family, dim=spec.dim, pairs=spec.pairs,
                              gen_seed=spec.seed, sample_seed=sample_seed,
                              sample_count=sample_count,
                              error=f"{type(exc).__name__}: {exc}")


def write_report_csv(reports, path):
    """Write rows atomically: build a temp file, then rename into place."""
    tmp = f"{path}.tmp"
    with open(tmp, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for report in reports:
            writer.writerow(report.to_row())
    os.replace(tmp, path)


def read_report_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if rows and rows[0] == CSV_COLUMNS:
        rows = rows[1:]
    return [InstanceReport.from_row(row) for row in rows]


def summarize(reports) -> dict:
    constants = [rp.empirical_constant for rp in reports
                 if rp.empirical_constant is not None]
    failures = []
    for rp in reports:
        if rp.error:
            failures.append({"instance": _label(rp), "reason": rp.error})
        elif not rp.all_pass:
            failed = [name for name in ("support_bound_pass", "gauge_bound_pass",
                                        "product_pass", "sandwich_pass",
                                        "chain_pass")
                      if not getattr(rp, name)]
            failures.append({"instance": _label(rp),
                             "reason": "failed checks: " + ", ".join(failed)})
    return {
        "instances": len(reports),
        "min_empirical_constant": min(constants) if constants else None,
        "failures": failures,
        "all_pass": not failures and bool(reports),
    }


def _label(rp: InstanceReport) -> str:
    bits = [rp.family, f"n={rp.dim}"]
    if rp.pairs is not None:
        bits.append(f"m={rp.pairs}")
    if rp.gen_seed is not None:
        bits.append(f"seed={rp.gen_seed}")
    return " ".join(bits)


def _write_plots(reports, plots_dir):
    os.makedirs(plots_dir, exist_ok=True)
    written = []
    by_family = {}
    for rp in reports:
        if rp.empirical_constant is not None:
            by_family.setdefault(rp.family, []).append(
                (rp.dim, rp.empirical_constant))
    for family, pts in sorted(by_family.items()):
        svg = scatter_svg({family: pts},
                          title=f"log|V| log|F| / n for {family}",
                          xlabel="dimension n",
                          ylabel="empirical constant")
        path = os.path.join(plots_dir, f"empirical_constant_{family}.svg")
        with open(path, "w") as fh:
            fh.write(svg)
        written.append(path)
    if by_family:
        svg = scatter_svg({fam: pts for fam, pts in sorted(by_family.items())},
                          title="log|V| log|F| / n across families",
                          xlabel="dimension n",
                          ylabel="empirical constant")
        path = os.path.join(plots_dir, "empirical_constant_all.svg")
        with open(path, "w") as fh:
            fh.write(svg)
        written.append(path)
    return written


@dataclass
class ExperimentResult:
    reports: list
    summary: dict
    csv_path: str
    summary_path: str
    plot_paths: list = field(default_factory=list)


def run_experiment(config, out_dir, seed=None, samples=None,
                   parallel=1) -> ExperimentResult:
    """Evaluate every configured instance and write report.csv, summary.json
    and plots/*.svg under ``out_dir``.

    ``config`` is a dict or a path to a JSON file with keys ``instances``
    (a list of family entries, each accepting an optional per-instance
    ``samples``), and optional ``seed``, ``samples``, ``john_tol``,
    ``mvee_tol``.  ``seed``/``samples`` arguments override the config.
    Instance errors are recorded in their rows; the run continues.
    """
    if not isinstance(config, dict):
        with open(config) as fh:
            config = json.load(fh)
    base_seed = seed if seed is not None else config.get("seed", DEFAULT_SEED)
    base_samples = samples if samples is not None else config.get(
        "samples", DEFAULT_SAMPLES)
    john_tol = config.get("john_tol", DEFAULT_JOHN_TOL)
    mvee_tol = config.get("mvee_tol", DEFAULT_JOHN_TOL)
    entries = config.get("instances", [])

    payloads = []
    for index, entry in enumerate(entries):
        count = int(entry.get("samples", base_samples))
        payloads.append((entry, count, _derive_sample_seed(base_seed, index),
                         john_tol, mvee_tol))

    if parallel > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            reports = list(pool.map(_run_one, payloads))
    else:
        reports = [_run_one(payload) for payload in payloads]

    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, "report.csv")
    write_report_csv(reports, csv_path)
    summary = summarize(reports)
    summary_path = os.path.join(out_dir, "summary.json")
    with open(summary_path, "w") as fh:
        json.dump(summary, fh, indent=2)
    plot_paths = _write_plots(reports, os.path.join(out_dir, "plots"))
    return ExperimentResult(reports, summary, csv_path, summary_path, plot_paths)
