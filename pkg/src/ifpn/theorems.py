"""Implication-lattice harness over a corpus of (space, operator) scenarios.

Fourteen directed edges relate the seven properties.  The harness treats
every edge as an empirical claim: per scenario an edge is consistent when
the hypothesis fails or both sides hold, and discrepant when the hypothesis
holds while the conclusion is refuted, in which case both artefacts (the
hypothesis certificate and the conclusion witness) are attached.  Two edges
whose textbook proofs silently choose delta = eps, which the hypothesis
does not grant, are labelled converse; the corpus is expected to surface
discrepancies on exactly those, and they do not gate an exit status.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .classify import (
    ClassifierConfig,
    OperatorProperty,
    PropertyReport,
    classify_all,
    default_classifier_config,
)
from .outcome import Verdict
from .operators import OperatorSpec, builtin_operator, check_linearity
from .pairs import IfpnPair, check_ifpn_axioms, standard_ifpn
from .vectorspace import builtin_pseudo_norm, point, zero_point

P = OperatorProperty


@dataclass(frozen=True)
class LatticeEdge:
    """One directed implication between two properties."""

    id: str
    hypothesis: OperatorProperty
    conclusion: OperatorProperty
    direction: str  # "forward" (proof sound as stated) or "converse"
    statement: str

    def __post_init__(self) -> None:
        if self.hypothesis == self.conclusion:
            raise ValueError("an edge needs distinct endpoints")
        if self.direction not in ("forward", "converse"):
            raise ValueError(f"bad direction {self.direction!r}")


def default_edges() -> list[LatticeEdge]:
    """The fourteen directed edges of the implication lattice.

    The two converse-labelled edges rely on choosing delta = eps inside
    their proofs; all other directions follow without that choice.
    """
    e = LatticeEdge
    return [
        e("ifc_implies_seq_ifc", P.IFC, P.SEQ_IFC, "forward",
          "pointwise continuity implies sequential continuity"),
        e("seq_ifc_implies_ifc", P.SEQ_IFC, P.IFC, "forward",
          "sequential continuity implies pointwise continuity"),
        e("strong_ifc_implies_weak_ifc", P.STRONG_IFC, P.WEAK_IFC, "forward",
          "strong continuity implies weak continuity"),
        e("strong_ifc_implies_seq_ifc", P.STRONG_IFC, P.SEQ_IFC, "forward",
          "strong continuity implies sequential continuity"),
        e("strong_ifc_implies_ifc", P.STRONG_IFC, P.IFC, "forward",
          "strong continuity implies pointwise continuity"),
        e("strong_ifb_implies_weak_ifb", P.STRONG_IFB, P.WEAK_IFB, "forward",
          "strong boundedness implies weak boundedness"),
        e("strong_ifb_implies_uniform_ifb", P.STRONG_IFB, P.UNIFORM_IFB,
          "forward",
          "strong boundedness implies uniform boundedness of alpha levels"),
        e("uniform_ifb_implies_strong_ifb", P.UNIFORM_IFB, P.STRONG_IFB,
          "forward",
          "uniform boundedness of alpha levels implies strong boundedness"),
        e("strong_ifc_implies_strong_ifb", P.STRONG_IFC, P.STRONG_IFB,
          "converse",
          "strong continuity would imply strong boundedness only if the "
          "continuity modulus could be pinned to delta = eps"),
        e("strong_ifb_implies_strong_ifc", P.STRONG_IFB, P.STRONG_IFC,
          "forward",
          "strong boundedness implies strong continuity"),
        e("weak_ifc_implies_weak_ifb", P.WEAK_IFC, P.WEAK_IFB, "converse",
          "weak continuity would imply weak boundedness only if the "
          "continuity modulus could be pinned to delta = eps"),
        e("weak_ifb_implies_weak_ifc", P.WEAK_IFB, P.WEAK_IFC, "forward",
          "weak boundedness implies weak continuity"),
        e("strong_ifb_implies_seq_ifc", P.STRONG_IFB, P.SEQ_IFC, "forward",
          "strong boundedness implies sequential continuity"),
        e("strong_ifb_implies_ifc", P.STRONG_IFB, P.IFC, "forward",
          "strong boundedness implies pointwise continuity"),
    ]


@dataclass(frozen=True)
class Scenario:
    """One corpus entry: a map between two equipped spaces plus its config."""

    name: str
    domain: IfpnPair
    codomain: IfpnPair
    operator: OperatorSpec
    config: ClassifierConfig


@dataclass
class LatticeReport:
    """Per-scenario property reports plus per-edge consistency results."""

    scenario: str
    reports: dict[OperatorProperty, PropertyReport]
    edge_results: dict[str, dict] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "properties": {p.value: r.to_dict() for p, r in self.reports.items()},
            "edges": self.edge_results,
        }


def _edge_status(hyp: PropertyReport, concl: PropertyReport) -> dict:
    hv, cv = hyp.outcome.verdict, concl.outcome.verdict
    if hv is Verdict.HOLDS and cv is Verdict.HOLDS:
        return {"status": "consistent"}
    if hv is Verdict.HOLDS and cv is Verdict.REFUTED:
        return {
            "status": "discrepant",
            "hypothesis_certificate": hyp.outcome.certificate,
            "conclusion_witness": concl.outcome.witness,
        }
    if hv is Verdict.REFUTED:
        return {"status": "consistent", "note": "hypothesis refuted"}
    return {"status": "inconclusive"}


def evaluate_edges(
    reports: dict[OperatorProperty, PropertyReport],
    edges: list[LatticeEdge] | None = None,
) -> dict[str, dict]:
    edges = edges if edges is not None else default_edges()
    return {
        edge.id: _edge_status(reports[edge.hypothesis], reports[edge.conclusion])
        for edge in edges
        if edge.hypothesis in reports and edge.conclusion in reports
    }


_SPACE_SPECS = (
    ("abs", "abs", 1),
    ("euclidean2", "euclidean", 2),
    ("trunc_euclidean2", "truncated(euclidean,1)", 2),
    ("root_abs", "root(abs)", 1),
)
CUBIC_BASE_POINTS = (0.0, 1.0, 2.0)


def default_corpus(seed: int = 42, resolution: float = 1.0) -> list[Scenario]:
    """The default scenario corpus.

    Same-space operators (identity, zero, three scalings) over four spaces,
    the first-coordinate projection from both two-dimensional spaces into
    the absolute-value line, and the rational cubic on both one-dimensional
    spaces at three base points.  Spans positive cases, negative cases, and
    both known strong-continuity counterexamples.
    """
    pairs = {
        name: standard_ifpn(builtin_pseudo_norm(spec, dim))
        for name, spec, dim in _SPACE_SPECS
    }
    dims = {name: dim for name, _, dim in _SPACE_SPECS}
    scenarios: list[Scenario] = []

    def cfg_for(dim: int, x0=None, nonneg=False) -> ClassifierConfig:
        return default_classifier_config(
            dim, seed=seed, resolution=resolution,
            point_of_interest=x0, nonneg=nonneg,
        )

    for space, f in pairs.items():
        dim = dims[space]
        for op_spec in (
            f"identity({dim})", f"zero({dim})",
            f"scaling({dim},0.5)", f"scaling({dim},1)", f"scaling({dim},2)",
        ):
            scenarios.append(Scenario(
                f"{op_spec}:{space}", f, f, builtin_operator(op_spec),
                cfg_for(dim),
            ))
    for space in ("euclidean2", "trunc_euclidean2"):
        scenarios.append(Scenario(
            f"coordinate_projection(2,1):{space}->abs",
            pairs[space], pairs["abs"],
            builtin_operator("coordinate_projection(2,1)"),
            cfg_for(2),
        ))
    for space in ("abs", "root_abs"):
        for x0 in CUBIC_BASE_POINTS:
            scenarios.append(Scenario(
                f"rational_cubic@x0={x0:g}:{space}",
                pairs[space], pairs[space],
                builtin_operator("rational_cubic"),
                cfg_for(1, x0=point(x0), nonneg=True),
            ))
    return scenarios


def validate_scenarios(scenarios: list[Scenario]) -> None:
    """Spaces must pass the pair axioms and declared linearity must agree
    with the linearity check.  Raises ValueError on the first failure."""
    checked_pairs: dict[str, bool] = {}
    checked_ops: dict[tuple, bool] = {}
    for sc in scenarios:
        for f in (sc.domain, sc.codomain):
            if f.name not in checked_pairs:
                grid = default_grid_for(f.dimension, sc.config)
                out = check_ifpn_axioms(f, grid)
                checked_pairs[f.name] = out.holds
                if not out.holds:
                    raise ValueError(
                        f"scenario {sc.name!r}: pair {f.name!r} fails axioms: "
                        f"{out.detail}"
                    )
        key = (sc.operator.name, sc.operator.domain_dim)
        if key not in checked_ops:
            out = check_linearity(sc.operator, sc.config.x_grid, tol=sc.config.tol)
            agrees = out.holds == sc.operator.declared_linear
            checked_ops[key] = agrees
            if not agrees:
                raise ValueError(
                    f"scenario {sc.name!r}: operator {sc.operator.name!r} "
                    f"declares linear={sc.operator.declared_linear} but the "
                    f"check says {out.verdict.value}"
                )


def default_grid_for(dimension: int, cfg: ClassifierConfig):
    """A symmetric grid matching the scenario's seed/resolution for axiom
    validation (classifier grids may be asymmetric for restricted domains)."""
    from .vectorspace import default_grid

    if cfg.x_grid.symmetric and cfg.x_grid.dimension == dimension:
        return cfg.x_grid
    return default_grid(dimension, seed=cfg.x_grid.seed)


def run_lattice(
    scenarios: list[Scenario],
    edges: list[LatticeEdge] | None = None,
    *,
    validate: bool = True,
) -> list[LatticeReport]:
    """Classify every scenario and evaluate every lattice edge on it."""
    edges = edges if edges is not None else default_edges()
    if validate:
        validate_scenarios(scenarios)
    out = []
    for sc in scenarios:
        reports = classify_all(sc.operator, sc.domain, sc.codomain, sc.config)
        out.append(LatticeReport(
            sc.name, reports, evaluate_edges(reports, edges)
        ))
    return out


def summarize_edges(
    lattice_reports: list[LatticeReport],
    edges: list[LatticeEdge] | None = None,
) -> dict[str, dict]:
    """Aggregate edge results across the corpus.

    An edge is vacuous when its hypothesis never holds in any scenario;
    otherwise discrepant beats inconclusive beats consistent, and the
    scenarios responsible for a discrepancy are listed.
    """
    edges = edges if edges is not None else default_edges()
    summary: dict[str, dict] = {}
    for edge in edges:
        statuses: list[tuple[str, str]] = []
        informative = False
        for rep in lattice_reports:
            if edge.id not in rep.edge_results:
                continue
            hyp = rep.reports[edge.hypothesis]
            if hyp.outcome.holds:
                informative = True
            statuses.append((rep.scenario, rep.edge_results[edge.id]["status"]))
        if not statuses:
            continue
        discrepant = [s for s, st in statuses if st == "discrepant"]
        inconclusive_in = [s for s, st in statuses if st == "inconclusive"]
        if not informative:
            status = "vacuous"
        elif discrepant:
            status = "discrepant"
        elif inconclusive_in:
            status = "inconclusive"
        else:
            status = "consistent"
        entry = {"status": status, "direction": edge.direction}
        if discrepant:
            entry["discrepant_scenarios"] = discrepant
        if inconclusive_in:
            entry["inconclusive_scenarios"] = inconclusive_in
        summary[edge.id] = entry
    return summary


def forward_discrepancies(summary: dict[str, dict]) -> list[str]:
    """Edge ids whose forward-labelled implication is discrepant; the exit
    gate for corpus runs."""
    return [
        eid for eid, entry in summary.items()
        if entry["direction"] == "forward" and entry["status"] == "discrepant"
    ]


# ---------------------------------------------------------------------------
# counterexample reproduction
# ---------------------------------------------------------------------------

COUNTEREXAMPLE_EXTENSION = (20.0, 50.0, 100.0)
DECAY_EPSILON = 1.0
DECAY_BOUNDS = (10.0, 100.0)
DECAY_MIN_RATIO = 10.0


def witness_delta_decay(
    report: PropertyReport, eps: float, bounds: tuple[float, float]
) -> dict:
    """Smallest admissible-delta bound among recorded witnesses within each
    norm bound, plus their ratio.

    Each strong-continuity witness x admits deltas only up to
    eps * d(x) / D(x); as the witness bound grows this minimum falls, which
    is the finite mirror of the required-delta-goes-to-zero argument.
    """
    cells = report.outcome.data.get("per_epsilon", [])
    cell = next((c for c in cells if c["epsilon"] == eps), None)
    if cell is None:
        return {"epsilon": eps, "ratio": None}
    bounds_out = {}
    for bound in bounds:
        admissible = [
            c["witness"]["delta_bound"]
            for c in cell["candidates"]
            if c["status"] == "violated"
            and c["witness"].get("delta_bound") is not None
            and max(abs(v) for v in c["witness"]["x"]) <= bound
        ]
        bounds_out[f"{bound:g}"] = min(admissible) if admissible else None
    small, large = (bounds_out[f"{b:g}"] for b in bounds)
    ratio = (small / large) if small is not None and large not in (None, 0) else None
    return {"epsilon": eps, "min_admissible_delta": bounds_out, "ratio": ratio}


def reproduce_counterexamples(
    seed: int = 42, resolution: float = 1.0
) -> tuple[LatticeReport, LatticeReport]:
    """Re-run the two strong-continuity counterexamples on the rational
    cubic over the absolute-value pair, with the nonnegative grid extended
    to norm 100.

    First report: base point at the origin; expected weakly continuous
    (every certified delta at or below its eps) but not strongly so, with
    the per-delta witnesses showing the admissible delta shrinking at least
    tenfold as the witness bound grows from 10 to 100.  Second report: base
    point 2; expected sequentially continuous on the two-sequence suite yet
    still not strongly continuous.  Each report carries a ``claims`` entry
    recording which of these expectations held.
    """
    from dataclasses import replace

    from .pairs import SequenceSpec

    f = standard_ifpn(builtin_pseudo_norm("abs", 1))
    cubic = builtin_operator("rational_cubic")

    def build(x0: float) -> LatticeReport:
        base = point(x0)
        e1 = point(1.0)
        suite = (
            SequenceSpec(
                "x0_plus_inverse_n",
                lambda n: base + e1.scaled(1.0 / n), base,
            ),
            SequenceSpec(
                "x0_times_one_plus_inverse_n_squared",
                lambda n: base.scaled(1.0 + 1.0 / n ** 2), base,
            ),
        )
        cfg = default_classifier_config(
            1, seed=seed, resolution=resolution, point_of_interest=base,
            nonneg=True, extra_axis_values=COUNTEREXAMPLE_EXTENSION,
        )
        cfg = replace(cfg, seq_suite=suite)
        reports = classify_all(cubic, f, f, cfg)
        return LatticeReport(
            f"rational_cubic@x0={x0:g}:abs(extended)", reports,
            evaluate_edges(reports),
        )

    weak_report = build(0.0)
    seq_report = build(2.0)

    weak = weak_report.reports[P.WEAK_IFC]
    strong = weak_report.reports[P.STRONG_IFC]
    decay = witness_delta_decay(strong, DECAY_EPSILON, DECAY_BOUNDS)
    cert_cells = (weak.certificate or {}).get("delta_by_cell", {})
    deltas_within_eps = all(
        choice["delta"] <= float(key.split(",")[0].split("=")[1]) + 1e-12
        for key, choice in cert_cells.items()
    )
    weak_report.edge_results["claims"] = {
        "weak_ifc_holds": weak.outcome.holds,
        "weak_certificates_within_eps": bool(cert_cells) and deltas_within_eps,
        "strong_ifc_refuted": strong.outcome.refuted,
        "delta_decay": decay,
        "delta_decay_at_least_10x": bool(decay["ratio"] and decay["ratio"] >= DECAY_MIN_RATIO),
    }
    seq = seq_report.reports[P.SEQ_IFC]
    seq_report.edge_results["claims"] = {
        "seq_ifc_holds": seq.outcome.holds,
        "strong_ifc_refuted": seq_report.reports[P.STRONG_IFC].outcome.refuted,
    }
    return weak_report, seq_report
