"""Report rendering: fixed-width text tables, CSV, JSON and figures.

Every report path writes the delimited output next to the rendered PNG so
results stay machine-readable; figures are presentation only and are never
byte-compared.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Optional, Sequence, Union

from .dataset import CorpusStats
from .evaluate import EvalConfig, MetricsReport
from .misalign import MisalignmentType

TYPE_LABELS = {
    "missing_axiom": "Missing axiom",
    "undefined_axiom": "Undefined axiom",
    "misused_axiom": "Misused axiom",
    "aligned": "Aligned",
}


# --------------------------------------------------------------------------
# Text tables
# --------------------------------------------------------------------------


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def fmt(cells):
        return " | ".join(
            cell.ljust(widths[i]) if i == 0 else cell.rjust(widths[i])
            for i, cell in enumerate(cells)
        ).rstrip()
    lines = [fmt(headers), "-+-".join("-" * w for w in widths)]
    lines.extend(fmt(row) for row in rows)
    return "\n".join(lines)


def render_stats_tables(stats: CorpusStats) -> str:
    ontologies = list(stats.per_ontology)
    headers = ["", *ontologies, "Total"]
    def counts(bucket: str) -> list[str]:
        values = [stats.per_ontology[o][bucket] for o in ontologies]
        return [str(v) for v in values] + [str(sum(values))]
    table1 = _table(headers, [
        ["Classes", *counts("classes")],
        ["Properties", *counts("properties")],
        ["Total", *[str(stats.ontology_total(o)) for o in ontologies],
         str(stats.total)],
    ])

    type_values = [t.value for t in MisalignmentType]
    headers2 = ["", *[TYPE_LABELS[t] for t in type_values], "Total"]
    def counts2(bucket: str) -> list[str]:
        values = [stats.per_type[t][bucket] for t in type_values]
        return [str(v) for v in values] + [str(sum(values))]
    table2 = _table(headers2, [
        ["Classes", *counts2("classes")],
        ["Properties", *counts2("properties")],
        ["Total", *[str(stats.type_total(t)) for t in type_values],
         str(stats.total)],
    ])
    return (
        "Terms per ontology\n"
        f"{table1}\n\n"
        "Terms per case type\n"
        f"{table2}\n"
    )


def render_type_diff(stats: CorpusStats, expected_by_type: dict[str, int]) -> str:
    """Report-only comparison of per-type totals against reference counts
    supplied by the caller; nothing is asserted."""
    rows = []
    for type_value in (t.value for t in MisalignmentType):
        if type_value not in expected_by_type:
            continue
        observed = stats.type_total(type_value)
        expected = expected_by_type[type_value]
        rows.append([TYPE_LABELS[type_value], str(observed), str(expected),
                     f"{observed - expected:+d}"])
    table = _table(["", "Observed", "Reference", "Diff"], rows)
    return f"Per-type totals vs reference counts (informational)\n{table}\n"


def render_metrics_table(report: MetricsReport) -> str:
    config = report.config
    header = (
        f"tau={config.tau:g}  backend={config.backend_id}  "
        f"aggregation={config.aggregation.value}  references={report.gt_mode.value}  "
        f"cos-sim-mean={'per-term' if config.cos_sim_per_term else 'per-question'}"
    )
    rows = []
    for type_value, agg in report.per_type.items():
        p, r, f1, cs = agg.selected(config)
        rows.append([TYPE_LABELS.get(type_value, type_value),
                     f"{100 * p:.1f}", f"{100 * r:.1f}", f"{100 * f1:.1f}",
                     f"{cs:.4f}", str(agg.n_terms)])
    p, r, f1, cs = report.overall.selected(config)
    rows.append(["Overall", f"{100 * p:.1f}", f"{100 * r:.1f}",
                 f"{100 * f1:.1f}", f"{cs:.4f}", str(report.overall.n_terms)])
    table = _table(["Group", "P", "R", "F1", "C.S.", "Terms"], rows)
    skipped = f"\nSkipped terms: {len(report.skipped_terms)}\n" if report.skipped_terms else "\n"
    return f"{header}\n{table}\n{skipped}"


# --------------------------------------------------------------------------
# File writers
# --------------------------------------------------------------------------


def write_stats_report(stats: CorpusStats, outdir: Union[str, Path],
                       figures: bool = True) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []

    text_path = outdir / "stats.txt"
    text_path.write_text(render_stats_tables(stats), encoding="utf-8")
    written.append(text_path)

    csv_path = outdir / "stats.csv"
    with csv_path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["section", "group", "classes", "properties", "total"])
        for onto, v in stats.per_ontology.items():
            writer.writerow(["ontology", onto, v["classes"], v["properties"],
                             v["classes"] + v["properties"]])
        for type_value, v in stats.per_type.items():
            writer.writerow(["case_type", type_value, v["classes"], v["properties"],
                             v["classes"] + v["properties"]])
    written.append(csv_path)

    if figures:
        written.append(_stats_figure(stats, outdir / "stats_by_type.png"))
    return written


def write_eval_report(report: MetricsReport, outdir: Union[str, Path],
                      basename: str = "metrics", figures: bool = True,
                      provenance: Optional[dict] = None) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []

    text_path = outdir / f"{basename}.txt"
    text_path.write_text(render_metrics_table(report), encoding="utf-8")
    written.append(text_path)

    payload = report.to_json_dict()
    if provenance:
        payload["provenance"] = provenance
    json_path = outdir / f"{basename}.json"
    json_path.write_text(
        json.dumps(payload, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8")
    written.append(json_path)

    csv_path = outdir / f"{basename}.csv"
    with csv_path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow([
            "group", "n_terms", "n_gen", "n_gt",
            "micro_precision", "micro_recall", "micro_f1",
            "macro_precision", "macro_recall", "macro_f1",
            "cos_sim_per_question", "cos_sim_per_term",
        ])
        for name, agg in [*report.per_type.items(), ("overall", report.overall)]:
            writer.writerow([
                name, agg.n_terms, agg.n_gen, agg.n_gt,
                f"{agg.micro_precision:.6f}", f"{agg.micro_recall:.6f}",
                f"{agg.micro_f1:.6f}",
                f"{agg.macro_precision:.6f}", f"{agg.macro_recall:.6f}",
                f"{agg.macro_f1:.6f}",
                f"{agg.cos_sim_per_question:.6f}", f"{agg.cos_sim_per_term:.6f}",
            ])
    written.append(csv_path)

    if figures:
        written.append(_metrics_figure(report, outdir / f"{basename}_by_group.png"))
    return written


def write_sweep_report(rows: Sequence[dict], outdir: Union[str, Path],
                       figures: bool = True) -> list[Path]:
    """``rows``: one dict per tau with keys tau/precision/recall/f1/cos_sim."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []

    csv_path = outdir / "sweep.csv"
    with csv_path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["tau", "precision", "recall", "f1", "cos_sim"])
        for row in rows:
            writer.writerow([f"{row['tau']:.2f}", f"{row['precision']:.6f}",
                             f"{row['recall']:.6f}", f"{row['f1']:.6f}",
                             f"{row['cos_sim']:.6f}"])
    written.append(csv_path)

    if figures:
        written.append(_sweep_figure(rows, outdir / "sweep.png"))
    return written


# --------------------------------------------------------------------------
# Figures
# --------------------------------------------------------------------------


def _use_agg():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def _stats_figure(stats: CorpusStats, path: Path) -> Path:
    plt = _use_agg()
    labels = [TYPE_LABELS[t.value] for t in MisalignmentType]
    classes = [stats.per_type[t.value]["classes"] for t in MisalignmentType]
    props = [stats.per_type[t.value]["properties"] for t in MisalignmentType]
    x = range(len(labels))
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar([i - 0.2 for i in x], classes, width=0.4, label="Classes")
    ax.bar([i + 0.2 for i in x], props, width=0.4, label="Properties")
    ax.set_xticks(list(x), labels, rotation=15)
    ax.set_ylabel("Terms")
    ax.set_title("Dataset records per case type")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _metrics_figure(report: MetricsReport, path: Path) -> Path:
    plt = _use_agg()
    groups = [*report.per_type.keys(), "overall"]
    aggs = [*report.per_type.values(), report.overall]
    selected = [a.selected(report.config) for a in aggs]
    x = range(len(groups))
    fig, ax = plt.subplots(figsize=(7.5, 4))
    for offset, (label, idx) in zip((-0.25, 0.0, 0.25),
                                    [("P", 0), ("R", 1), ("F1", 2)]):
        ax.bar([i + offset for i in x], [100 * s[idx] for s in selected],
               width=0.25, label=label)
    ax.set_xticks(list(x), [TYPE_LABELS.get(g, g) for g in groups], rotation=15)
    ax.set_ylabel("%")
    ax.set_ylim(0, 105)
    ax.set_title(f"Question evaluation (tau={report.config.tau:g})")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _sweep_figure(rows: Sequence[dict], path: Path) -> Path:
    plt = _use_agg()
    taus = [row["tau"] for row in rows]
    fig, ax = plt.subplots(figsize=(7, 4.2))
    for key, label in (("precision", "P"), ("recall", "R"), ("f1", "F1")):
        ax.plot(taus, [100 * row[key] for row in rows], marker="o",
                markersize=3, label=label)
    ax.set_xlabel("similarity threshold tau")
    ax.set_ylabel("%")
    ax.set_ylim(-2, 105)
    ax.grid(True, alpha=0.3)
    ax2 = ax.twinx()
    ax2.plot(taus, [row["cos_sim"] for row in rows], color="gray",
             linestyle="--", label="C.S.")
    ax2.set_ylabel("mean max cosine similarity")
    handles1, labels1 = ax.get_legend_handles_labels()
    handles2, labels2 = ax2.get_legend_handles_labels()
    ax.legend(handles1 + handles2, labels1 + labels2, loc="lower left")
    ax.set_title("Threshold sweep")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def config_hash(payload: dict) -> str:
    """Stable hash of an effective configuration, for provenance stamps."""
    import hashlib

    canonical = json.dumps(payload, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def write_warnings_sidecar(
    warnings: Sequence[tuple[str, object]],
    path: Union[str, Path],
) -> Path:
    """One line per skipped construct: ``file:line:col: skipped ...``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [w.format(file) for file, w in warnings]
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return path


def render_eval_config(config: EvalConfig) -> dict:
    return {
        "tau": config.tau,
        "backend_id": config.backend_id,
        "aggregation": config.aggregation.value,
        "cos_sim_per_term": config.cos_sim_per_term,
        "missing": config.missing.value,
    }
