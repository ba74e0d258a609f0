"""Command-line pipeline: ingest -> classify -> build -> eval -> report.

Exit codes: 0 success, 1 usage or configuration error, 2 partial
generation failure, 3 text backend unreachable. Credentials are read from
environment variables only (CQPITFALL_TEXT_URL, CQPITFALL_TEXT_API_KEY,
CQPITFALL_EMBED_URL).
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import __version__
from .backends import (
    BackendError,
    BackendUnreachable,
    HttpTextBackend,
    MockTemplateBackend,
)
from .dataset import SplitSpec, assemble, export_jsonl, import_jsonl, split, stats
from .evaluate import (
    Aggregation,
    EvalConfig,
    GtMode,
    MissingPolicy,
    evaluate_suite,
)
from .extract import ExtractionFilter, extract_terms, sample_terms
from .generate import GenerationConfig, generate_all
from .manifests import (
    read_generations,
    read_terms_manifest,
    write_cases_manifest,
    write_terms_manifest,
)
from .misalign import MisalignmentType, build_cases, derive_seed
from .model import Ontology
from .parser import OfnSyntaxError, parse_with_warnings
from .report import (
    config_hash,
    render_eval_config,
    render_metrics_table,
    render_stats_tables,
    render_type_diff,
    write_eval_report,
    write_stats_report,
    write_sweep_report,
    write_warnings_sidecar,
)
from .simbackends import similarity_backend_from_id
from .templates import TemplateRegistry


class PartialGenerationFailure(click.ClickException):
    exit_code = 2


@click.group()
@click.version_option(version=__version__)
def cli() -> None:
    """Build semantic-pitfall validation datasets from OWL ontologies and
    evaluate candidate competency questions."""


# --------------------------------------------------------------------------
# ingest
# --------------------------------------------------------------------------


@cli.command()
@click.argument("paths", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", "outdir", required=True, type=click.Path(path_type=Path),
              help="Output directory for terms.jsonl and warnings.txt.")
@click.option("--filter", "filter_mode",
              type=click.Choice([f.value for f in ExtractionFilter]),
              default=ExtractionFilter.SUBJECT_ONLY.value, show_default=True,
              help="Axiom collection rule per term.")
def ingest(paths: tuple[Path, ...], outdir: Path, filter_mode: str) -> None:
    """Parse .ofn files into a normalized terms manifest."""
    outdir.mkdir(parents=True, exist_ok=True)
    ontologies: list[Ontology] = []
    warnings: list[tuple[str, object]] = []
    failures = []
    for path in paths:
        try:
            ontology, file_warnings = parse_with_warnings(
                path.read_text(encoding="utf-8"), ontology_id=path.stem)
        except OfnSyntaxError as exc:
            failures.append((path, exc))
            click.echo(f"error: {path}: {exc}", err=True)
            continue
        ontology.terms = extract_terms(ontology, ExtractionFilter(filter_mode))
        ontologies.append(ontology)
        warnings.extend((str(path), w) for w in file_warnings)
        click.echo(f"{path}: {len(ontology.terms)} terms, "
                   f"{sum(len(t.axioms) for t in ontology.terms)} axioms, "
                   f"{len(file_warnings)} warnings")
    manifest = write_terms_manifest(ontologies, outdir / "terms.jsonl")
    sidecar = write_warnings_sidecar(warnings, outdir / "warnings.txt")
    click.echo(f"wrote {manifest} and {sidecar}")
    if failures:
        raise click.ClickException(
            f"{len(failures)} file(s) failed to parse; see messages above")


# --------------------------------------------------------------------------
# classify
# --------------------------------------------------------------------------


def _parse_weights(spec: str) -> dict[MisalignmentType, float]:
    weights = {}
    for part in spec.split(","):
        name, _, value = part.partition("=")
        weights[MisalignmentType(name.strip())] = float(value)
    return weights


@cli.command()
@click.option("--terms", "terms_path", required=True,
              type=click.Path(exists=True, path_type=Path))
@click.option("--seed", type=int, required=True, help="Master seed.")
@click.option("--out", "out_path", required=True, type=click.Path(path_type=Path))
@click.option("--type-weights", default=None,
              help="Skew the eligible-type draw, e.g. 'aligned=2,misused_axiom=1'.")
def classify(terms_path: Path, seed: int, out_path: Path, type_weights) -> None:
    """Assign case types and inject misalignments; write the audit manifest."""
    terms, prefixes = read_terms_manifest(terms_path)
    weights = _parse_weights(type_weights) if type_weights else None
    try:
        cases = build_cases(terms, seed, weights)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    write_cases_manifest(cases, prefixes, out_path)
    by_type = {t.value: 0 for t in MisalignmentType}
    for case in cases:
        by_type[case.assigned_type.value] += 1
    click.echo(f"{len(cases)} cases: " +
               ", ".join(f"{k}={v}" for k, v in by_type.items()))
    click.echo(f"wrote {out_path}")


# --------------------------------------------------------------------------
# build
# --------------------------------------------------------------------------


@cli.command()
@click.option("--terms", "terms_path", required=True,
              type=click.Path(exists=True, path_type=Path))
@click.option("--out", "outdir", required=True, type=click.Path(path_type=Path))
@click.option("--seed", type=int, required=True, help="Master seed.")
@click.option("--backend", "backend_id", type=click.Choice(["mock", "http"]),
              default="mock", show_default=True)
@click.option("--n", "n_questions", type=int, default=3, show_default=True,
              help="Questions generated per axiom.")
@click.option("--temperature", type=float, default=None,
              help="Sampling temperature (backend default when omitted).")
@click.option("--cap", type=int, default=None,
              help="Per-ontology term cap (uniform sample).")
@click.option("--train-fraction", type=float, default=0.875, show_default=True)
@click.option("--holdout", default=None,
              help="Leave-one-ontology-out: ontology id for the test split.")
@click.option("--stratify", is_flag=True, help="Stratify the random split by case type.")
@click.option("--type-weights", default=None)
@click.option("--max-in-flight", type=int, default=1, show_default=True,
              help="Concurrent backend calls (results join in case order).")
@click.option("--no-figures", is_flag=True)
def build(terms_path: Path, outdir: Path, seed: int, backend_id: str,
          n_questions: int, temperature, cap, train_fraction: float,
          holdout, stratify: bool, type_weights, max_in_flight: int,
          no_figures: bool) -> None:
    """Run classify + generate + assemble + split + export + stats."""
    terms, prefixes = read_terms_manifest(terms_path)
    if cap is not None:
        by_onto: dict[str, list] = {}
        for term in terms:
            by_onto.setdefault(term.ontology_id, []).append(term)
        terms = []
        for onto_id, onto_terms in by_onto.items():
            terms.extend(sample_terms(onto_terms, cap,
                                      derive_seed(seed, "cap", onto_id)))

    weights = _parse_weights(type_weights) if type_weights else None
    try:
        cases = build_cases(terms, seed, weights)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    outdir.mkdir(parents=True, exist_ok=True)
    write_cases_manifest(cases, prefixes, outdir / "cases.jsonl")

    config = GenerationConfig(n=n_questions, temperature=temperature,
                              backend_id=backend_id, master_seed=seed)
    try:
        backend = MockTemplateBackend() if backend_id == "mock" else HttpTextBackend()
    except BackendError as exc:
        raise click.ClickException(str(exc))
    registry = TemplateRegistry.load()
    try:
        outcome = generate_all(cases, config, backend, registry, prefixes,
                               max_in_flight=max_in_flight)
    except BackendUnreachable as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(3)

    triples = assemble(outcome.succeeded, config, seed, prefixes)
    effective = {
        "seed": seed, "backend": backend_id, "n": n_questions,
        "temperature": temperature, "cap": cap,
        "train_fraction": train_fraction, "holdout": holdout,
        "stratify": stratify,
        "type_weights": {k.value: v for k, v in weights.items()} if weights else None,
        "tool_version": __version__,
    }
    digest = config_hash(effective)
    excluded = [{"term_iri": case.term.term.value, "error": error}
                for case, error in outcome.failed]
    export_jsonl(triples, outdir / "dataset.jsonl", seed=seed,
                 config_hash=digest, excluded=excluded)

    if holdout is not None:
        spec = SplitSpec(mode="leave_one_out", holdout=holdout)
    else:
        spec = SplitSpec(mode="random", train_fraction=train_fraction,
                         seed=derive_seed(seed, "split"),
                         stratify_by_type=stratify)
    train, test = split(triples, spec)
    export_jsonl(train, outdir / "train.jsonl", seed=seed, config_hash=digest)
    export_jsonl(test, outdir / "test.jsonl", seed=seed, config_hash=digest)

    corpus_stats = stats(triples)
    write_stats_report(corpus_stats, outdir, figures=not no_figures)
    click.echo(render_stats_tables(corpus_stats))
    click.echo(f"dataset: {len(triples)} records "
               f"(train {len(train)}, test {len(test)}) -> {outdir}")
    if outcome.failed:
        for case, error in outcome.failed:
            click.echo(f"failed: {case.term.term.value}: {error}", err=True)
        raise PartialGenerationFailure(
            f"{len(outcome.failed)} case(s) failed generation; "
            f"dataset contains the {len(triples)} successful case(s)")


# --------------------------------------------------------------------------
# eval / report / sweep
# --------------------------------------------------------------------------


def _eval_config(tau, backend_id, aggregation, missing, cos_sim_per_term) -> EvalConfig:
    return EvalConfig(
        tau=tau,
        backend_id=backend_id,
        aggregation=Aggregation(aggregation),
        missing=MissingPolicy(missing),
        cos_sim_per_term=cos_sim_per_term,
    )


@cli.command("eval")
@click.option("--dataset", "dataset_path", required=True,
              type=click.Path(exists=True, path_type=Path))
@click.option("--generations", "generations_path", required=True,
              type=click.Path(exists=True, path_type=Path))
@click.option("--out", "outdir", required=True, type=click.Path(path_type=Path))
@click.option("--tau", type=float, default=0.7, show_default=True)
@click.option("--backend", "backend_id", default="exact", show_default=True,
              help="exact | jaccard | hashed[:dim] | embed[:url]")
@click.option("--gt-mode", type=click.Choice([m.value for m in GtMode]),
              default=GtMode.SP_ONLY.value, show_default=True)
@click.option("--aggregation", type=click.Choice([a.value for a in Aggregation]),
              default=Aggregation.MICRO.value, show_default=True)
@click.option("--missing", type=click.Choice([m.value for m in MissingPolicy]),
              default=MissingPolicy.SKIP.value, show_default=True)
@click.option("--cos-sim-per-term", is_flag=True,
              help="Average max similarity per term instead of per question.")
@click.option("--no-figures", is_flag=True)
def eval_command(dataset_path: Path, generations_path: Path, outdir: Path,
                 tau: float, backend_id: str, gt_mode: str, aggregation: str,
                 missing: str, cos_sim_per_term: bool, no_figures: bool) -> None:
    """Score generated questions against the dataset's references."""
    triples = import_jsonl(dataset_path)
    generations = read_generations(generations_path)
    config = _eval_config(tau, backend_id, aggregation, missing, cos_sim_per_term)
    backend = similarity_backend_from_id(backend_id)
    report = evaluate_suite(triples, generations, config, backend, GtMode(gt_mode))
    provenance = {"tool_version": __version__,
                  "config_hash": config_hash(render_eval_config(config))}
    write_eval_report(report, outdir, figures=not no_figures,
                      provenance=provenance)
    click.echo(render_metrics_table(report))
    click.echo(f"reports -> {outdir}")


@cli.command("report")
@click.option("--dataset", "dataset_path", required=True,
              type=click.Path(exists=True, path_type=Path))
@click.option("--out", "outdir", required=True, type=click.Path(path_type=Path))
@click.option("--expected-by-type", default=None,
              help="Reference per-type totals to diff against (informational), "
                   "e.g. 'missing_axiom=266,aligned=812'.")
@click.option("--no-figures", is_flag=True)
def report_command(dataset_path: Path, outdir: Path, expected_by_type,
                   no_figures: bool) -> None:
    """Render corpus statistics for an exported dataset."""
    triples = import_jsonl(dataset_path)
    corpus_stats = stats(triples)
    write_stats_report(corpus_stats, outdir, figures=not no_figures)
    text = render_stats_tables(corpus_stats)
    if expected_by_type:
        expected = {}
        for part in expected_by_type.split(","):
            name, _, value = part.partition("=")
            expected[MisalignmentType(name.strip()).value] = int(value)
        diff = render_type_diff(corpus_stats, expected)
        text += "\n" + diff
        with (outdir / "stats.txt").open("a", encoding="utf-8") as handle:
            handle.write("\n" + diff)
    click.echo(text)
    click.echo(f"reports -> {outdir}")


@cli.command()
@click.option("--dataset", "dataset_path", required=True,
              type=click.Path(exists=True, path_type=Path))
@click.option("--generations", "generations_path", required=True,
              type=click.Path(exists=True, path_type=Path))
@click.option("--out", "outdir", required=True, type=click.Path(path_type=Path))
@click.option("--tau-min", type=float, default=0.0, show_default=True)
@click.option("--tau-max", type=float, default=1.0, show_default=True)
@click.option("--tau-step", type=float, default=0.05, show_default=True)
@click.option("--backend", "backend_id", default="exact", show_default=True)
@click.option("--gt-mode", type=click.Choice([m.value for m in GtMode]),
              default=GtMode.SP_ONLY.value, show_default=True)
@click.option("--aggregation", type=click.Choice([a.value for a in Aggregation]),
              default=Aggregation.MICRO.value, show_default=True)
@click.option("--missing", type=click.Choice([m.value for m in MissingPolicy]),
              default=MissingPolicy.SKIP.value, show_default=True)
@click.option("--no-figures", is_flag=True)
def sweep(dataset_path: Path, generations_path: Path, outdir: Path,
          tau_min: float, tau_max: float, tau_step: float, backend_id: str,
          gt_mode: str, aggregation: str, missing: str, no_figures: bool) -> None:
    """Evaluate across a threshold grid; one report per tau plus a summary."""
    if tau_step <= 0:
        raise click.ClickException("--tau-step must be positive")
    triples = import_jsonl(dataset_path)
    generations = read_generations(generations_path)
    backend = similarity_backend_from_id(backend_id)
    taus = []
    k = 0
    while True:
        tau = round(tau_min + k * tau_step, 10)
        if tau > tau_max + 1e-9:
            break
        taus.append(min(tau, 1.0))
        k += 1
    rows = []
    for tau in taus:
        config = _eval_config(tau, backend_id, aggregation, missing, False)
        report = evaluate_suite(triples, generations, config, backend,
                                GtMode(gt_mode))
        p, r, f1, cs = report.overall.selected(config)
        rows.append({"tau": tau, "precision": p, "recall": r, "f1": f1,
                     "cos_sim": cs})
        write_eval_report(report, outdir, basename=f"metrics_tau{tau:.2f}",
                          figures=False)
    write_sweep_report(rows, outdir, figures=not no_figures)
    click.echo(f"swept {len(taus)} thresholds -> {outdir}")


def main() -> None:
    try:
        cli.main(standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        sys.exit(1)
    except PartialGenerationFailure as exc:
        click.echo(f"error: {exc.message}", err=True)
        sys.exit(2)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except click.exceptions.Abort:
        sys.exit(1)


if __name__ == "__main__":
    main()
