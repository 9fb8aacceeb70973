"""Command-line lifecycle driver: fixture -> split -> build-index -> train
-> evaluate / ablate / verify / serve.

Exit codes: 0 success, 1 usage error, 2 data/validation error,
3 runtime/upstream error. Progress goes to stderr, machine output to
stdout or --out files.
"""

from __future__ import annotations

import hashlib
import json
import sys

import click

from . import dataset as ds
from .classifier import (
    TrainConfig,
    checkpoint_load,
    checkpoint_save,
)
from .encoding import EncoderConfig, ReferenceEncoder, RemoteEncoder
from .errors import DataError, HifactError, RuntimeFailure, StageError
from .explanation import GeneratorConfig, ReferenceGenerator, RemoteGenerator
from .index import FlatIndex
from .pipeline import (
    CLAIM_ONLY,
    CONCATENATED,
    PipelineArtifacts,
    ablate_retrieval,
    build_artifacts,
    evaluate,
    verify,
)
from .text import load_english_lexicon
from .types import EMBED_DIM


def _progress(msg: str) -> None:
    click.echo(msg, err=True)


def _parse_floats(s: str, n: int, what: str) -> tuple[float, ...]:
    parts = s.split(",")
    if len(parts) != n:
        raise click.UsageError(f"{what} must be {n} comma-separated numbers")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise click.UsageError(f"{what} must be numeric") from None


def _make_encoder(kind: str, endpoint: str | None):
    if kind == "remote":
        import os

        url = endpoint or os.environ.get("HIFACT_ENCODER_URL", "")
        if not url:
            raise click.UsageError("remote encoder requires --encoder-url or HIFACT_ENCODER_URL")
        return RemoteEncoder(EncoderConfig(remote_endpoint=url))
    return ReferenceEncoder()


def _make_generator(kind: str, endpoint: str | None):
    if kind == "remote":
        import os

        url = endpoint or os.environ.get("HIFACT_GENERATOR_URL", "")
        if not url:
            raise click.UsageError("remote generator requires --generator-url or HIFACT_GENERATOR_URL")
        return RemoteGenerator(GeneratorConfig(remote_endpoint=url))
    return ReferenceGenerator()


def _file_digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        h.update(f.read())
    return h.hexdigest()[:16]


def _assemble_artifacts(corpus_path: str, index_path: str, checkpoint_path: str,
                        encoder_kind: str, generator_kind: str,
                        encoder_url: str | None, generator_url: str | None):
    corpus = ds.load_corpus(corpus_path)
    index = FlatIndex.load(index_path)
    params = checkpoint_load(checkpoint_path)
    mode = CLAIM_ONLY if params.input_dim == EMBED_DIM else CONCATENATED
    store = {}
    for rec in corpus.records:
        store.setdefault(rec.evidence.id, rec.evidence)
    snapshot = {
        "mode": mode,
        "encoder": encoder_kind,
        "generator": generator_kind,
        "index_digest": _file_digest(index_path),
        "checkpoint_digest": _file_digest(checkpoint_path),
    }
    artifacts = PipelineArtifacts(
        encoder=_make_encoder(encoder_kind, encoder_url),
        index=index,
        params=params,
        generator=_make_generator(generator_kind, generator_url),
        evidence_store=store,
        mode=mode,
        config_snapshot=snapshot,
    )
    return corpus, artifacts


@click.group(name="hifact")
def cli():
    """Evidence-grounded claim verification toolkit."""


@cli.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
def ingest(corpus_path):
    """Validate a corpus file and report its size."""
    corpus = ds.load_corpus(corpus_path)
    click.echo(json.dumps({"n_records": len(corpus), "path": corpus_path}))


@cli.command()
@click.option("--n", default=200, show_default=True)
@click.option("--weights", default="1,1,1,1", show_default=True,
              help="label weights: true,false,partially_true,unverified")
@click.option("--english-ratio", default=0.55, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
def fixture(n, weights, english_ratio, seed, out_path):
    """Generate the deterministic synthetic corpus."""
    w = _parse_floats(weights, 4, "--weights")
    corpus = ds.generate_fixture(n, w, english_ratio, seed)
    ds.save_corpus(corpus, out_path)
    _progress(f"wrote {len(corpus)} records to {out_path}")


@cli.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
def stats(corpus_path):
    """Corpus statistics as JSON."""
    corpus = ds.load_corpus(corpus_path)
    s = ds.corpus_stats(corpus, load_english_lexicon())
    click.echo(json.dumps(s.to_dict(), sort_keys=True))


@cli.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--ratios", default="0.7,0.1,0.2", show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", "out_dir", required=True, type=click.Path())
def split(corpus_path, ratios, seed, out_dir):
    """Stratified train/val/test split; writes one id-per-line file each."""
    corpus = ds.load_corpus(corpus_path)
    r = _parse_floats(ratios, 3, "--ratios")
    assignment = ds.stratified_split(corpus, r, seed)
    ds.save_split(assignment, out_dir)
    _progress(
        f"split {len(corpus)} records into "
        f"{len(assignment.train_ids)}/{len(assignment.val_ids)}/{len(assignment.test_ids)}"
    )


@cli.command("build-index")
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--encoder", "encoder_kind", default="reference",
              type=click.Choice(["reference", "remote"]), show_default=True)
@click.option("--encoder-url", default=None)
def build_index(corpus_path, out_path, encoder_kind, encoder_url):
    """Encode all evidence and persist the flat index."""
    corpus = ds.load_corpus(corpus_path)
    encoder = _make_encoder(encoder_kind, encoder_url)
    index = FlatIndex(dim=EMBED_DIM)
    seen = {}
    for rec in corpus.records:
        ev = rec.evidence
        if ev.id in seen and seen[ev.id] == ev:
            continue
        index.add(ev.id, encoder.encode(ev.text))
        seen[ev.id] = ev
    index.save(out_path)
    _progress(f"indexed {len(index)} evidence docs to {out_path}")


@cli.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--splits", "splits_dir", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--encoder", "encoder_kind", default="reference",
              type=click.Choice(["reference", "remote"]), show_default=True)
@click.option("--encoder-url", default=None)
@click.option("--mode", default=CLAIM_ONLY,
              type=click.Choice([CLAIM_ONLY, CONCATENATED]), show_default=True)
@click.option("--hidden-width", default=256, show_default=True)
@click.option("--learning-rate", default=1e-3, show_default=True)
@click.option("--batch-size", default=32, show_default=True)
@click.option("--max-epochs", default=50, show_default=True)
@click.option("--patience", default=5, show_default=True)
@click.option("--seed", default=0, show_default=True)
def train(corpus_path, splits_dir, out_path, encoder_kind, encoder_url, mode,
          hidden_width, learning_rate, batch_size, max_epochs, patience, seed):
    """Train the veracity classifier and save a checkpoint."""
    corpus = ds.load_corpus(corpus_path)
    assignment = ds.load_split(splits_dir)
    config = TrainConfig(
        learning_rate=learning_rate, batch_size=batch_size, max_epochs=max_epochs,
        patience=patience, seed=seed, hidden_width=hidden_width,
    )
    artifacts = build_artifacts(
        corpus, assignment, _make_encoder(encoder_kind, encoder_url),
        ReferenceGenerator(), config, mode=mode,
    )
    checkpoint_save(artifacts.params, out_path)
    report = artifacts.train_report
    _progress(
        f"trained {report.epochs_run} epochs, best epoch {report.best_epoch}, "
        f"val macro-F1 {report.final_val_macro_f1:.4f}; checkpoint at {out_path}"
    )
    click.echo(json.dumps(report.to_dict(), sort_keys=True))


def _artifact_options(fn):
    for deco in (
        click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True)),
        click.option("--index", "index_path", required=True, type=click.Path(exists=True)),
        click.option("--checkpoint", "checkpoint_path", required=True, type=click.Path(exists=True)),
        click.option("--encoder", "encoder_kind", default="reference",
                     type=click.Choice(["reference", "remote"]), show_default=True),
        click.option("--generator", "generator_kind", default="reference",
                     type=click.Choice(["reference", "remote"]), show_default=True),
        click.option("--encoder-url", default=None),
        click.option("--generator-url", default=None),
    ):
        fn = deco(fn)
    return fn


@cli.command("evaluate")
@_artifact_options
@click.option("--splits", "splits_dir", required=True, type=click.Path(exists=True))
@click.option("--split", "which", default="test", show_default=True)
@click.option("--out", "out_path", default=None, type=click.Path())
@click.option("--table", is_flag=True, help="also print the aligned text table to stderr")
def evaluate_cmd(corpus_path, index_path, checkpoint_path, encoder_kind, generator_kind,
                 encoder_url, generator_url, splits_dir, which, out_path, table):
    """Evaluate the pipeline over one split; emits the report JSON."""
    corpus, artifacts = _assemble_artifacts(
        corpus_path, index_path, checkpoint_path,
        encoder_kind, generator_kind, encoder_url, generator_url,
    )
    assignment = ds.load_split(splits_dir)
    report = evaluate(artifacts, corpus, assignment, which)
    doc = report.to_json()
    if out_path:
        with open(out_path, "w", encoding="utf-8") as f:
            f.write(doc + "\n")
        _progress(f"report written to {out_path}")
    else:
        click.echo(doc)
    if table:
        _progress(report.to_text_table())


@cli.command("ablate")
@_artifact_options
@click.option("--splits", "splits_dir", required=True, type=click.Path(exists=True))
@click.option("--split", "which", default="test", show_default=True)
def ablate_cmd(corpus_path, index_path, checkpoint_path, encoder_kind, generator_kind,
               encoder_url, generator_url, splits_dir, which):
    """Retrieval ablation over a concatenated-mode checkpoint."""
    corpus, artifacts = _assemble_artifacts(
        corpus_path, index_path, checkpoint_path,
        encoder_kind, generator_kind, encoder_url, generator_url,
    )
    assignment = ds.load_split(splits_dir)
    with_r, without_r, delta = ablate_retrieval(artifacts, corpus, assignment, which)
    click.echo(json.dumps({
        "with_retrieval": with_r.to_dict(),
        "without_retrieval": without_r.to_dict(),
        "accuracy_delta": delta,
    }, sort_keys=True))


@cli.command("verify")
@_artifact_options
@click.option("--claim", required=True)
def verify_cmd(corpus_path, index_path, checkpoint_path, encoder_kind, generator_kind,
               encoder_url, generator_url, claim):
    """One-shot verification of a single claim."""
    _corpus, artifacts = _assemble_artifacts(
        corpus_path, index_path, checkpoint_path,
        encoder_kind, generator_kind, encoder_url, generator_url,
    )
    result = verify(artifacts, claim)
    click.echo(result.to_json())


@cli.command("serve")
@_artifact_options
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve_cmd(corpus_path, index_path, checkpoint_path, encoder_kind, generator_kind,
              encoder_url, generator_url, host, port):
    """Run the HTTP service over prebuilt artifacts."""
    import uvicorn

    from .service import ServiceState, create_app

    corpus, artifacts = _assemble_artifacts(
        corpus_path, index_path, checkpoint_path,
        encoder_kind, generator_kind, encoder_url, generator_url,
    )
    stats_doc = ds.corpus_stats(corpus, load_english_lexicon()).to_dict()
    state = ServiceState(artifacts=artifacts, stats=stats_doc)
    app = create_app(state)
    _progress(f"serving on http://{host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


def main(argv: list[str] | None = None) -> int:
    """Entry point with the documented exit-code mapping."""
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        cli.main(args=args, standalone_mode=False)
        return 0
    except click.UsageError as e:
        click.echo(f"error: {e.format_message()}", err=True)
        with click.Context(cli) as ctx:
            click.echo(cli.get_help(ctx), err=True)
        return 1
    except click.ClickException as e:
        e.show()
        return 1
    except click.Abort:
        return 1
    except StageError as e:
        click.echo(f"error: {e}", err=True)
        return 3 if isinstance(e.cause, RuntimeFailure) else 2
    except DataError as e:
        click.echo(f"error: {e}", err=True)
        return 2
    except (RuntimeFailure, OSError) as e:
        click.echo(f"error: {e}", err=True)
        return 3
    except HifactError as e:
        click.echo(f"error: {e}", err=True)
        return 3


if __name__ == "__main__":
    sys.exit(main())
