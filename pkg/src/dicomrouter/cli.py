"""Command-line interface."""
from __future__ import annotations

import json
import sys
import threading
from pathlib import Path

import click
import numpy as np

from . import nn
from .dicom import dump_file, parse_file
from .metrics import (
    BenchResult,
    ReportRow,
    SplitSpec,
    bootstrap_ci,
    confusion_matrix,
    emit_report,
    emit_report_csv,
    latency_benchmark,
    macro_metrics,
    read_predictions,
    stratified_split,
)
from .pipeline import export_png, preprocess
from .service import AuditLog, DirectoryWatcher, ReviewStore, RouterCore, create_app, load_config


@click.group()
def main() -> None:
    """X-ray body-part classification and routing for DICOM archives."""


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def dump(file: str) -> None:
    """Print one 'GGGG,EEEE VR length value' line per element."""
    parsed = parse_file(Path(file).read_bytes())
    click.echo(dump_file(parsed), nl=False)


@main.command()
@click.argument("dicom", type=click.Path(exists=True, dir_okay=False))
@click.argument("png", type=click.Path(dir_okay=False))
@click.option("--size", default=512, show_default=True, help="Output resolution.")
def render(dicom: str, png: str, size: int) -> None:
    """Convert a DICOM file to an 8-bit grayscale PNG rendition."""
    tensor = preprocess(Path(dicom).read_bytes(), size=size)
    Path(png).write_bytes(export_png(tensor))
    click.echo(f"wrote {png} ({size}x{size})")


@main.command("make-synth")
@click.option("--out-dir", required=True, type=click.Path(file_okay=False))
@click.option("--n-per-class", default=10, show_default=True)
@click.option("--image-size", default=64, show_default=True)
@click.option("--seed", default=0, show_default=True)
def make_synth(out_dir: str, n_per_class: int, image_size: int, seed: int) -> None:
    """Generate the five-pattern synthetic dataset as PNGs plus labels.csv."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    examples = nn.make_synthetic_dataset(n_per_class, image_size, seed)
    lines = ["filename,label,class"]
    for i, ex in enumerate(examples):
        name = f"{i:05d}_{nn.CLASS_NAMES[ex.label]}.png"
        (out / name).write_bytes(export_png(ex.image))
        lines.append(f"{name},{int(ex.label)},{nn.CLASS_NAMES[ex.label]}")
    (out / "labels.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    click.echo(f"wrote {len(examples)} images to {out}")


@main.command()
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--n-per-class", default=250, show_default=True)
@click.option("--image-size", default=64, show_default=True)
@click.option("--val-fraction", default=0.2, show_default=True)
@click.option("--epochs", default=30, show_default=True)
@click.option("--batch-size", default=32, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--lr-max", default=1e-4, show_default=True)
@click.option("--restart-period", default=10.0, show_default=True)
@click.option("--period-mult", default=2.0, show_default=True)
def train(
    out_path: str,
    n_per_class: int,
    image_size: int,
    val_fraction: float,
    epochs: int,
    batch_size: int,
    seed: int,
    lr_max: float,
    restart_period: float,
    period_mult: float,
) -> None:
    """Train the built-in network on the synthetic dataset."""
    examples = nn.make_synthetic_dataset(n_per_class, image_size, seed)
    n_val = max(1, int(n_per_class * val_fraction))
    train_set, val_set = [], []
    for cls in range(nn.NUM_CLASSES):
        block = examples[cls * n_per_class : (cls + 1) * n_per_class]
        train_set.extend(block[: n_per_class - n_val])
        val_set.extend(block[n_per_class - n_val :])

    schedule = nn.LrSchedule(lr_max=lr_max, t0=restart_period, t_mult=period_mult)
    config = nn.TrainConfig(epochs=epochs, batch_size=batch_size, seed=seed, schedule=schedule)
    params, history = nn.train(train_set, val_set, config)
    for stats in history:
        click.echo(
            f"epoch {stats.epoch:3d}  loss {stats.train_loss:.4f}  "
            f"val_acc {stats.val_accuracy:.4f}  lr {stats.lr_last:.2e}"
        )
    Path(out_path).write_bytes(nn.save_weights(params))
    best = max(h.val_accuracy for h in history)
    click.echo(f"saved weights to {out_path} (best val accuracy {best:.4f})")


@main.command()
@click.option("--weights", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--input-size", default=None, type=int, help="Resample inputs to this size first.")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def predict(weights: str, input_size: int | None, file: str) -> None:
    """Classify one DICOM file."""
    params = nn.load_weights(Path(weights).read_bytes())
    backend = nn.RouterNetBackend(params, input_size=input_size)
    tensor = preprocess(Path(file).read_bytes())
    cls, probs, latency = nn.predict(backend, tensor)
    click.echo(
        json.dumps(
            {
                "class": nn.CLASS_NAMES[cls],
                "class_code": int(cls),
                "probs": [float(p) for p in probs],
                "latency_s": latency,
            }
        )
    )


@main.command()
@click.option("--labels", "labels_csv", required=True, type=click.Path(exists=True, dir_okay=False),
              help="CSV with a 'label' column of class codes.")
@click.option("--seed", default=0, show_default=True)
@click.option("--out-dir", required=True, type=click.Path(file_okay=False))
def split(labels_csv: str, seed: int, out_dir: str) -> None:
    """Stratified 0.7/0.15/0.15 split; writes one index file per subset."""
    import csv as csvmod

    with open(labels_csv, newline="", encoding="utf-8") as fh:
        reader = csvmod.DictReader(fh)
        if reader.fieldnames is None or "label" not in reader.fieldnames:
            raise click.ClickException("labels CSV needs a 'label' column")
        labels = [int(row["label"]) for row in reader]

    train_idx, val_idx, test_idx = stratified_split(np.array(labels), SplitSpec(seed=seed))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, idx in (("train", train_idx), ("val", val_idx), ("test", test_idx)):
        (out / f"{name}_indices.txt").write_text("\n".join(map(str, idx.tolist())) + "\n")
    click.echo(f"split sizes: train={len(train_idx)} val={len(val_idx)} test={len(test_idx)}")


@main.command()
@click.option("--predictions", "pred_csv", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--model-name", default="routernet-mu", show_default=True)
@click.option("--iterations", default=10_000, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--inference-time", default=0.0, show_default=True, help="Mean seconds per image to report.")
@click.option("--parameters", default=nn.param_count(), show_default=True)
@click.option("--csv", "as_csv", is_flag=True, help="Emit machine-readable CSV instead of text.")
def evaluate(pred_csv: str, model_name: str, iterations: int, seed: int,
             inference_time: float, parameters: int, as_csv: bool) -> None:
    """Confusion metrics with bootstrap CIs from a predictions CSV."""
    rows = read_predictions(Path(pred_csv).read_text(encoding="utf-8"))
    cm = confusion_matrix(rows.preds, rows.labels)
    macro = macro_metrics(cm)

    def metric_fn(name: str):
        return lambda p, l: macro_metrics(confusion_matrix(p, l))[name]

    cis = {
        name: bootstrap_ci(rows.preds, rows.labels, metric_fn(name), iterations=iterations, seed=seed)
        for name in ("recall", "precision", "f1")
    }
    report_row = ReportRow(
        model=model_name,
        recall=cis["recall"],
        precision=cis["precision"],
        f1=cis["f1"],
        inference_time_s=inference_time,
        parameters=parameters,
    )
    click.echo((emit_report_csv if as_csv else emit_report)([report_row]), nl=False)
    if not as_csv:
        click.echo(f"macro: {json.dumps(macro)}")


@main.command()
@click.option("--weights", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--input-size", default=None, type=int)
@click.option("--images", default=20, show_default=True, help="Number of synthetic probe images.")
@click.option("--image-size", default=512, show_default=True)
@click.option("--warmup", default=5, show_default=True)
@click.option("--seed", default=0, show_default=True)
def bench(weights: str, input_size: int | None, images: int, image_size: int, warmup: int, seed: int) -> None:
    """Mean per-image CPU inference latency on synthetic probes."""
    params = nn.load_weights(Path(weights).read_bytes())
    backend = nn.RouterNetBackend(params, input_size=input_size)
    examples = nn.make_synthetic_dataset(max(1, images // nn.NUM_CLASSES + 1), image_size, seed)
    probe = [ex.image for ex in examples[:images]]
    result: BenchResult = latency_benchmark(backend, probe, warmup=warmup)
    click.echo(json.dumps({"mean_s": result.mean_s, "images": len(result.times_s), "warmup": result.warmup}))


def _build_core(config_path: str) -> RouterCore:
    config = load_config(config_path)
    backend = None
    if config.weights:
        params = nn.load_weights(Path(config.weights).read_bytes())
        backend = nn.RouterNetBackend(params, input_size=config.input_size)
    audit = AuditLog(config.audit_path)
    review = ReviewStore(config.review_state_path, second_round=config.second_round)
    return RouterCore(config, backend, audit, review)


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
def serve(config_path: str) -> None:
    """Run the HTTP service (and the directory watcher when configured)."""
    import uvicorn

    core = _build_core(config_path)
    app = create_app(core)
    host, _, port = core.config.listen.partition(":")

    stop = threading.Event()
    if core.config.watch_dir:
        watcher = DirectoryWatcher(core.config.watch_dir, core)
        thread = threading.Thread(target=watcher.run, args=(stop,), daemon=True)
        thread.start()
    try:
        uvicorn.run(app, host=host or "127.0.0.1", port=int(port or "8080"), log_level="warning")
    finally:
        stop.set()


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def ingest(config_path: str, file: str) -> None:
    """Classify and route a single file."""
    core = _build_core(config_path)
    decision = core.ingest(Path(file).read_bytes(), source_name=Path(file).name)
    click.echo(
        json.dumps(
            {
                "id": decision.item_id,
                "status": decision.status,
                "destination": decision.destination,
                "probs": decision.probs,
            }
        )
    )


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.argument("directory", type=click.Path(exists=True, file_okay=False))
def watch(config_path: str, directory: str) -> None:
    """Continuously ingest completed files dropped into a directory."""
    core = _build_core(config_path)
    watcher = DirectoryWatcher(directory, core)
    click.echo(f"watching {directory} (ctrl-c to stop)")
    stop = threading.Event()
    try:
        watcher.run(stop)
    except KeyboardInterrupt:
        stop.set()
        click.echo(f"processed {watcher.processed_count} files")


if __name__ == "__main__":
    main()
