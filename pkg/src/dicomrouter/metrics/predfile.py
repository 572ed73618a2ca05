"""Predictions interchange CSV: id,label,pred,p0,p1,p2,p3,p4."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from ..nn.classes import NUM_CLASSES

HEADER = ["id", "label", "pred"] + [f"p{k}" for k in range(NUM_CLASSES)]


@dataclass(frozen=True)
class PredictionRows:
    ids: list[str]
    labels: np.ndarray
    preds: np.ndarray
    probs: np.ndarray  # (N, 5)


def write_predictions(ids, labels, preds, probs) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(HEADER)
    for i, item_id in enumerate(ids):
        writer.writerow([item_id, int(labels[i]), int(preds[i])] + [repr(float(p)) for p in probs[i]])
    return buf.getvalue()


def read_predictions(text: str) -> PredictionRows:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != HEADER:
        raise ValueError(f"bad predictions header {header!r}, expected {HEADER!r}")
    ids: list[str] = []
    labels: list[int] = []
    preds: list[int] = []
    probs: list[list[float]] = []
    for row in reader:
        if not row:
            continue
        if len(row) != len(HEADER):
            raise ValueError(f"bad predictions row {row!r}")
        ids.append(row[0])
        labels.append(int(row[1]))
        preds.append(int(row[2]))
        probs.append([float(v) for v in row[3:]])
    return PredictionRows(
        ids=ids,
        labels=np.array(labels, dtype=np.intp),
        preds=np.array(preds, dtype=np.intp),
        probs=np.array(probs, dtype=np.float64).reshape(len(ids), NUM_CLASSES),
    )
