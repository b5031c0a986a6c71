"""Precision, recall, accuracy and F-measure per feature against gold labels."""

import csv
import io
import math
from dataclasses import dataclass
from typing import Optional

from .errors import UndefinedMetricError
from .fuzzy import UNDETERMINED

AVERAGE = "Average"
COLUMNS = ("feature", "P", "R", "Ac", "FM")


@dataclass(frozen=True)
class Confusion:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    def __post_init__(self):
        for name in ("tp", "fp", "fn", "tn"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {v!r}")

    def __add__(self, other):
        return Confusion(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn, self.tn + other.tn)

    @property
    def total(self):
        return self.tp + self.fp + self.fn + self.tn


def precision(c):
    """Percentage of predictions that were right."""
    if c.tp + c.fp == 0:
        raise UndefinedMetricError("precision undefined: no predictions (tp + fp = 0)")
    return 100.0 * c.tp / (c.tp + c.fp)


def recall(c):
    if c.tp + c.fn == 0:
        raise UndefinedMetricError("recall undefined: no gold positives (tp + fn = 0)")
    return 100.0 * c.tp / (c.tp + c.fn)


def accuracy(c):
    """A ratio in [0, 1], not a percentage."""
    if c.total == 0:
        raise UndefinedMetricError("accuracy undefined: empty confusion table")
    return (c.tp + c.tn) / c.total


def fmeasure(p, r):
    if p + r == 0:
        raise UndefinedMetricError("F-measure undefined: precision + recall = 0")
    return 2.0 * p * r / (p + r)


def _safe(fn, *args):
    try:
        return fn(*args)
    except UndefinedMetricError:
        return None


@dataclass(frozen=True)
class MetricsRow:
    feature: str
    confusion: Optional[Confusion]
    precision: Optional[float]
    recall: Optional[float]
    accuracy: Optional[float]
    fmeasure: Optional[float]


def metrics_row(feature, c):
    p = _safe(precision, c)
    r = _safe(recall, c)
    fm = _safe(fmeasure, p, r) if p is not None and r is not None else None
    return MetricsRow(feature, c, p, r, _safe(accuracy, c), fm)


def _predicted_term(pred, feature):
    t = pred.get(feature)
    return None if t in (None, UNDETERMINED) else t


def confusion_for(feature, gold, predicted):
    """Count one feature over every gold-labelled item.

    ``gold`` and ``predicted`` map item id -> {feature: term}. A correct term
    is a TP, a missing or undetermined prediction for a labelled item a FN,
    and any other prediction (wrong term, or a feature the gold does not
    name) a FP.
    """
    tp = fp = fn = tn = 0
    for item, labels in gold.items():
        g = labels.get(feature)
        p = _predicted_term(predicted.get(item, {}), feature)
        if g is not None:
            if p == g:
                tp += 1
            elif p is None:
                fn += 1
            else:
                fp += 1
        elif p is not None:
            fp += 1
        else:
            tn += 1
    return Confusion(tp, fp, fn, tn)


def evaluate(gold, predicted, features=None):
    """Per-feature metric rows (sorted by feature) followed by an unweighted Average row."""
    if features is None:
        names = set()
        for labels in gold.values():
            names.update(labels)
        for item in gold:
            names.update(f for f, t in predicted.get(item, {}).items() if t not in (None, UNDETERMINED))
        features = sorted(names)
    rows = [metrics_row(f, confusion_for(f, gold, predicted)) for f in features]
    rows.append(average_row(rows))
    return rows


def average_row(rows):
    def mean(attr):
        vals = [getattr(r, attr) for r in rows if getattr(r, attr) is not None]
        return math.fsum(vals) / len(vals) if vals else None

    return MetricsRow(AVERAGE, None, mean("precision"), mean("recall"), mean("accuracy"), mean("fmeasure"))


def _fmt(v, digits=2):
    return "n/a" if v is None else f"{v:.{digits}f}"


def _cells(row):
    return [row.feature, _fmt(row.precision), _fmt(row.recall), _fmt(row.accuracy), _fmt(row.fmeasure)]


def to_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for row in rows:
        w.writerow(_cells(row))
    return buf.getvalue()


def to_text_table(rows):
    cells = [list(COLUMNS)] + [_cells(r) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(COLUMNS))]
    lines = []
    for i, r in enumerate(cells):
        lines.append("  ".join([r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])]).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
