"""Offline report rendering: delimited counts plus bar-chart figures.

For each requested grouping ("year" or "meta:<key>") the session's
effective selection is aggregated and written twice: a two-column CSV
and a PNG rendered with the Agg backend, so this works headless.
"""

from __future__ import annotations

import csv
import logging
import re
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .corpus import CorpusIndex
from .session import SearchSession, effective_selection

logger = logging.getLogger(__name__)

_SLUG_RE = re.compile(r"[^A-Za-z0-9_-]+")


def _slug(grouping: str) -> str:
    if grouping == "year":
        return "timeline"
    return "facet_" + _SLUG_RE.sub("_", grouping[len("meta:"):])


def _counts(index: CorpusIndex, entities, grouping: str) -> dict[str, int]:
    if grouping == "year":
        return {str(year): n for year, n in index.timeline_counts(entities).items()}
    if grouping.startswith("meta:") and len(grouping) > len("meta:"):
        return index.facet_counts(entities, grouping[len("meta:"):])
    raise ValueError(f"unsupported grouping: {grouping!r}")


def render_report(
    index: CorpusIndex,
    session: SearchSession,
    out_dir: str | Path,
    groupings=("year",),
) -> list[Path]:
    """Write one CSV and one PNG per grouping; returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _, entities = effective_selection(session)

    written: list[Path] = []
    for grouping in groupings:
        counts = _counts(index, entities, grouping)
        slug = _slug(grouping)

        csv_path = out / f"{slug}.csv"
        with open(csv_path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow([grouping, "count"])
            for key, n in counts.items():
                writer.writerow([key, n])
        written.append(csv_path)

        png_path = out / f"{slug}.png"
        fig, ax = plt.subplots(figsize=(8, 4.5))
        keys = list(counts)
        ax.bar(range(len(keys)), [counts[k] for k in keys], color="#4878a8")
        ax.set_xticks(range(len(keys)))
        ax.set_xticklabels(keys, rotation=45, ha="right")
        ax.set_ylabel("link mentions")
        ax.set_title(f"{session.period.label}: mentions by {grouping}")
        fig.tight_layout()
        fig.savefig(png_path, dpi=120)
        plt.close(fig)
        written.append(png_path)

        logger.info("report grouping %s: %d rows", grouping, len(counts))
    return written
