"""Session evaluation: recommendation effect and the nine impression items.

The recommendation effect is the post-dialogue minus pre-dialogue desire to
visit the recommended attraction (each measured on 0..100, so the effect
spans -100..100). Impression responses are nine 7-point items. Aggregates are
arithmetic means reported to six decimal places; the report path also renders
the figures next to the delimited output.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

IMPRESSION_ITEM_COUNT = 9


@dataclass(frozen=True)
class DesireRating:
    pre: float
    post: float

    def __post_init__(self) -> None:
        for label, value in (("pre", self.pre), ("post", self.post)):
            if not 0.0 <= value <= 100.0:
                raise ValueError(f"{label} desire must be within [0, 100], got {value}")


@dataclass(frozen=True)
class ImpressionResponse:
    ratings: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.ratings) != IMPRESSION_ITEM_COUNT:
            raise ValueError(f"expected {IMPRESSION_ITEM_COUNT} impression ratings, got {len(self.ratings)}")
        for value in self.ratings:
            if not isinstance(value, int) or not 1 <= value <= 7:
                raise ValueError(f"impression ratings are integers in 1..7, got {value!r}")


def recommendation_effect(rating: DesireRating) -> float:
    """Change of desire to visit the recommended attraction, in [-100, 100]."""
    return rating.post - rating.pre


@dataclass(frozen=True)
class AggregateReport:
    count: int
    effects: tuple[float, ...]
    effect_mean: float
    item_means: tuple[float, ...]


def aggregate(sessions: Sequence[tuple[DesireRating, ImpressionResponse]]) -> AggregateReport:
    """Arithmetic means of the recommendation effect and each impression item."""
    if not sessions:
        raise ValueError("cannot aggregate zero sessions")
    effects = tuple(recommendation_effect(rating) for rating, _ in sessions)
    item_means = tuple(
        sum(response.ratings[item] for _, response in sessions) / len(sessions)
        for item in range(IMPRESSION_ITEM_COUNT)
    )
    return AggregateReport(
        count=len(sessions),
        effects=effects,
        effect_mean=sum(effects) / len(effects),
        item_means=item_means,
    )


def render_report(report: AggregateReport, item_texts: Sequence[str]) -> str:
    """Tab-delimited report, all means printed to exactly six decimals."""
    lines = [
        f"sessions\t{report.count}",
        f"recommendation_effect_mean\t{report.effect_mean:.6f}",
    ]
    for index, (text, mean) in enumerate(zip(item_texts, report.item_means), start=1):
        lines.append(f"item_mean\t{index}\t{text}\t{mean:.6f}")
    return "\n".join(lines) + "\n"


def save_report_figures(
    report: AggregateReport,
    item_texts: Sequence[str],
    out_dir: Union[str, Path],
) -> list[Path]:
    """Render the report's figures as PNG files and return their paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    fig, ax = plt.subplots(figsize=(9, 4.5))
    positions = range(1, IMPRESSION_ITEM_COUNT + 1)
    ax.bar(positions, report.item_means, color="#4878cf")
    ax.set_xticks(list(positions))
    ax.set_xticklabels([f"Q{i}" for i in positions])
    ax.set_ylim(1, 7)
    ax.set_ylabel("mean rating (7-point scale)")
    ax.set_title(f"Impression item means (n={report.count})")
    for pos, mean in zip(positions, report.item_means):
        ax.text(pos, mean + 0.05, f"{mean:.2f}", ha="center", fontsize=8)
    fig.tight_layout()
    path = out / "impression_means.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(report.effects, bins=20, range=(-100, 100), color="#6acc64", edgecolor="black")
    ax.axvline(report.effect_mean, color="#d65f5f", linestyle="--",
               label=f"mean {report.effect_mean:.6f}")
    ax.set_xlabel("recommendation effect (post - pre)")
    ax.set_ylabel("sessions")
    ax.set_title("Recommendation effect distribution")
    ax.legend()
    fig.tight_layout()
    path = out / "recommendation_effects.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    return written
