"""Per-model report tables and the figures rendered next to them.

The report enumerates the stable models of a weight constraint program
(answer sets are always among them) and tabulates, per model: answer-set
status, circularity, and the circularity witness. The table is
tab-delimited; the figures are a model/atom membership grid and a verdict
summary, written as PNG files next to the delimited output.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .model import WeightProgram
from .semantics import DEFAULT_ATOM_CAP, SemanticsReport, analyze_model, stable_models

TABLE_COLUMNS = ("model", "stable", "answer_set", "circular", "witness")


def build_reports(program: WeightProgram, cap: int = DEFAULT_ATOM_CAP) -> list:
    """One SemanticsReport per stable model, in deterministic model order."""
    return [analyze_model(program, model) for model in stable_models(program, cap)]


def _atoms_text(atoms) -> str:
    return ",".join(sorted(a.name for a in atoms))


def render_table(reports: Sequence[SemanticsReport]) -> str:
    """Tab-delimited table, one row per model, header first."""
    lines = ["\t".join(TABLE_COLUMNS)]
    for rep in reports:
        lines.append(
            "\t".join(
                (
                    _atoms_text(rep.model),
                    "yes" if rep.is_stable else "no",
                    "yes" if rep.is_answer_set else "no",
                    "-" if rep.is_circular is None else ("yes" if rep.is_circular else "no"),
                    _atoms_text(rep.circularity_witness) if rep.circularity_witness else "-",
                )
            )
        )
    return "\n".join(lines) + "\n"


def save_figures(
    reports: Sequence[SemanticsReport], all_atoms, directory, stem: str
) -> list:
    """Render the membership grid and the verdict summary as PNG files.

    Returns the written paths. Uses the Agg backend so it works headless.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    atoms = sorted(all_atoms)
    written = []

    fig, ax = plt.subplots(figsize=(max(3, 0.6 * len(atoms) + 2), max(2, 0.4 * len(reports) + 1.5)))
    if reports and atoms:
        grid = [[1 if atom in rep.model else 0 for atom in atoms] for rep in reports]
        ax.imshow(grid, cmap="Greys", aspect="auto", vmin=0, vmax=1)
        ax.set_xticks(range(len(atoms)), [a.name for a in atoms], rotation=45, ha="right")
        ax.set_yticks(range(len(reports)), [f"model {i}" for i in range(len(reports))])
    else:
        ax.text(0.5, 0.5, "no stable models", ha="center", va="center")
        ax.set_axis_off()
    ax.set_title("stable models: atom membership")
    fig.tight_layout()
    path = directory / f"{stem}_models.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(4, 3))
    counts = [
        len(reports),
        sum(1 for r in reports if r.is_answer_set),
        sum(1 for r in reports if r.is_circular),
    ]
    bars = ax.bar(["stable", "answer sets", "circular"], counts, color=["#777", "#2a6", "#c33"])
    ax.bar_label(bars)
    ax.set_ylabel("models")
    ax.set_title("verdict summary")
    fig.tight_layout()
    path = directory / f"{stem}_summary.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)
    return written
