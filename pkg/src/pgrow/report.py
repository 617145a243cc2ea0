"""Figure rendering for the command line reports.

Figures are a convenience view of the delimited output, never a replacement
for it: every plot is drawn from the same estimate objects the CSV writers
consume, and rendering can be switched off without changing any number.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .analysis import Z975, survival_table  # noqa: E402

_META = {"Software": "pgrow"}


def _save(fig, path) -> None:
    fig.savefig(path, dpi=150, metadata=_META)
    plt.close(fig)


def _errorbars(ax, estimate, label):
    xs, ys, lo, hi = [], [], [], []
    for r, p, se, _ in estimate.rows():
        if p <= 0.0:
            continue
        xs.append(r)
        ys.append(p)
        lo.append(min(Z975 * se, p * (1 - 1e-12)))  # keep the log axis happy
        hi.append(Z975 * se)
    ax.errorbar(xs, ys, yerr=[lo, hi], fmt="o-", ms=3, lw=1, capsize=2,
                label=label)


def survival_figure(estimate, path, reference=None, fit=None,
                    title: str | None = None) -> None:
    """Log-scale survival curve with 95% bars. ``reference`` is an optional
    (label, callable n -> probability) pair drawn as a dashed line; ``fit``
    overlays a fitted exponential decay."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    _errorbars(ax, estimate, "estimate")
    xs = list(estimate.radii)
    if reference is not None:
        label, fn = reference
        ax.plot(xs, [fn(r) for r in xs], "k--", lw=1, label=label)
    if fit is not None:
        ax.plot(xs, [math.exp(fit.intercept + fit.slope * r) for r in xs],
                "k:", lw=1,
                label="fit slope %.4f [%.4f, %.4f]" % (fit.slope, fit.ci_low,
                                                       fit.ci_high))
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("survival")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    _save(fig, path)


def pond_figure(comparison, path) -> None:
    """Pond radius tail over critical one-arm connectivity."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    _errorbars(ax, comparison.pond, "pond radius")
    _errorbars(ax, comparison.connectivity, "critical connectivity")
    ax.set_yscale("log")
    ax.set_xscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("survival")
    ax.set_title("%s, box %d, %d ponds" % (comparison.kind, comparison.n_box,
                                           comparison.pond.n))
    ax.legend()
    fig.tight_layout()
    _save(fig, path)


def coupling_figure(comparison, radii, path) -> None:
    """Pond radius tail against the coupled stopped-region tails."""
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    _errorbars(ax, survival_table(comparison.pond_radii, radii, strict=True),
               "pond")
    for stats in comparison.levels:
        _errorbars(ax, survival_table(stats.radii, radii),
                   "stopped, p_r=%g" % stats.p_r)
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("survival")
    ax.set_title("%s ball, box %d" % (comparison.kind, comparison.n_box))
    ax.legend(fontsize=8)
    fig.tight_layout()
    _save(fig, path)


def xi_figure(est, reference: float | None, path) -> None:
    """Point estimate with 95% bar; ``reference`` draws an exact value."""
    fig, ax = plt.subplots(figsize=(4.0, 4.0))
    ax.errorbar([0], [est.xi_hat], yerr=[Z975 * est.se], fmt="o", capsize=4,
                label="estimate")
    if reference is not None:
        ax.axhline(reference, color="k", ls="--", lw=1, label="enumeration")
    ax.set_xticks([0])
    ax.set_xticklabels(["p_w = %g" % est.p_w])
    ax.set_ylabel("mean white cluster size")
    ax.legend()
    fig.tight_layout()
    _save(fig, path)
