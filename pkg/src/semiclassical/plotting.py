"""Matplotlib renderings of profiles, errors and scans (written to files only)."""
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = ["plot_profiles", "plot_differences", "plot_scan"]

STYLE = {
    "exact": dict(color="k", ls="-", lw=1.4, zorder=1),
    "tf": dict(color="tab:blue", ls="--", lw=1.2),
    "uniform": dict(color="tab:red", ls=":", lw=1.8, zorder=3),
    "local_functional": dict(color="tab:green", ls="-.", lw=1.2),
    "langer_sum": dict(color="tab:purple", ls=(0, (5, 2, 1, 2)), lw=1.0),
    "allowed_limit": dict(color="tab:orange", ls="-", lw=0.8),
    "evanescent_limit": dict(color="tab:brown", ls="-", lw=0.8),
}

LABELS = {
    "exact": "exact",
    "tf": "Thomas-Fermi",
    "uniform": "uniform semiclassical",
    "local_functional": r"$\pi^2 \hbar^2 n_{sc}^3/6$",
    "langer_sum": "Langer orbitals",
    "allowed_limit": "allowed-region limit",
    "evanescent_limit": "evanescent limit",
}


def _finish(fig, ax, path, title):
    if title:
        ax.set_title(title, fontsize=10)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_profiles(profiles: dict, path, title=None, marks=None):
    """Overlay profiles (method -> DensityProfile) on one axis.

    ``marks`` maps labels to x positions drawn as thin vertical lines.
    """
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    observable = None
    for method, prof in profiles.items():
        observable = prof.observable
        ax.plot(prof.grid, prof.values, label=LABELS.get(method, method), **STYLE.get(method, {}))
    for label, x in (marks or {}).items():
        ax.axvline(x, color="0.6", lw=0.6)
        ax.annotate(label, (x, 0), xytext=(2, 2), textcoords="offset points", fontsize=7, color="0.4")
    ax.axhline(0.0, color="0.8", lw=0.5)
    ax.set_xlabel("x")
    ax.set_ylabel("n(x)" if observable == "number" else "t(x)")
    return _finish(fig, ax, path, title)


def plot_differences(curves, path, title=None):
    """``curves`` is a list of ``(label, x, y, x_m)``; each ``x_m`` is marked."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for label, x, y, x_m in curves:
        (line,) = ax.plot(x, y, lw=1.0, label=label)
        if x_m is not None:
            ax.axvline(x_m, color=line.get_color(), lw=0.5, ls=":")
    ax.axhline(0.0, color="0.8", lw=0.5)
    ax.set_xlabel("x")
    ax.set_ylabel(r"$n_{sc}(x) - n(x)$")
    return _finish(fig, ax, path, title)


def plot_scan(table: dict, columns, path, title=None, scale=None, ylabel=r"$\eta$", flag="near_capacity",
              logy=True):
    """Error measures against N; ``scale`` multiplies named columns before plotting."""
    scale = scale or {}
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    N = np.asarray(table["N"])
    for col in columns:
        s = scale.get(col, 1.0)
        label = col if s == 1.0 else f"{col} x {s:g}"
        ax.plot(N, s * np.asarray(table[col]), marker="o", ms=3, lw=1.0, label=label)
    if flag in table and np.any(table[flag]):
        first = N[np.asarray(table[flag], dtype=bool)].min()
        ax.axvspan(first - 0.5, N.max() + 0.5, color="0.9", label="near capacity")
    if logy:
        ax.set_yscale("log")
    ax.xaxis.get_major_locator().set_params(integer=True)
    ax.set_xlabel("N")
    ax.set_ylabel(ylabel)
    return _finish(fig, ax, path, title)
