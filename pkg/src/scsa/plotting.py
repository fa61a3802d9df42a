"""Matplotlib figures written next to the CSV outputs."""
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "lines.linewidth": 1.2,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "svg.hashsalt": "scsa",
    "svg.fonttype": "none",
}


def figsize(width=6.5, ratio=None):
    if ratio is None:
        ratio = (np.sqrt(5.0) - 1.0) / 2.0
    return width, width * ratio


def save(fig, path):
    fig.savefig(path, metadata={"Date": None})
    plt.close(fig)
    return path


def _shade_window(ax, x, mask):
    if mask is None or not mask.any():
        return
    ax.fill_between(x, 0, 1, where=mask, color="0.9", step="mid",
                    transform=ax.get_xaxis_transform(), zorder=0, label="window K")


def reconstruction_pair(x, y_true, recons, errors=None, window=None, title=""):
    """Signal vs reconstruction(s) (a) and relative error on the window (b).

    ``recons`` maps curve labels to arrays on ``x``; ``errors`` maps labels to
    arrays over ``window.indices``.
    """
    mask = None if window is None else window.mask()
    with plt.rc_context(STYLE):
        ncols = 2 if errors else 1
        fig, axes = plt.subplots(1, ncols, figsize=figsize(6.5 if errors else 4.0, 0.42),
                                 squeeze=False, constrained_layout=True)
        ax = axes[0, 0]
        _shade_window(ax, x, mask)
        if y_true is not None:
            ax.plot(x, y_true, "k-", lw=1.8, label="signal")
        for label, values in recons.items():
            ax.plot(x, values, "--", label=label)
        ax.set_xlabel("x")
        ax.set_title("(a) reconstruction", loc="left")
        ax.legend(frameon=False)
        if errors:
            ax = axes[0, 1]
            xe = x
            if window is not None:
                idx = window.indices
                period = x[1] - x[0] + x[-1] - x[0]
                xe = x[idx] + period * (idx < idx[0])  # unwrap across the seam
            for label, err in errors.items():
                ax.semilogy(xe, err, label=label)
            ax.set_xlabel("x")
            ax.set_title("(b) relative error on K", loc="left")
            ax.legend(frameon=False)
        if title:
            fig.suptitle(title)
    return fig


def spectrum_plot(spectra):
    """Negative eigenvalues against their index, one series per ``h``."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=figsize(4.5), constrained_layout=True)
        for h, ev in spectra.items():
            ax.plot(np.arange(1, ev.size + 1), ev, ".", ms=3, label=f"h={h:g}")
        ax.set_xlabel("n")
        ax.set_ylabel(r"$\lambda_{hn}$")
        ax.legend(frameon=False)
    return fig


def convergence_plot(fits):
    """Log-log error against h with the fitted slope, one series per label."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=figsize(4.5), constrained_layout=True)
        for label, fit in fits.items():
            line, = ax.loglog(fit.h_values, fit.errors, "o", ms=4)
            c = np.exp(np.mean(np.log(fit.errors) - fit.order * np.log(fit.h_values)))
            ax.loglog(fit.h_values, c * fit.h_values**fit.order, "-", color=line.get_color(),
                      label=f"{label}: p={fit.order:.2f}")
        ax.set_xlabel("h")
        ax.set_ylabel("sup relative error on K")
        ax.legend(frameon=False)
    return fig
