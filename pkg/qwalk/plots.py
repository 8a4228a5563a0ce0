import logging

import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt  # pylint: disable=wrong-import-position


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, format='svg')
    plt.close(fig)
    logging.info('wrote plot %s', path)
    return path


def plot_series(path, series_list, ylabel, title=None, loglog=False):
    fig, ax = plt.subplots(figsize=(6, 4))
    for series in series_list:
        ax.plot(series.t_values, series.y_values, label=series.label)
    if loglog:
        ax.set_xscale('log')
        ax.set_yscale('log')
    ax.set_xlabel('step t')
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    if len(series_list) > 1:
        ax.legend()
    return _save(fig, path)


def plot_sweep(path, grid):
    fig, ax = plt.subplots(figsize=(5, 4))
    mesh = ax.pcolormesh(grid.phi_values, grid.theta_values, grid.entropy, shading='auto')
    fig.colorbar(mesh, ax=ax, label='entropy E (bits)')
    ax.set_xlabel('phi (rad)')
    ax.set_ylabel('theta (rad)')
    ax.set_title(f't = {grid.t}')
    return _save(fig, path)


def plot_distribution(path, dist, t):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(dist.positions, dist.probs, width=1.6)
    ax.set_xlabel('position x')
    ax.set_ylabel('P(x)')
    ax.set_title(f't = {t}')
    return _save(fig, path)
