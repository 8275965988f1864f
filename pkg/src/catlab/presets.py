"""Shipped experiment configurations.

The desk-scale presets reproduce the bundled studies at tractable trial
counts; the appendix presets use the larger system dimensions and are
expensive, so runners emit a runtime warning for them.
"""
from __future__ import annotations

PRESETS: dict[str, dict] = {
    "fig2": {
        "description": "random-catalyst success vs dimension, anchor conversion",
        "experiment": "fig2",
        "config": {"d_S": 3, "mu": 0.1, "N_C": 500,
                   "sampler": "exponential", "seed": 20260809,
                   "d_C_list": [4, 8, 16, 32, 64, 128, 256]},
    },
    "fig3": {
        "description": "copy-coverage of the catalytic activation set",
        "experiment": "fig3",
        "config": {"d_S": 3, "N_S": 2000, "k_max": 8, "seed": 20260809},
    },
    "fig4": {
        "description": "success probability over the target simplex, anchor source",
        "experiment": "fig4",
        "config": {"d_S": 3, "mu": 0.1, "N_C": 200, "N_S": 500,
                   "sampler": "exponential", "seed": 20260809,
                   "d_C_list": [16, 64, 256]},
    },
    "fig5": {
        "description": "activation fraction over random initial states",
        "experiment": "fig5",
        "config": {"d_S": 3, "mu": 0.1, "gamma_thd": 0.9, "N_C": 100, "N_S": 300,
                   "n_initial": 60, "sampler": "exponential", "seed": 20260809,
                   "d_C_list": [16, 64, 256]},
    },
    "fig6": {
        "description": "activation fraction with multi-qubit product catalysts",
        "experiment": "fig6",
        "config": {"d_S": 3, "mu": 0.1, "gamma_thd": 0.9, "N_S": 300,
                   "n_initial": 60, "seed": 20260809,
                   "multicopy_n_list": [4, 8, 10],
                   "multicopy_r_list": [0.0, 0.1, 0.2, 0.3, 0.4]},
    },
    "appendix-d4": {
        "description": "activation fraction, 4-level systems (expensive)",
        "experiment": "fig5",
        "expensive": True,
        "config": {"d_S": 4, "mu": 0.05, "gamma_thd": 0.9, "N_C": 100, "N_S": 300,
                   "n_initial": 60, "sampler": "exponential", "seed": 20260809,
                   "d_C_list": [16, 64, 256]},
    },
    "appendix-d5": {
        "description": "activation fraction, 5-level systems (expensive)",
        "experiment": "fig5",
        "expensive": True,
        "config": {"d_S": 5, "mu": 0.05, "gamma_thd": 0.9, "N_C": 100, "N_S": 300,
                   "n_initial": 60, "sampler": "exponential", "seed": 20260809,
                   "d_C_list": [16, 64, 256]},
    },
}
