"""Entanglement distribution via separable states: Bell-diagonal resources,
the controlled-phase protocol, separability certificates, noise thresholds and
the interaction-unitary search."""

import json as _json

from ._core import (
    BellDiagonalState,
    canonicalize,
    choose_s,
    closed_form_pt,
    decompose_json,
    density_matrix,
    dephasing_upper_bound,
    direct_threshold,
    edss_threshold,
    measures,
    optimize,
    rho_abc,
    rho_suc_threshold,
    run_protocol,
    spectrum,
    verify_checks,
)

__all__ = [
    "BellDiagonalState",
    "canonicalize",
    "choose_s",
    "closed_form_pt",
    "decompose",
    "density_matrix",
    "dephasing_upper_bound",
    "direct_threshold",
    "edss_threshold",
    "measures",
    "optimize",
    "rho_abc",
    "rho_suc_threshold",
    "run_protocol",
    "spectrum",
    "verify_checks",
]


def decompose(state, s, cut="C"):
    """Explicit separable decomposition of the PPT cut, as a dict of verified terms."""
    return _json.loads(decompose_json(state, s, cut))
