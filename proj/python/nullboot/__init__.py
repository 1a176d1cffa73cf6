"""Exact null-bootstrap engine for perturbed oscillators.

Configurations are the same JSON documents the ``nullboot`` command reads;
they may be passed as dicts or as text.
"""

import json

from ._core import EngineError
from . import _core

__all__ = ["EngineError", "solve", "verify", "compare", "latex", "energies", "rs_energy", "rs_ladder",
           "verify_v_conjugation"]


def _text(config):
    return config if isinstance(config, str) else json.dumps(config)


def _run(config, mode):
    report, _ = _core.run(_text(config), mode)
    return json.loads(report)


def solve(config):
    return _run(config, "solve")


def verify(config):
    return _run(config, "verify")


def compare(config):
    return _run(config, "compare")


def latex(config, mode="solve"):
    return _core.render_latex(_text(config), mode)


def energies(problem, max_order=2):
    """Coefficient lists in n, lowest power first, one per order."""
    return json.loads(_core.energies(problem, max_order))


def rs_energy(problem, order):
    return json.loads(_core.rs_energy(problem, order))


def rs_ladder(problem, order):
    return json.loads(_core.rs_ladder(problem, order))


def verify_v_conjugation(problem, order):
    return _core.verify_v_conjugation(problem, order)
