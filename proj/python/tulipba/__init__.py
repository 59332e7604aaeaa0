# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The tulipba Authors
"""Beam-alignment codebook design.

Designs, pdfs and reports are plain dicts in the same JSON shapes the
command-line runner reads and writes.
"""

import json
import os

from . import _tulipba

__all__ = [
    "Error",
    "evaluate",
    "optimize",
    "simulate",
    "run",
    "from_boundaries",
    "describe",
    "plot_svg",
    "tradeoff_endpoints",
    "tradeoff_curve",
    "FORMAT_VERSION",
]

FORMAT_VERSION = _tulipba.format_version


class Error(ValueError):
    """Library error carrying the error code and CLI exit code."""

    def __init__(self, message, code, exit_code):
        super().__init__(message)
        self.code = code
        self.exit_code = exit_code


def _call(fn, *args):
    try:
        return fn(*args)
    except _tulipba.Error as e:
        raise Error(*e.args) from None


def _dump(value):
    return json.dumps(value)


def evaluate(design, policy="sd", p=2, pdf="uniform"):
    """Analytic lambda_bar and per-feedback breakdown of a design."""
    return json.loads(_call(_tulipba.evaluate, _dump(design), policy, p, _dump(pdf)))


def optimize(b, policy="sd", p=2, pdf="uniform", grid=1000, restarts=20, seed=0,
             max_iterations=1_000_000, threads=0):
    """Greedy-SA search over tulip designs; returns the best design document."""
    return json.loads(_call(_tulipba.optimize, b, policy, p, _dump(pdf), grid, restarts,
                            seed, max_iterations, threads))


def simulate(design, policy="sd", p=2, pdf="uniform", trials=1_000_000, seed=0, threads=0):
    """Monte Carlo report for a design."""
    return json.loads(_call(_tulipba.simulate, _dump(design), policy, p, _dump(pdf), trials,
                            seed, threads))


def run(config, base_dir="."):
    """Run a config document; returns the manifest with a warnings list."""
    return json.loads(_call(_tulipba.run, _dump(config), os.fspath(base_dir)))


def from_boundaries(z):
    """Tulip design document from 2b boundary points."""
    return json.loads(_call(_tulipba.design_from_boundaries, list(z)))


def describe(design):
    """Normalised design document with component beams."""
    return json.loads(_call(_tulipba.describe, _dump(design)))


def plot_svg(design):
    return _call(_tulipba.plot_svg, _dump(design))


def tradeoff_endpoints(b):
    return _call(_tulipba.tradeoff_endpoints, b)


def tradeoff_curve(b, measure="max", samples=11):
    return _call(_tulipba.tradeoff_curve, b, measure, samples)
