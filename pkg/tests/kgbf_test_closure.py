"""Closure evaluator used by the scenario tests: massless plane waves."""

import math


def evaluate(idx, tau):
    E = math.sqrt(idx.kx**2 + idx.ky**2 + idx.kz**2)
    return math.cos(E * tau), math.sin(E * tau), -E * math.sin(E * tau), E * math.cos(E * tau), 1.0


def evaluate_damped(idx, tau):
    """Not a solution of the separated equation: ``wtilde W`` decays in tau."""
    E = math.sqrt(idx.kx**2 + idx.ky**2 + idx.kz**2)
    d = math.exp(-0.3 * tau)
    c, s = math.cos(E * tau), math.sin(E * tau)
    return d * c, d * s, d * (-0.3 * c - E * s), d * (-0.3 * s + E * c), 1.0
