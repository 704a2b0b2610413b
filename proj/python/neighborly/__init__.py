"""Neighborly families of congruent polytopes from helix Voronoi diagrams."""

import json

from ._neighborly import (
    GeometryError,
    cyclic_hull_facets,
    delaunay_bruteforce,
    family_off,
    gale_evenness,
    helix_point,
    local_simplices,
    outer_radius,
)
from . import _neighborly as _core

__all__ = [
    "GeometryError",
    "census",
    "cyclic",
    "cyclic_hull_facets",
    "delaunay_bruteforce",
    "family",
    "family_off",
    "gale_evenness",
    "helix_point",
    "local_simplices",
    "outer_radius",
    "verify",
]


def census(n, site=None):
    """Facet census of one middle Voronoi region of the n-helix."""
    return json.loads(_core.census_json(n, site))


def family(n, mode="clipped"):
    """The n+1 middle polytopes as dicts of vertices and labelled facets."""
    return json.loads(_core.family_json(n, mode))


def verify(n, k=1, mode="clipped", eps_rel=1e-9, eps_abs=1e-12, precision="standard"):
    """Full check battery; returns the report.json document."""
    return json.loads(_core.verify_json(n, k, mode, eps_rel, eps_abs, precision))


def cyclic(d, k, m):
    return json.loads(_core.cyclic_json(d, k, m))
