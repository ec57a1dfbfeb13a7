"""Shared fixtures: catalog instantiations and frequently reused geometry."""

from __future__ import annotations

import pytest

from minksurf import geometry as ge
from minksurf import surfaces as sf

# Every catalog entry with concrete parameter choices.  graph has no default
# height function, so it appears with a representative paraboloid height.
CATALOG_CASES = (
    ("plane", {}),
    ("graph", {"phi": "(u^2 + v^2)/2"}),
    ("type-i", {"b": 0.5}),
    ("type-ii", {"a": 1.0}),
    ("s31-flat", {"r": 1.0}),
    ("h3-flat", {"r": 1.0}),
    ("example52", {}),
    ("product", {"a": 1.0, "b": 2.0}),
)

CATALOG_IDS = tuple(name for name, _ in CATALOG_CASES)

# A surface with no special structure: curved, twisted normal bundle,
# nonzero normal curvature.  Exercises the generic code paths that the
# catalog's heavily symmetric entries leave cold.
WILD_TEXT = (
    "x1 = u^2/5 + v^2/10 ; x2 = u ; x3 = v ; x4 = u*v/10"
)


def build(name: str, params: dict) -> sf.SurfaceSpec:
    return sf.catalog_lookup(name, params)


@pytest.fixture(params=CATALOG_CASES, ids=CATALOG_IDS)
def catalog_spec(request) -> sf.SurfaceSpec:
    name, params = request.param
    return build(name, params)


@pytest.fixture(scope="session")
def wild_spec() -> sf.SurfaceSpec:
    return sf.parse_surface(WILD_TEXT)


@pytest.fixture(scope="session")
def product_12() -> sf.SurfaceSpec:
    return sf.catalog_lookup("product", {"a": 1.0, "b": 2.0})


def point_geometry(spec: sf.SurfaceSpec, u: float, v: float, k: int = 3,
                   tol: ge.Tolerances = ge.DEFAULT_TOLERANCES) -> ge.PointGeometry:
    return ge.adapted_frame(sf.evaluate_immersion(spec, u, v, k), base=(u, v), tol=tol)


def grid_points(spec: sf.SurfaceSpec, nu: int = 5, nv: int = 5):
    return sf.cell_centers(spec.domain, nu, nv)
