"""Gaussian persistence curves and persistence surfaces."""

from .curves import (
    CurveSamples,
    GpcModel,
    gpc_eval,
    gpc_sample,
    l1_distance,
    l1_norm,
    l1_norm_closed,
    l1_norm_quadrature,
    surface_eval,
)
from .diagrams import (
    DiagramPoint,
    PersistenceDiagram,
    dump_diagram,
    joint_min_lifespan,
    load_diagram,
    min_lifespan,
    total_lifespan,
)
from .kernels import QuadratureSpec
from .metrics import Matching, partition, wasserstein1
from .stability import StabilityReport, Theorem, verify
from .weights import WeightKind, WeightSpec, resolve

__version__ = "0.1.0"
