"""Hyperplanes, Veldkamp lines and symmetries of the binary Segre varieties S_(N) = PG(1,2)^N."""

from .gf2 import BinMatrix, BinVector, gaussian_binomial, kernel_basis, rank
from .hyperplanes import (
    GeometricHyperplane,
    TypeCensus,
    classify_hyperplanes,
    enumerate_hyperplanes,
    hyperplane_from_functional,
    is_geometric_hyperplane,
)
from .lagrangian import LagrangianSubspace, enumerate_generators, lgr_census, spinor_image
from .segre import SegreVariety, build_segre, embed
from .symmetry import invariant_quadric, quadric_census, stabilizer_generators, tensor_weight
from .veldkamp import VeldkampLine, blow_up, classify_veldkamp_lines, project_hyperplane, veldkamp_sum

__version__ = "0.1.0"

__all__ = [
    "BinMatrix", "BinVector", "GeometricHyperplane", "LagrangianSubspace", "SegreVariety",
    "TypeCensus", "VeldkampLine", "blow_up", "build_segre", "classify_hyperplanes",
    "classify_veldkamp_lines", "embed", "enumerate_generators", "enumerate_hyperplanes",
    "gaussian_binomial", "hyperplane_from_functional", "invariant_quadric", "is_geometric_hyperplane",
    "kernel_basis", "lgr_census", "project_hyperplane", "quadric_census", "rank", "spinor_image",
    "stabilizer_generators", "tensor_weight", "veldkamp_sum",
]
