"""Counting saddle connections and cylinders on marked flat tori."""
from .constants import (IRRATIONAL, MarkingRegime, UnsupportedRegime, classify_regime,
                        po_constant_decomposable, po_constant_general_position,
                        po_constant_two_marked, sc_constant_general_position,
                        sc_constant_two_marked, target_constant)
from .counting import (CountReport, CylinderFamily, Marking, SaddleConnection, count_po,
                       count_sc, decompose_classes, enumerate_cylinders,
                       enumerate_saddle_connections, parse_markings, read_markings)
from .exactgeom import PlanarVector, TorusPoint, squared_norm, wrap_to_torus
from .growth import GrowthConstant
from .lattice import Lattice, PointDistribution, VisibilityConvention, count_points, visible_points
from .veech import IntegerMatrix2, RationalMarking2

__version__ = "0.1.0"
