"""Generalized Zalcman coefficient functional over subclasses of univalent functions."""
from .classes import (ConvexHullOfConvex, CoefficientClass, NoshiroWarschawski, WeightProfile,
                      h_extremal, h_membership, profile_from_name, s_factor, series_from_measure)
from .functionals import (BoundResult, FunctionalSpec, bound_coc, bound_H, bound_R, lemma1_bound,
                          polytope_max, zalcman)
from .measures import AtomicMeasure, livingston_gap, moment, random_measure, theoremA_measure
from .search import SearchConfig, SearchReport, brute_force_max, h_search, probe_open_range
from .series import (PowerSeries, Rotation, coeff, convex_combination, half_plane_kernel,
                     koebe_series, rotate, slit_log_series, theoremB_transform)

__version__ = "0.1.0"
