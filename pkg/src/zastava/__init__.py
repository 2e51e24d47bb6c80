"""Exact computations with finite W-algebras of gl(N), parabolic quasimaps and Virasoro Whittaker vectors."""

from .partition import ZSeries, sl2_oracle, wl_invariance_check, z_coefficient, z_series
from .patterns import Composition, GTPattern, enumerate_patterns, p_value, quasiflag_dimension
from .relations import RELATIONS, verify_relation
from .scalar import SpecEnv, make_spec_env
from .verma import shapovalov_norm, shapovalov_pairing, whittaker_component
from .virasoro import VirParams, agt_params, chic_map, ff_params, nekrasov_series, vir_gram, vir_whittaker
from .yangian import GTModule, Normalization, WeightVector, to_fmo

__version__ = "0.1.0"
