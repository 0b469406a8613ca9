"""Testing and measuring odd-cycle-freeness of Boolean functions on F_2^n."""

from .core import (
    BooleanFunction,
    CountingOracle,
    Spectrum,
    Subspace,
    generate,
    mix,
    parse,
    restrict,
    serialize,
    span_of,
    wht,
    wht_naive,
)
from .ocf import (
    OcfWitness,
    exact_distance,
    exact_distance_combinatorial,
    fourth_moment,
    is_ocf_hyperplane,
    is_ocf_spectral,
    linearity_distance,
    shortest_odd_witness,
)
from .testers import TestReport, edge_sampling_test, subspace_restriction_test

__version__ = "0.1.0"
