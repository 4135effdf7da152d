"""Exact counting of representations of virtually free groups over finite
fields, and E-polynomials of the associated character varieties.

The package is organized along the pipeline:

  groupgraph  graphs of finite groups (data model, presets, JSON files)
  dimmonoid   dimension-vector monoid, Euler form, symmetry orbits
  exactalg    exact polynomials and rational functions over Q
  series      truncated graded series and the counting-polynomial pipeline
  fforacle    independent brute-force checks over small finite fields
  cli         command-line interface
"""

from .exactalg import Poly, QPower, RatFunc, gl_count, is_prime_power, mobius
from .groupgraph import (
    Edge,
    FiniteGroupData,
    GraphOfGroups,
    RestrictionMap,
    ValidationError,
    is_suitable_prime_power,
    load,
    preset,
    save,
    validate,
)
from .dimmonoid import (
    DimVector,
    SymmetryGroupDescriptor,
    correction_y,
    dimvector,
    enumerate_dimvectors,
    euler_form,
    format_dimvector,
    parse_dimvector,
    shift_exponent,
    symmetry_descriptor,
    symmetry_orbits,
)
from .series import (
    CountingTable,
    GradedSeries,
    NonPolynomialCoefficient,
    build_F,
    build_counting_table,
    compute_absim,
    compute_sim,
    compute_ss,
    epoly_and_euler,
    invert,
    mul,
    plethystic,
    rep_space_count,
    shift,
    unit_series,
)

__version__ = "0.1.0"
