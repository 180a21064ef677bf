"""Metastability toolkit for Glauber spin-flip dynamics on random multigraphs.

Submodules
----------
graphs     degree sequences, configuration-model constructions (static,
           dynamic, coupled), Erdos-Renyi and reference families, file I/O
energy     spin configurations, Hamiltonian, flip differences, boundaries
landscape  exact barriers, stability levels, metastable sets, gates, paths
bounds     zeta tails, I_delta, barrier bounds, field predicates, closed forms
dynamics   rejection-free continuous-time simulation and hitting statistics
experiments  seeded experiment tables, reports, manifests
cli        command-line surface (`glaubermeta <subcommand>`)
"""

__version__ = "0.1.0"

from .energy import ModelParams, SpinConfig, boundary_edge_count, flip_delta, hamiltonian, plus_degree_sum
from .errors import CapacityError, ConfigError, GlauberMetaError, NumericError, StructuralError
from .graphs import (DegreeSequence, DiracDegrees, MultiGraph, PowerLawDegrees, StubMatching,
                     build_cm_static, build_er, build_reference_graph, dynamic_match_step,
                     edge_set_difference, grow_coupled_pair, internal_match_count, is_connected,
                     sample_degrees)
from .landscape import (analyze_landscape, classify_states, communication_height, energy_barrier,
                        gate_sets, greedy_removal_path, sorted_flip_path, stability_levels)
from .bounds import (compute_bounds_report, gamma_lower, gamma_upper, h_condition_strict,
                     h_condition_weak, i_delta, power_law_quantities, zeta_tail)
from .dynamics import (arrhenius_fit, estimate_mean_hitting, exact_mean_hitting_time,
                       exponential_law_test, gate_passage_probability, prefactor_estimate,
                       simulate_hitting)
