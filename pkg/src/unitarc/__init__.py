"""Unit circular-arc and unit interval models: recognition, bounded and
minimal representations, with exact arithmetic and checkable certificates."""

from .rational import INF, as_rational, format_rational
from .model import (ModelError, PcaModel, RealizedModel, UcaDescriptor, build_model,
                    complete_model, equivalent, graph_of, parse_model, serialize_model,
                    verify_realization)
from .synthetic import build_bounded, build_synthetic, heights, sep_weight, to_dot, walk_factors
from .solver import (Feasible, Infeasible, solve_bound_rep, solve_int_bound_rep,
                     solve_u_rep)
from .recognition import (Negative, Positive, greedy_distances, hollow_ratio, nose_ratio,
                          reach_model, recognize, reduction, rep_linear, verify_certificate)
from .minimal import (Extension, MinimalResult, NotUnitError, build_T, min_circ, min_ell_uig,
                      min_power, min_power_cycle, min_power_path, min_uca, min_uig,
                      power_cycle_model, power_path_model)

__version__ = "0.1.0"

__all__ = [
    "INF", "as_rational", "format_rational",
    "ModelError", "PcaModel", "RealizedModel", "UcaDescriptor", "build_model",
    "complete_model", "equivalent", "graph_of", "parse_model", "serialize_model",
    "verify_realization",
    "build_bounded", "build_synthetic", "heights", "sep_weight", "to_dot", "walk_factors",
    "Feasible", "Infeasible", "solve_bound_rep", "solve_int_bound_rep", "solve_u_rep",
    "Negative", "Positive", "greedy_distances", "hollow_ratio", "nose_ratio", "reach_model",
    "recognize", "reduction", "rep_linear", "verify_certificate",
    "Extension", "MinimalResult", "NotUnitError", "build_T", "min_circ", "min_ell_uig",
    "min_power", "min_power_cycle", "min_power_path", "min_uca", "min_uig",
    "power_cycle_model", "power_path_model",
]
