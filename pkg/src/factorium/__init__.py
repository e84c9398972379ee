"""Exact engine for colored degree-prescribed factors of general graphs."""

from .colorings import (
    UniversalVerdict,
    enumerate_colorings,
    factor_or_critical_check,
    proof_coloring,
    universal_factor_check,
)
from .graph import (
    CapExceeded,
    Color,
    Edge,
    EndColoring,
    GeneralGraph,
    boundary,
    build_graph,
    colored_degree,
    components,
    end_charge,
    odd_component_count,
    parse_graph,
    set_charge,
    write_graph,
)
from .lovasz import (
    CriticalityVerdict,
    Decomposition,
    OptimaSummary,
    audit_structure,
    decompose,
    delta_of,
    find_colored_factor,
    is_critical,
    nu,
    reduced_spec,
    solve,
)
from .prescriptions import AllowedSet, dist, hull, is_allowed, make_J, make_Jf_star, shift_set
from .tutte import ConditionReport, check_condition, f_sum

__version__ = "0.1.0"
