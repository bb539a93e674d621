"""Network-coded routing and spectrum allocation for elastic optical networks.

Plans a static demand set onto a flex-grid network, securing confidential
connections by XOR-combining them with link-disjoint established traffic, and
reports blocking, spectrum use, and per-link encryption statistics.
"""

from .coverage import CoverageTable, build_coverage_table, link_coverage
from .demands import (
    BLOCKED,
    NONCONFIDENTIAL,
    SECURED,
    UNSECURED,
    Connection,
    Demand,
    generate_demands,
    read_demand_csv,
    write_demand_csv,
)
from .experiments import ExperimentConfig, GeneratorSpec, run_experiment
from .planner import (
    PlanConfig,
    PlanContext,
    PlanReport,
    PlanResult,
    aggregate_report,
    plan,
    recompute_security,
    run_plan,
)
from .routing import (
    RoutingStrategy,
    UtilizationCounters,
    establish_nonconfidential,
    path_score,
    sort_candidates,
)
from .security import (
    SecurityAssessment,
    XorMetric,
    XorSlotMatrix,
    build_xor_slot_matrix,
    partner_ledger,
    score_interval,
    solve_confidential,
)
from .spectrum import SlotInterval, SpectrumGrid
from .topology import (
    CandidatePath,
    ModulationFormat,
    ModulationTable,
    Topology,
    k_shortest_paths,
    load_topology,
    modulation_for_distance,
    required_slots,
)

__version__ = "0.1.0"
