"""Regularized Langevin simulated annealing for MIS, max-clique, max-cut and QUBO."""

from ._core import (
    EnergyModel,
    FlipKernel,
    Graph,
    InstanceFormat,
    LDConfig,
    ParseError,
    ProblemKind,
    RunResult,
    SamplerConfig,
    TrajectoryRecord,
    delta,
    energy,
    generate_ba,
    generate_er,
    gradient,
    greedy_decode,
    load_instance,
    objective,
    parse_instance,
    presets,
    primal_gap,
    run_ld,
    run_rlsa,
    temperature,
    violation,
    write_instance,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
