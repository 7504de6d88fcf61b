"""Exact and Monte Carlo moments of the quantum gate fidelity."""

from ._core import (
    BoundCheck,
    BoundReport,
    BudgetExceeded,
    CompareRow,
    CptpReport,
    EmpiricalMoments,
    KrausChannel,
    MomentEstimate,
    MomentReport,
    SweepResult,
    SweepRow,
    VarianceResult,
    amplitude_damping,
    analyze,
    apply_channel,
    average_fidelity,
    bound_report,
    central_moment,
    chi_to_kraus,
    compare,
    dephasing,
    depolarizing,
    deviation_channel,
    estimate_moments,
    gate_fidelity,
    haar_unitary,
    hermitian_basis,
    jamiolkowski_state,
    kraus_to_chi,
    max_entangled,
    moment,
    random_cptp,
    scaling_sweep,
    second_moment,
    second_moment_direct,
    sym_dim,
    unitary_channel,
    validate_cptp,
    variance,
    variance_detailed,
    variance_qubit,
)

__all__ = [
    "BoundCheck",
    "BoundReport",
    "BudgetExceeded",
    "CompareRow",
    "CptpReport",
    "EmpiricalMoments",
    "KrausChannel",
    "MomentEstimate",
    "MomentReport",
    "SweepResult",
    "SweepRow",
    "VarianceResult",
    "amplitude_damping",
    "analyze",
    "apply_channel",
    "average_fidelity",
    "bound_report",
    "central_moment",
    "chi_to_kraus",
    "compare",
    "dephasing",
    "depolarizing",
    "deviation_channel",
    "estimate_moments",
    "gate_fidelity",
    "haar_unitary",
    "hermitian_basis",
    "jamiolkowski_state",
    "kraus_to_chi",
    "max_entangled",
    "moment",
    "random_cptp",
    "scaling_sweep",
    "second_moment",
    "second_moment_direct",
    "sym_dim",
    "unitary_channel",
    "validate_cptp",
    "variance",
    "variance_detailed",
    "variance_qubit",
]
