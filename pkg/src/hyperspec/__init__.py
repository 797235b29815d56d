"""Spectral radii of uniform hypergraphs: bicyclic families, weighted incidence
certificates and generalized power hypergraphs."""

from .certify import (
    AlphaRoot,
    CertificateVerdict,
    Kind,
    WeightedIncidence,
    build_bl1_certificate,
    build_bl2_certificate,
    check_alpha_normal,
    check_consistent,
    root_monotonicity_scan,
    solve_bl1_alpha,
)
from .core import (
    EdgeSwap,
    Hypergraph,
    HypergraphError,
    LabeledHypergraph,
    are_isomorphic,
    degree,
    edge_swap,
    gen_b_l1,
    gen_b_l2,
    gen_b_p,
    is_bicyclic,
    is_connected,
    is_linear,
    new_hypergraph,
)
from .power import PowerMap, PowerSpec, gen_power, lift_eigenvector, predicted_rho
from .spectral import (
    SolverOptions,
    SpectralResult,
    apply_adjacency,
    eigen_residual,
    rayleigh,
    spectral_radius,
)

__version__ = "0.1.0"
