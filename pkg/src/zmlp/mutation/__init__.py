"""
变异算子与直角三角形上的初等变异
"""
from zmlp.mutation.operator import (
    CertificateStep,
    MutationCertificate,
    MutationSpec,
    is_mutable,
    mutate,
    mutate_edge,
    mutate_polytope,
    mutate_vertex,
)
from zmlp.mutation.triangular import alpha, alpha_inv, beta, tau

__all__ = [
    'CertificateStep',
    'MutationCertificate',
    'MutationSpec',
    'is_mutable',
    'mutate',
    'mutate_edge',
    'mutate_polytope',
    'mutate_vertex',
    'alpha',
    'alpha_inv',
    'beta',
    'tau',
]
