"""Exact integer lattice and binary quadratic form routines.

Integers of any size are plain Python ints. Matrices are lists of rows.
Certificates are dicts with the same layout as the ``reflekt`` CLI's JSON output
and can be passed back to :func:`verify_certificate`.
"""

from ._reflekt import (
    DomainError,
    EffortLimitExceeded,
    Lattice,
    avoid_roots,
    binary_roots,
    cf_sqrt,
    enumerate_norm_vectors,
    find_prime,
    find_roots_in_box,
    index,
    infinite_order_isometry,
    is_anisotropic,
    is_prime,
    is_root,
    jacobi,
    mj_family,
    mu,
    nonresidue_prime,
    orthogonal_complement,
    pell_family,
    pell_fundamental,
    reflect,
    reflectivity,
    represents,
    rescaling_family,
    root_norm_candidates,
    saturate,
    select_pell_a,
    verify_certificate,
)

__version__ = "0.1.0"


def is_valid(certificate):
    """True when every check of :func:`verify_certificate` passes."""
    return all(passed for _, passed, _ in verify_certificate(certificate))


__all__ = [name for name in dir() if not name.startswith("_")]
