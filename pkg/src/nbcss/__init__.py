"""Support-preserving extension of binary CSS check-matrix pairs to GF(2^m)."""

__version__ = "0.1.0"

from .binmat import (
    BinaryMatrix,
    CssPair,
    check_orthogonal_f2,
    nullspace_f2,
    overlap_histogram,
    overlap_sets,
)
from .congruence import CongruenceSystem, VarIndex, build_system, build_var_index, dump_system
from .extend import (
    CsaParams,
    ExponentAssignment,
    FieldMatrix,
    assemble,
    csa,
    csa_lift,
    verify_orthogonal_fq,
    verify_support,
)
from .field import FieldSpec, make_field
from .hgp import hgp
from .modsolve import (
    heuristic_solve,
    prime_field_nullspace,
    sample_solution,
    snf,
    snf_nullspace_mod,
    solve,
    unit_pivot_eliminate,
)
