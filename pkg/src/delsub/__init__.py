"""delsub: deletion/substitution error-correcting codes and their verifiers."""

from .channels import (
    Ball,
    BallModel,
    EditScript,
    apply_script,
    burst_balls_intersect,
    burst_deletion_ball,
    del_sub_ball,
    del_sub_trans_ball,
    sample_corruption,
)
from .codec import (
    Tag,
    compute_tag,
    decode,
    encode,
    layout,
    repetition_decode,
    repetition_encode,
    syndrome_decode,
    tag_widths,
)
from .codes import (
    CodeParams,
    best_residues,
    counterexample_pair,
    enumerate_code,
    family_moduli,
    is_member,
    is_t_good,
    is_t_valid,
    pigeonhole_floor,
    residue_vector,
    sigma_bound_witness,
    structural_count,
)
from .errors import (
    CapExceeded,
    DecodeFailure,
    InvalidScript,
    InvariantViolation,
    UnsupportedAlphabet,
)
from .oracle import CellSummary, VerificationReport, verify_code, verify_family_cell
from .partition import (
    CertStep,
    ErrorCertificate,
    Partition,
    find_certificate,
    partition_deletions,
    partition_pair,
    refine_with_substitution,
    refine_with_transposition,
    verify_partition,
)
from .sequences import (
    Sequence,
    accumulative,
    accumulative_differential,
    differential,
    differential_inverse,
    format_int_sequence,
    parse_int_sequence,
    sign_preserving_number,
    vt_syndrome,
)

__version__ = "0.1.0"
