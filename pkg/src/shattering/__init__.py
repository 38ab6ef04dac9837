"""Compressed shattering: few-measurement sensing of frequency-sparse real signals."""

from .baseline import CsConfig, cs_decode, cs_encode
from .bench import CostReport, cost_model, sweep_measurements, table1
from .estimators import CompressedSensingEncoder, ShatteringEncoder
from .exceptions import (
    BadBankShape,
    BadDimensions,
    InvalidSparsity,
    LengthMismatch,
    NoConvergence,
    NonRealResult,
    NotCoprime,
    NoValidSigma,
    OffGridAngle,
    ShatterCollision,
    ShatteringError,
)
from .filterbank import FilterBank, apply_filter, build_bank
from .matrixform import build_gamma, build_stacked
from .permute import PermParam, inverse_permute, mod_inverse, permute
from .recon import RecoveredAtom, atom_to_spectrum, decode, recover_atom
from .shatter import (
    MeasurementSet,
    SensingMatrix,
    ShatterConfig,
    check_shatter_validity,
    encode,
    find_sigma,
    sense_one,
)
from .sigcore import SparsitySpec, dft, generate_sparse, idft

__version__ = "0.1.0"
