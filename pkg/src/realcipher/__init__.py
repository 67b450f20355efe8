"""Symmetric ciphers over real arithmetic.

Block encryption by solving linear systems, character encryption by
numerical root finding, Vigenere and transposition diffusion stages
composed into product-cipher pipelines, plus the matching
known-plaintext attacks and entropy-based security measures.
"""

from .bench import DEFAULT_SIZES, BenchResult, bench, pearson
from .classical import (
    HalvingInterleave,
    KeyedBlockPermutation,
    TranspositionSpec,
    VigenereKey,
    inverse_keyed_block_transpose,
    inverse_transpose_halving,
    keyed_block_transpose,
    transpose_halving,
    vigenere_decrypt,
    vigenere_encrypt,
)
from .cryptanalysis import (
    Distribution,
    KnownPairs,
    frequency_histogram,
    interpolate_key,
    kpa_linear,
)
from .errors import (
    CipherError,
    CodeRangeError,
    ConvergenceError,
    FormatOverflow,
    InconsistentDataError,
    InsufficientDataError,
    KeygenError,
    NoRootError,
    ParseError,
    RoundingDriftError,
    SingularMatrixError,
)
from .keyfile import dump_key, load_key, loads_key, save_key
from .linear import (
    LinearKey,
    adjugate_inverse,
    decrypt_linear,
    decrypt_linear_values,
    det_cofactor,
    encrypt_linear,
    hill_decrypt_mod26,
    hill_encrypt_mod26,
    hill_inverse_mod26,
    invert_matrix,
    keygen_linear,
)
from .nonlinear import (
    DEFAULT_ALPHABET,
    Exp2Quadratic,
    NewtonPolynomial,
    NonlinearKey,
    Polynomial,
    SolverConfig,
    ValidationReport,
    bisection_solve,
    decrypt_nonlinear,
    encrypt_nonlinear,
    eval_key_function,
    secant_solve,
    validate_key,
)
from .pipeline import (
    LinearStage,
    NonlinearStage,
    Pipeline,
    TranspositionStage,
    VigenereStage,
    decrypt_pipeline,
    encrypt_pipeline,
    parse_ciphertext,
    serialize_ciphertext,
)
from .scalar import (
    DEFAULT_TOL,
    FormatSpec,
    format_scalar,
    parse_scalar,
    round_to_code,
)
from .security import (
    ENGLISH_LETTER_ENTROPY,
    EquivocationReport,
    entropy,
    equivocation_lower_bound,
    format_hill_keyspace,
    hill_keyspace,
    key_equivocation,
    product_gained_uncertainty,
    transposition_uncertainty,
    vigenere_uncertainty,
)

__version__ = "0.1.0"
