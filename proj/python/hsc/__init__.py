"""Heterogeneous PKI/CLC signcryption.

Parameters, keys and ciphertexts are plain ``bytes`` in the same encodings
the ``hsc`` command-line tool reads and writes.
"""

from ._hsc import (
    DEFAULT_GROUP,
    AuthenticityError,
    DecodeError,
    DegenerateKeyError,
    DomainError,
    Error,
    bench,
    ciphertext_size,
    clc_extract,
    clc_finalize,
    export_public,
    op_counts,
    pki_keygen,
    setup,
    signcrypt,
    unsigncrypt,
    verify_partial_key,
)

__all__ = [
    "DEFAULT_GROUP",
    "AuthenticityError",
    "DecodeError",
    "DegenerateKeyError",
    "DomainError",
    "Error",
    "bench",
    "ciphertext_size",
    "clc_extract",
    "clc_finalize",
    "export_public",
    "op_counts",
    "pki_keygen",
    "setup",
    "signcrypt",
    "unsigncrypt",
    "verify_partial_key",
]
