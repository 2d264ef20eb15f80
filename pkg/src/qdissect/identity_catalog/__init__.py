"""Registry of identity rows; importing this package registers every row."""

from .base import (
    REGISTRY,
    CatalogRow,
    HypothesisError,
    IdentityCase,
    VerificationResult,
    eval_expr,
    expand_cases,
    run_row,
    verify_all,
    verify_identity,
)
from . import bailey, dissect, fine, prop, roots, sixpsi, vanish  # noqa: F401  (registration side effects)

__all__ = [
    "REGISTRY",
    "CatalogRow",
    "HypothesisError",
    "IdentityCase",
    "VerificationResult",
    "eval_expr",
    "expand_cases",
    "run_row",
    "verify_all",
    "verify_identity",
]
