"""Translate strictly sensible order-sorted algebras into many-sorted ones."""

from ._core import (
    BisimReport,
    MSAlgebra,
    OSAlgebra,
    OstrError,
    Translation,
    ValidityReport,
    Violation,
    check,
    imp_algebra,
    imp_real_algebra,
    parse_ms_algebra,
    parse_os_algebra,
    rewrite_step,
    run_bisim,
    translate,
)

__all__ = [
    "BisimReport",
    "MSAlgebra",
    "OSAlgebra",
    "OstrError",
    "Translation",
    "ValidityReport",
    "Violation",
    "check",
    "imp_algebra",
    "imp_real_algebra",
    "parse_ms_algebra",
    "parse_os_algebra",
    "rewrite_step",
    "run_bisim",
    "translate",
]
