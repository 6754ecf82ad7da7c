"""Exact asymptotic computations over the logarithmic transseries field.

The package has three layers.  ``ogroup`` and ``acouple`` implement the
value group: finite-support rational vectors ordered lexicographically,
the psi map, the derivative gamma + psi(gamma) and its inverse, and the
classification of couples into grounded, gap, and asymptotic-integration
kinds.  ``logts`` builds the ambient field of finite sums and quotients
of logarithmic monomials with its derivation and valuation.  On top sit
``setprops`` (decision procedures for jammedness and yardstick properties
of valuation sets), ``extend`` (integration and exponential-integration
scenarios with constructive witnesses), ``pcseq`` (pseudocauchy sequences,
the lambda sequence, rational-image laws), and ``cli`` (the ``aclab``
command).

All arithmetic is exact: rational coefficients, no floating point, and
every Holds/Fails verdict carries a witness or rule that a recheck can
verify independently.
"""

from .acouple import (
    CoupleDescriptor,
    Report,
    TrichotomyResult,
    chi,
    classify_couple,
    closure_count,
    der,
    integrate,
    psi,
    successor,
)
from .logts import Frac, Monomial, Series, ell, x_elem
from .ogroup import ExtElem, GroupElem, ones, unit

__version__ = "0.1.0"

__all__ = [
    "CoupleDescriptor",
    "ExtElem",
    "Frac",
    "GroupElem",
    "Monomial",
    "Report",
    "Series",
    "TrichotomyResult",
    "chi",
    "classify_couple",
    "closure_count",
    "der",
    "ell",
    "integrate",
    "ones",
    "psi",
    "successor",
    "unit",
    "x_elem",
    "__version__",
]
