"""Certified stability exponents and positivity lemmas for polyharmonic
Lane-Emden equations, orders 1 through 4.

Everything numerical is an interval enclosure with outward rounding;
everything polynomial is exact rational arithmetic; every sign claim is
backed by a replayable Sturm certificate.
"""

from .bipoly import BiPoly
from .exponents import certify_d_lt_sqrt, eval_D_tri, eval_d, pc, record
from .interval import RInterval
from .lemmas import (CertificationFailure, ParamInfeasible, certify_lemma,
                     full_report, minimize_on_interval, registry)
from .sturm import SignCertificate, SignViolation, certify_positive_ray, \
    certify_sign_open, isolate_all_roots
from .upoly import UPoly

__version__ = "1.0.0"

__all__ = [
    "BiPoly", "CertificationFailure", "ParamInfeasible", "RInterval",
    "SignCertificate", "SignViolation", "UPoly", "certify_d_lt_sqrt",
    "certify_lemma", "certify_positive_ray", "certify_sign_open",
    "eval_D_tri", "eval_d", "full_report", "isolate_all_roots",
    "minimize_on_interval", "pc", "record", "registry",
]
