"""Linkage of modules, the mapping cone, complexity and vanishing verdicts."""

from .complexity import ComplexityEstimate, CxClass, classify_betti, complexity
from .cone import ConeComplex, ConeReport, MCMApprox, MCMCertificate, certify_mcm, cone_report, ferrand_cone, link_over_ambient, mcm_approx
from .harness import HARNESSES, HarnessReport, run_all
from .links import IdealLink, LinkageDatum, horizontal_link, link_chain, link_ideal, link_via
from .operators import CohomOperators, eisenbud_operators
from .verdicts import (
    AgreementReport,
    TransferReport,
    Verdict,
    VerdictMode,
    complexity_transfer_check,
    ext_tor_agreement,
    linked_pairs_agree,
    second_duality_harness,
    self_ext_agreement,
    vanishing_verdict,
)

__all__ = [
    "AgreementReport",
    "CohomOperators",
    "ComplexityEstimate",
    "ConeComplex",
    "ConeReport",
    "CxClass",
    "HARNESSES",
    "HarnessReport",
    "IdealLink",
    "LinkageDatum",
    "MCMApprox",
    "MCMCertificate",
    "TransferReport",
    "Verdict",
    "VerdictMode",
    "certify_mcm",
    "classify_betti",
    "complexity",
    "complexity_transfer_check",
    "cone_report",
    "eisenbud_operators",
    "ext_tor_agreement",
    "ferrand_cone",
    "horizontal_link",
    "link_chain",
    "link_ideal",
    "link_over_ambient",
    "link_via",
    "linked_pairs_agree",
    "mcm_approx",
    "run_all",
    "second_duality_harness",
    "self_ext_agreement",
    "vanishing_verdict",
]
