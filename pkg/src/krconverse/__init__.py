"""Exact verification of the Kottwitz-Rapoport converse to Mazur's inequality."""

from .engine import Certificate, VerificationReport, check_certificate, rhs_set, verify_theorem, witness
from .errors import ConditionFailure, ConsistencyError, CutoffViolation, PreconditionError
from .folding import FoldingDatum, build_folding, kr_via_folding, verify_folding_lemmas
from .lattices import LatticeClass, Quotient, quotient_G, quotient_M
from .minuscule import GameWord, cutoff_condition, lift_fractional, play_to_dominant
from .orbits import enumerate_Pmu, oracle_phi_Pmu, weyl_orbit
from .quasisplit import ADLVQuery, CoinvariantDatum, adlv_nonempty, build_coinvariants, verify_conjecture2
from .rootdata import RootDatum, build, dominant_rep, from_dynkin, pairing, reflect, to_dynkin

__all__ = [
    "ADLVQuery",
    "Certificate",
    "CoinvariantDatum",
    "ConditionFailure",
    "ConsistencyError",
    "CutoffViolation",
    "FoldingDatum",
    "GameWord",
    "LatticeClass",
    "PreconditionError",
    "Quotient",
    "RootDatum",
    "VerificationReport",
    "adlv_nonempty",
    "build",
    "build_coinvariants",
    "build_folding",
    "check_certificate",
    "cutoff_condition",
    "dominant_rep",
    "enumerate_Pmu",
    "from_dynkin",
    "kr_via_folding",
    "lift_fractional",
    "oracle_phi_Pmu",
    "pairing",
    "play_to_dominant",
    "quotient_G",
    "quotient_M",
    "reflect",
    "rhs_set",
    "to_dynkin",
    "verify_conjecture2",
    "verify_folding_lemmas",
    "verify_theorem",
    "weyl_orbit",
    "witness",
]
