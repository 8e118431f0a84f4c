"""Exact, certificate-producing affinity test for quotients G/H, H = exp(t x)."""

from .certify import EmbeddingCert, SectionCert, oracle_decide_class2, verify, verify_embedding, verify_section
from .engine import Kind, Verdict, decide
from .lie import LeviData, LieAlgebra

__version__ = "0.1.0"
