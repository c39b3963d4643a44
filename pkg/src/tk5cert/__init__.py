"""Certificates for the TK5 / planar / small-cut dichotomy, and the
disjoint-path and rung machinery behind it."""

from .certify import Certificate, certify, sweep, verify
from .corpus import CorpusSpec, generate
from .graph import Cut, Graph, Separation, contract, enumerate_cuts, find_k4_minus, vertex_connectivity
from .planarity import KuratowskiWitness, PlanarEmbedding, ThreePlanarStructure, disc_planar, planarity, three_planar
from .tk5 import TK5Witness, find_tk5, find_tk5_structured, verify_tk5

__all__ = [
    "Certificate",
    "Cut",
    "Graph",
    "KuratowskiWitness",
    "PlanarEmbedding",
    "Separation",
    "TK5Witness",
    "ThreePlanarStructure",
    "certify",
    "contract",
    "disc_planar",
    "enumerate_cuts",
    "find_k4_minus",
    "find_tk5",
    "find_tk5_structured",
    "generate",
    "CorpusSpec",
    "planarity",
    "sweep",
    "three_planar",
    "verify",
    "verify_tk5",
    "vertex_connectivity",
]
