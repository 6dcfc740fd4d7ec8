"""Exact dissection certificates for frustum and pyramid volume rules."""
from .errors import (
    CanonicalizationError,
    CertificateStructureError,
    FrustaError,
    InvalidParameters,
    NotAnIsometry,
    PolytopeError,
)
from .exact import HalfSpace, Q, RigidMotion, Vec3, vec
from .polytope import ConvexPolytope, build_polytope, clip, intersect, transform, volume
from .congruence import CongruenceWitness, find_congruence
from .catalog import SolidSpec, make_solid
from .dissection import Level, RearrangementCertificate, Verdict, verify_certificate, verify_tiling

__all__ = [
    "CanonicalizationError", "CertificateStructureError", "FrustaError", "InvalidParameters",
    "NotAnIsometry", "PolytopeError", "HalfSpace", "Q", "RigidMotion", "Vec3", "vec",
    "ConvexPolytope", "build_polytope", "clip", "intersect", "transform", "volume",
    "CongruenceWitness", "find_congruence", "SolidSpec", "make_solid", "Level",
    "RearrangementCertificate", "Verdict", "verify_certificate", "verify_tiling",
]

__version__ = "1.0.0"
