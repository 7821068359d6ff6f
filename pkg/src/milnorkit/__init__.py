"""Invariants of matching tori in A_n Milnor fibres and of the rational homology balls B_{p,q}."""

__version__ = "0.1.0"

from .census import DiskCensus, TorusH1Class, census, glue  # noqa: E402
from .curves import PlanarCurve, circle, polterovich_ellipse  # noqa: E402
from .errors import InvalidInputError, NumericalError, QuadratureError, SingularInputError  # noqa: E402
from .fibration import FibreParams, IsotopyVerdict, critical_values, tau  # noqa: E402
from .pairing import PuncturedSurface, RelClass, exact_lagrangian_verdict, pair, paper_pairing  # noqa: E402
from .pearl import HFRanks, build_pearl_complex, hf_ranks, quotient_hf, transfer_check  # noqa: E402
from .quotient import QuotientParams, hj_expansion, lens_boundary  # noqa: E402

__all__ = [
    "DiskCensus",
    "FibreParams",
    "HFRanks",
    "InvalidInputError",
    "IsotopyVerdict",
    "NumericalError",
    "PlanarCurve",
    "PuncturedSurface",
    "QuadratureError",
    "QuotientParams",
    "RelClass",
    "SingularInputError",
    "TorusH1Class",
    "build_pearl_complex",
    "census",
    "circle",
    "critical_values",
    "exact_lagrangian_verdict",
    "glue",
    "hf_ranks",
    "hj_expansion",
    "lens_boundary",
    "pair",
    "paper_pairing",
    "polterovich_ellipse",
    "quotient_hf",
    "tau",
    "transfer_check",
]
