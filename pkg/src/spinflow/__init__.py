"""Verification engine for spin geometry on frame-presented homogeneous manifolds."""
from .clifford import CliffordAlgebraRep, CliffordElement, build_rep, clifford_mul, restrict_rep, spinor_inner
from .emt_bounds import BilinearTensor, BoundReport, check_bounds, emt_tensors
from .errors import (
    DimensionError,
    InvalidComplexStructure,
    InvalidFrameError,
    NonRiemannianFlow,
    NotAnEigenspinor,
    NotEtaEinstein,
    SpecError,
    SpinflowError,
    ZeroSpinorError,
)
from .foliation import FlowStructure, TransversalConnection, flow_emt, flow_structure, oneill, transversal_connection
from .frame_geometry import FrameManifold, LeviCivitaConnection, levi_civita, riemann_curvature, validate_frame
from .report import CheckRecord, VerificationReport, render_report
from .sasaki_kahler import KahlerDecomposition, SasakiReport, check_sasakian, eta_einstein_fit, kahler_form_spinor
from .spec_io import ManifoldSpec, load_spec
from .spinor_fields import SpinorField, dirac, make_field, spin_connection
from .verify import run_verification

__version__ = "0.1.0"
