"""Exact graded-commutative algebra and monopole projectors over the supersphere.

The package provides an exact symbolic engine for Grassmann algebras with a
diamond involution, supermatrix calculus (supertranspose, supertrace,
superdeterminant), graded differential forms, and the full monopole
construction over the (2,2)-dimensional supersphere: group element,
coordinates, normalized supervectors, projectors, connections, curvature,
Chern 2-superforms and exact integer Chern numbers via Berezin integration.
"""

from .scalars import Scalar, rat
from .algebra import (EVEN, ODD, Element, GeneratorTable, RewriteSystem,
                      SuperAlgebraError, UnknownGeneratorError, AlgebraMismatchError,
                      ParityError, InvertibilityError, graded_inverse)
from .matrices import (BlockShape, SuperMatrix, EVEN_FIRST, ODD_FIRST, ShapeError,
                       graded_bracket, sdet, supertrace, exp_nilpotent)
from .forms import SuperForm, DifferentialIdeal, d, wedge, body_project
from .trig import TrigPoly, PhaseHalfAngle, wallis_integrate, ChartError
from .monopole import (group_space, extended_space, base_space, group_element,
                       osp_fixtures, base_coordinates, inversion_identities,
                       psi, pairing, projector, connection_form,
                       connection_closed_form, curvature, chern_form,
                       chern_form_canonical, chern_closed_form,
                       chern_intermediate_form, chern_form_body,
                       coordinate_chern_form, coordinate_chern_report,
                       check_equivariance, section_to_equivariant,
                       element_to_base, projector_to_base, nilpotent_exp_check,
                       nilpotent_exp_report, group_identities_report,
                       sphere_relation_check, PsiVector, Projector,
                       supertrace_p_dp_dp, outer_with_kernel,
                       coordinate_volume_form, group_volume_body_form)
from .berezin import (chern_number, berezin_integral, berezin_chern_number,
                      quad_oracle, chart_pullback, group_section_chart,
                      base_chart, ExactnessError)
from .linear import solve_exact, expand_in_basis

__version__ = "0.1.0"
