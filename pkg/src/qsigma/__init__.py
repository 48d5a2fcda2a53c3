"""Exact computer algebra for the centrally extended Lie superalgebra of
quantum pseudo-differential operators: scalar and Laurent arithmetic,
the superbracket with its 2-cocycle, embeddings into half-integer matrix
algebras over truncated polynomial rings, and the quasifinite
highest-weight classification round trip."""

from .scalars import (FIELD, LOG, ONE, Q, RmElement, S, Scalar, ZERO, jet_exp,
                      q_power_ratio, rm_from_scalar, rm_one, rm_zero, scalar,
                      scalar_str)
from .laurent import (LaurentPoly, const_term, ideal_gcd, jet_eval, lp_divides,
                      lp_eval, lp_scale_arg, normalize_generator)
from .superalgebra import (Element, act_on_superline, assoc_mul, grade_decompose,
                           psi, sigma, str0, superbracket)
from .quasipoly import (QuasiPolynomial, annihilates_window, berlekamp_massey,
                        congruence_classes, congruence_classes_of,
                        interpolate_finite, jet_at_zero, min_annihilator,
                        qp_eval, scale_bases)
from .infmatrix import (GlWeight, HalfDiagonal, LabelSeq, MatrixElement,
                        cocycle_entries, gl_g0a, gl_nondegenerate,
                        gl_quasifinite, glinf_bracket, principal_degree,
                        sector_map, supertrace)
from .embedding import (BandedOperator, banded_bracket_window, cocycle_of_images,
                        kernel_test, kernel_witness, module_action, phi, phi_hat,
                        phi_multi, window)
from .classify import (LabelFunctional, ModuleDescriptor, RoundtripReport,
                       SSqWeight, check_qf, delta_of, labels_of_module,
                       roundtrip, synthesize, tensor_labels,
                       weight_from_raw_labels)
from .parabolic import (HalfElement, ParabolicSlice, g0a_element,
                        is_nondegenerate, min_parabolic_slice,
                        singular_vector_check)
from .grammar import ParseError, parse_element, parse_laurent, parse_scalar

__version__ = "0.1.0"
