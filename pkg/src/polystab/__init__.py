"""Stability and hyperstability of matrix polynomials over complex regions."""

__version__ = "0.1.0"

from .linalg import (gen_complex, gen_psd, gen_skew, gen_unit_vector,
                     hermitian_eigenvalues, lambda_H, sigma_min, spectral_norm)
from .regions import (EmptyRegionError, Membership, Region, parse_region,
                      open_right_half_plane, open_upper_half_plane, unit_disc)
from .scalarpoly import (RootSet, ScalarMultivariatePolynomial,
                         ScalarPolynomial, ZeroPolynomialError,
                         count_roots_in_disc, is_stable_scalar, mv_eval, roots)
from .matpoly import (EigenReport, IrregularPolynomialError, MatrixPolynomial,
                      MultivariateMatrixPolynomial, NumericalRangeSample,
                      determinant_polynomial, eigenvalues,
                      entries_linearly_independent, instance_from_dict,
                      instance_to_dict, is_stable, mv_eval_matrix,
                      mv_stability_sample, numerical_range_sample, szasz_bound)
from .hyperstab import (Certificate, CertificateError, CertificateFailure,
                        HyperSurveyReport, SpanDecomposition,
                        gauss_lucas_transfer, hyper_check, hyper_survey,
                        pencil_form_detect, span_decompose,
                        structural_certificate_cubic,
                        structural_certificate_quadratic)
from .polarization import (PolarizationError, PolarizedPolynomial,
                           degree_transform, elementary_symmetric,
                           gws_witness, polarize, restrict_diagonal)
from .families import (FAMILY_TAGS, FamilyInstance, FamilyReport,
                       check_family_hypotheses, make_family,
                       verify_family_claim)
from .verdict import StabilityVerdict, Verdict
from .verify import SUITES, run_suites
