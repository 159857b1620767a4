"""Spectra of Jahn-Teller bundle Laplacians on the isoparametric leaves of S^4."""
from .errors import (DegenerateInputError, DomainError, InvalidInputError, IsospecError,
                     SingularCoefficientError)
from .kernel import (BACKEND, DenseSymmetric, RationalMatrix, SymTridiagonal, eigvals_dense_symmetric,
                     eigvals_tridiagonal, rational_kernel_dim, rational_rank, sturm_count)
from .jt import (NormalModeVector, TracelessSymmetric3, build_jt_matrix, build_jt_matrix_unequal,
                 eigen_triplet, shape_coordinates)
from .geometry import (leaf_volume, mean_curvature, numeric_shape_operator, principal_curvatures,
                       sectional_curvatures)
from .q8 import (Q8, HomogeneousPolynomial, PolySubspace, act_on_r4, antipodal_odd_harmonic_dim, character,
                 equivariant_harmonic_dim, harmonic_dim, isotypic_projection, mobius_spectrum, q8_multiply)
from .spectra import (closed_form_half, constant_curvature_spectrum, full_casimir, generator_matrices,
                      isotypic_casimir, laplacian_coefficients, omega1, omega2, omega3,
                      projective_spectrum, reconcile, spectrum)

__version__ = "0.1.0"
