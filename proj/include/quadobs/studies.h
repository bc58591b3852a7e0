#pragma once

#include <cstdint>
#include <random>

#include "quadobs/vector_field.h"

namespace quadobs {

/// Random polynomial field on R^dim: each component has up to
/// `terms_per_component` monomials of total degree <= max_degree with small
/// integer coefficients.
PolyVectorField random_poly_field(std::mt19937_64& rng, int dim, int max_degree,
                                  int terms_per_component = 3);

/// Sparse integer (A, b); rank-deficient pairs occur with positive probability.
LinearPair random_linear_pair(std::mt19937_64& rng, int dim);

/// x' = A x as a polynomial field.
PolyVectorField linear_field(const RationalMatrix& a);

struct BracketAlgebraStudy {
  int fields = 0;
  int antisymmetry_failures = 0;  // [f, g] + [g, f] != 0
  int jacobi_failures = 0;        // cyclic sum != 0
  int fd_points = 0;
  /// max |[f,g](x) - (Dg f - Df g)_fd(x)| / max(1, |[f,g](x)|).
  double max_fd_error = 0.0;
};

/// Triples of random fields (dim <= 4, degree <= 3): exact identities in
/// rational arithmetic and central-difference Jacobians at 10 points each.
BracketAlgebraStudy bracket_algebra_study(int fields, uint64_t seed);

struct KalmanStudy {
  int systems = 0;
  int mismatches = 0;  // span(S1) != span(Kalman columns)
  int rank_deficient = 0;
};

KalmanStudy kalman_consistency_study(int systems, uint64_t seed);

}  // namespace quadobs
