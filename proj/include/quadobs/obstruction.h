#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadobs/rational_matrix.h"
#include "quadobs/vector_field.h"

namespace quadobs {

/// Default bracket depth for the depth-bounded span computations.
inline constexpr int kDefaultBracketDepth = 6;

/// A bracket evaluated at the equilibrium, e.g. word "[ad1, ad2]".
struct BracketWitness {
  std::string word;
  int length = 0;  // number of f0/f1 letters
  RationalVector value;
};

/// S1(0), the two-f1 brackets probed for S2(0), and the projectors.
struct BracketFiltration {
  int dim = 0;
  int depth = 0;  // S2 enumeration bound; completeness beyond it is not claimed
  std::vector<RationalVector> s1_basis;
  std::vector<BracketWitness> s2_witnesses;
  RationalMatrix projector;       // orthogonal projection onto S1(0)
  RationalMatrix projector_perp;  // Id - projector
  bool s2_in_s1 = true;           // up to `depth`
  std::optional<int> bad_index;
  std::optional<RationalVector> drift_dir;

  int d() const { return static_cast<int>(s1_basis.size()); }
  /// Witnesses whose value leaves S1(0).
  std::vector<BracketWitness> escaping_witnesses() const;
};

/// Columns b, Ab, ..., A^{n-1} b.
RationalMatrix kalman_matrix(const LinearPair& pair);
int kalman_rank(const LinearPair& pair);

/// Basis of span{ad^j_{f0}(f1)(0), 0 <= j <= n-1}, cross-checked against the
/// Kalman column span of the linearization.
std::vector<RationalVector> s1_basis(const PolyVectorField& f0,
                                     const PolyVectorField& f1);

/// Builds the filtration: S1 basis, projectors, the brackets
/// [ad^i f1, ad^j f1](0) (i < j, i + j + 2 <= depth) as S2 witnesses, the
/// S2 in S1 verdict, and the bad index / drift direction when present.
BracketFiltration s2_span(const PolyVectorField& f0, const PolyVectorField& f1,
                          int depth = kDefaultBracketDepth);

/// Smallest k in 1..d with [ad^{k-1} f1, ad^k f1](0) outside S1(0).
std::optional<int> first_bad_index(const PolyVectorField& f0,
                                   const PolyVectorField& f1);

/// d_k = -P_perp [ad^{k-1} f1, ad^k f1](0). Throws std::domain_error when the
/// projection vanishes.
RationalVector drift_direction(const PolyVectorField& f0,
                               const PolyVectorField& f1, int k);

struct LieRankResult {
  bool full = false;  // "false" only means not attained within `depth`
  int dimension = 0;
  int depth = 0;
};

/// Span at 0 of all iterated brackets with at most `depth` letters.
LieRankResult lie_rank_check(const PolyVectorField& f0,
                             const PolyVectorField& f1,
                             int depth = kDefaultBracketDepth);

struct ParityLevel {
  int k = 0;
  int dim_odd = 0;   // dim S_{2k+1}(0)
  int dim_even = 0;  // dim S_{2k+2}(0)
  bool equal() const { return dim_odd == dim_even; }
};

struct ParityReport {
  int depth = 0;
  std::vector<ParityLevel> levels;
  bool all_equal() const;
  std::optional<int> first_violation() const;
};

ParityReport parity_check(const PolyVectorField& f0, const PolyVectorField& f1,
                          int depth, int kmax);

/// dim S_m(0) for m = 0..max_f1 within the given depth (index m).
std::vector<int> filtration_dimensions(const PolyVectorField& f0,
                                       const PolyVectorField& f1, int depth,
                                       int max_f1);

/// Structured text report: basis vectors, witnesses, k and d_k.
std::string format_filtration_report(const BracketFiltration& filtration);

/// Name of the control class the drift obstructs, e.g. "W^{1,inf}".
std::string obstructed_class(int k);

}  // namespace quadobs
