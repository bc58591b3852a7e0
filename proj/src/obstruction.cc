#include "quadobs/obstruction.h"

#include <sstream>
#include <stdexcept>

#include "quadobs/errors.h"

namespace quadobs {

namespace {

void require_equilibrium(const PolyVectorField& f0, const PolyVectorField& f1,
                         const char* where) {
  if (f0.dim() != f1.dim()) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
  }
  if (!is_zero(f0.at_origin())) {
    throw std::domain_error(std::string(where) + ": not an equilibrium, f0(0) = " +
                            to_string(f0.at_origin()));
  }
}

// Right-normed bracket [a1, [a2, [..., ak]]] with its f1 count.
struct Word {
  std::string label;
  int length;
  int f1_count;
  PolyVectorField field;
};

// All nonzero right-normed words up to `depth` letters with at most
// `max_f1` occurrences of f1. Every Lie monomial is a combination of
// right-normed ones with the same letter counts, so spans agree.
std::vector<Word> right_normed_words(const PolyVectorField& f0,
                                     const PolyVectorField& f1, int depth,
                                     int max_f1) {
  std::vector<Word> all;
  std::vector<Word> level;
  level.push_back({"f0", 1, 0, f0});
  if (max_f1 >= 1) level.push_back({"f1", 1, 1, f1});
  for (int length = 1; length <= depth; ++length) {
    for (const auto& w : level) all.push_back(w);
    if (length == depth) break;
    std::vector<Word> next;
    for (const auto& w : level) {
      for (int letter = 0; letter < 2; ++letter) {
        const int count = w.f1_count + letter;
        if (count > max_f1) continue;
        PolyVectorField b = lie_bracket(letter == 0 ? f0 : f1, w.field);
        if (b.is_zero()) continue;
        next.push_back({"[" + std::string(letter == 0 ? "f0" : "f1") + "," +
                            w.label + "]",
                        length + 1, count, std::move(b)});
      }
    }
    level = std::move(next);
  }
  return all;
}

std::string vector_string(const RationalVector& v) { return to_string(v); }

}  // namespace

std::vector<BracketWitness> BracketFiltration::escaping_witnesses() const {
  std::vector<BracketWitness> out;
  for (const auto& w : s2_witnesses)
    if (!in_span(s1_basis, w.value, dim)) out.push_back(w);
  return out;
}

RationalMatrix kalman_matrix(const LinearPair& pair) {
  const int n = pair.dim();
  if (static_cast<int>(pair.b.size()) != n || pair.a.cols() != n) {
    throw std::invalid_argument("kalman_matrix: inconsistent dimensions");
  }
  std::vector<RationalVector> columns{pair.b};
  for (int k = 1; k < n; ++k) columns.push_back(pair.a * columns.back());
  return RationalMatrix::FromColumns(columns, n);
}

int kalman_rank(const LinearPair& pair) { return rank(kalman_matrix(pair)); }

std::vector<RationalVector> s1_basis(const PolyVectorField& f0,
                                     const PolyVectorField& f1) {
  require_equilibrium(f0, f1, "s1_basis");
  const int n = f0.dim();
  std::vector<RationalVector> at_zero;
  for (const auto& ad : ad_sequence(f0, f1, n - 1)) at_zero.push_back(ad.at_origin());
  std::vector<RationalVector> basis = independent_subset(at_zero, n);

  const RationalMatrix kalman = kalman_matrix(linearize(f0, f1));
  std::vector<RationalVector> combined = basis;
  for (int c = 0; c < n; ++c) combined.push_back(kalman.column(c));
  const int kalman_dim = rank(kalman);
  if (kalman_dim != static_cast<int>(basis.size()) || rank_of(combined, n) != kalman_dim) {
    throw NumericalIntegrityError("s1_basis: bracket span differs from Kalman span");
  }
  return basis;
}

std::optional<int> first_bad_index(const PolyVectorField& f0,
                                   const PolyVectorField& f1) {
  require_equilibrium(f0, f1, "first_bad_index");
  const int n = f0.dim();
  const auto basis = s1_basis(f0, f1);
  const int d = static_cast<int>(basis.size());
  const auto ads = ad_sequence(f0, f1, d);
  for (int j = 1; j <= d; ++j) {
    const RationalVector v = lie_bracket(ads[j - 1], ads[j]).at_origin();
    if (!in_span(basis, v, n)) return j;
  }
  return std::nullopt;
}

RationalVector drift_direction(const PolyVectorField& f0,
                               const PolyVectorField& f1, int k) {
  require_equilibrium(f0, f1, "drift_direction");
  if (k < 1) throw std::invalid_argument("drift_direction: k must be >= 1");
  const int n = f0.dim();
  const auto basis = s1_basis(f0, f1);
  const RationalMatrix perp =
      RationalMatrix::Identity(n) - orthogonal_projector(basis, n);
  const auto ads = ad_sequence(f0, f1, k);
  const RationalVector bracket = lie_bracket(ads[k - 1], ads[k]).at_origin();
  RationalVector d = -(perp * bracket);
  if (is_zero(d)) {
    throw std::domain_error("drift_direction: [ad^" + std::to_string(k - 1) +
                            ", ad^" + std::to_string(k) +
                            "](0) lies in S1(0); k is not a bad index");
  }
  return d;
}

BracketFiltration s2_span(const PolyVectorField& f0, const PolyVectorField& f1,
                          int depth) {
  require_equilibrium(f0, f1, "s2_span");
  if (depth < 2) throw std::invalid_argument("s2_span: depth must be >= 2");
  const int n = f0.dim();
  BracketFiltration out;
  out.dim = n;
  out.depth = depth;
  out.s1_basis = s1_basis(f0, f1);
  out.projector = orthogonal_projector(out.s1_basis, n);
  out.projector_perp = RationalMatrix::Identity(n) - out.projector;

  // Degree-two part of the ideal generated by f1 is spanned by
  // [ad^i f1, ad^j f1], whose length is i + j + 2.
  const int max_ad = std::max(depth - 2, 1);
  const auto ads = ad_sequence(f0, f1, max_ad);
  for (int j = 1; j <= max_ad; ++j) {
    for (int i = 0; i < j; ++i) {
      if (i + j + 2 > depth) continue;
      BracketWitness w;
      w.word = "[ad" + std::to_string(i) + ", ad" + std::to_string(j) + "]";
      w.length = i + j + 2;
      w.value = lie_bracket(ads[i], ads[j]).at_origin();
      if (!in_span(out.s1_basis, w.value, n)) out.s2_in_s1 = false;
      out.s2_witnesses.push_back(std::move(w));
    }
  }
  out.bad_index = first_bad_index(f0, f1);
  if (out.bad_index) out.drift_dir = drift_direction(f0, f1, *out.bad_index);
  return out;
}

LieRankResult lie_rank_check(const PolyVectorField& f0,
                             const PolyVectorField& f1, int depth) {
  require_equilibrium(f0, f1, "lie_rank_check");
  if (depth < 1) throw std::invalid_argument("lie_rank_check: depth must be >= 1");
  const int n = f0.dim();
  std::vector<RationalVector> values;
  for (const auto& w : right_normed_words(f0, f1, depth, depth)) {
    values.push_back(w.field.at_origin());
  }
  LieRankResult r;
  r.depth = depth;
  r.dimension = static_cast<int>(independent_subset(values, n).size());
  r.full = r.dimension == n;
  return r;
}

std::vector<int> filtration_dimensions(const PolyVectorField& f0,
                                       const PolyVectorField& f1, int depth,
                                       int max_f1) {
  require_equilibrium(f0, f1, "filtration_dimensions");
  const int n = f0.dim();
  const auto words = right_normed_words(f0, f1, depth, max_f1);
  std::vector<int> dims;
  for (int m = 0; m <= max_f1; ++m) {
    std::vector<RationalVector> values;
    for (const auto& w : words)
      if (w.f1_count <= m) values.push_back(w.field.at_origin());
    dims.push_back(rank_of(values, n));
  }
  return dims;
}

bool ParityReport::all_equal() const {
  for (const auto& l : levels)
    if (!l.equal()) return false;
  return true;
}

std::optional<int> ParityReport::first_violation() const {
  for (const auto& l : levels)
    if (!l.equal()) return l.k;
  return std::nullopt;
}

ParityReport parity_check(const PolyVectorField& f0, const PolyVectorField& f1,
                          int depth, int kmax) {
  if (kmax < 0) throw std::invalid_argument("parity_check: kmax must be >= 0");
  const auto dims = filtration_dimensions(f0, f1, depth, 2 * kmax + 2);
  ParityReport report;
  report.depth = depth;
  for (int k = 0; k <= kmax; ++k) {
    report.levels.push_back({k, dims[2 * k + 1], dims[2 * k + 2]});
  }
  return report;
}

std::string obstructed_class(int k) {
  return "W^{" + std::to_string(2 * k - 3) + ",inf}";
}

std::string format_filtration_report(const BracketFiltration& f) {
  std::ostringstream os;
  os << "dimension: " << f.dim << "\n";
  os << "bracket depth: " << f.depth << "\n";
  os << "S1 dimension: " << f.d() << "\n";
  for (size_t i = 0; i < f.s1_basis.size(); ++i) {
    os << "S1 basis " << i << ": " << vector_string(f.s1_basis[i]) << "\n";
  }
  for (const auto& w : f.s2_witnesses) {
    os << "S2 witness " << w.word << " (length " << w.length
       << "): " << vector_string(w.value)
       << (in_span(f.s1_basis, w.value, f.dim) ? " in S1" : " NOT in S1") << "\n";
  }
  os << "S2 in S1 (up to depth " << f.depth << "): " << (f.s2_in_s1 ? "yes" : "no")
     << "\n";
  if (f.bad_index) {
    os << "bad index k: " << *f.bad_index << "\n";
    os << "drift direction d_" << *f.bad_index << ": " << vector_string(*f.drift_dir)
       << "\n";
  } else {
    os << "bad index k: none\n";
  }
  return os.str();
}

}  // namespace quadobs
