#include "quadobs/burgers/product.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

namespace quadobs::burgers {

struct QuadraticSource::Plans {
  int grid;  // K = 2M
  double* modal = nullptr;  // K - 1 entries
  double* values = nullptr;  // K - 1 entries
  double* square = nullptr;  // K + 1 entries
  double* cosine = nullptr;  // K + 1 entries
  fftw_plan dst = nullptr;
  fftw_plan dct = nullptr;

  explicit Plans(int k) : grid(k) {
    modal = fftw_alloc_real(k - 1);
    values = fftw_alloc_real(k - 1);
    square = fftw_alloc_real(k + 1);
    cosine = fftw_alloc_real(k + 1);
    dst = fftw_plan_r2r_1d(k - 1, modal, values, FFTW_RODFT00, FFTW_ESTIMATE);
    dct = fftw_plan_r2r_1d(k + 1, square, cosine, FFTW_REDFT00, FFTW_ESTIMATE);
  }
  ~Plans() {
    fftw_destroy_plan(dst);
    fftw_destroy_plan(dct);
    fftw_free(modal);
    fftw_free(values);
    fftw_free(square);
    fftw_free(cosine);
  }
};

QuadraticSource::QuadraticSource(int modes) : modes_(modes) {
  if (modes < 1) throw std::invalid_argument("QuadraticSource: need at least one mode");
  plans_ = std::make_unique<Plans>(2 * modes);
}

QuadraticSource::~QuadraticSource() = default;

std::vector<double> QuadraticSource::grid_values(const SineSpectrum& y) const {
  if (y.modes() != modes_) throw std::invalid_argument("QuadraticSource: mode count mismatch");
  const int k = plans_->grid;
  for (int j = 0; j < k - 1; ++j) plans_->modal[j] = j < modes_ ? y.coeffs()[j] : 0.0;
  fftw_execute(plans_->dst);
  std::vector<double> out(k + 1, 0.0);
  for (int i = 1; i < k; ++i) out[i] = plans_->values[i - 1] / std::numbers::sqrt2;
  return out;
}

SineSpectrum QuadraticSource::apply(const SineSpectrum& y, double* tail) const {
  const int k = plans_->grid;
  const std::vector<double> values = grid_values(y);
  for (int i = 0; i <= k; ++i) plans_->square[i] = values[i] * values[i];
  fftw_execute(plans_->dct);
  // cosine[m] / K is the coefficient of cos(m pi x) in y^2 for 0 < m < K.
  SineSpectrum out = SineSpectrum::Zero(modes_);
  double head = 0.0;
  double rest = 0.0;
  for (int m = 1; m < k; ++m) {
    const double s = std::numbers::sqrt2 * m * std::numbers::pi / 4.0 * plans_->cosine[m] / k;
    if (m <= modes_) {
      out[m] = s;
      head += s * s;
    } else {
      rest += s * s;
    }
  }
  if (tail) *tail = head + rest > 0.0 ? std::sqrt(rest / (head + rest)) : 0.0;
  return out;
}

SineSpectrum quadratic_source_direct(const SineSpectrum& y, int out_modes) {
  SineSpectrum out = SineSpectrum::Zero(out_modes);
  const int n = y.modes();
  for (int m = 1; m <= out_modes; ++m) {
    double sum = 0.0;
    for (int j = 1; j <= n; ++j) {
      if (y[j] == 0.0) continue;
      if (j + m <= n) sum += 2.0 * y[j] * y[j + m];  // (j, j+m) and (j+m, j)
      if (m - j >= 1 && m - j <= n) sum -= y[j] * y[m - j];
    }
    out[m] = std::numbers::sqrt2 * m * std::numbers::pi / 4.0 * sum;
  }
  return out;
}

}  // namespace quadobs::burgers
