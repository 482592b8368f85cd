#pragma once

// Small numeric helpers shared by the estimators: compensated sums and
// least-squares fits.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace rauzy {

// Neumaier's variant of Kahan summation; merge() folds another partial sum
// in with the same compensation.
class KahanSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  void merge(const KahanSum& o) noexcept {
    add(o.sum_);
    add(o.comp_);
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r2 = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Least squares y ~ c0 + c1 * x + c2 * log(x); returns c1 with its standard
// error (x must be positive).
struct LogCorrectedFit {
  double slope = 0.0;
  double slope_stderr = 0.0;
  double log_coefficient = 0.0;
  double intercept = 0.0;
};

LogCorrectedFit fit_line_with_log(std::span<const double> x, std::span<const double> y);

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanStderr mean_stderr(std::span<const double> v);

}  // namespace rauzy
