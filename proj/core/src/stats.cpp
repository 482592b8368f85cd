#include "rauzy/stats.hpp"

#include <array>

#include "rauzy/error.hpp"

namespace rauzy {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw InputError("line fit needs at least two paired points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw NumericError("line fit with constant abscissa");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    rss += r * r;
  }
  f.r2 = syy > 0.0 ? 1.0 - rss / syy : 1.0;
  f.slope_stderr = n > 2 ? std::sqrt(rss / static_cast<double>(n - 2) / sxx) : 0.0;
  return f;
}

LogCorrectedFit fit_line_with_log(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 3 || y.size() != n) throw InputError("log-corrected fit needs at least three points");
  // Centered columns keep the 2x2 normal system well conditioned.
  double mx = 0.0, ml = 0.0, my = 0.0;
  std::vector<double> lx(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0)) throw InputError("log-corrected fit needs positive abscissae");
    lx[i] = std::log(x[i]);
    mx += x[i];
    ml += lx[i];
    my += y[i];
  }
  const double dn = static_cast<double>(n);
  mx /= dn;
  ml /= dn;
  my /= dn;
  double a11 = 0.0, a12 = 0.0, a22 = 0.0, b1 = 0.0, b2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = x[i] - mx, v = lx[i] - ml, w = y[i] - my;
    a11 += u * u;
    a12 += u * v;
    a22 += v * v;
    b1 += u * w;
    b2 += v * w;
  }
  const double det = a11 * a22 - a12 * a12;
  if (!(std::abs(det) > 0.0)) throw NumericError("degenerate log-corrected fit");
  LogCorrectedFit f;
  f.slope = (a22 * b1 - a12 * b2) / det;
  f.log_coefficient = (a11 * b2 - a12 * b1) / det;
  f.intercept = my - f.slope * mx - f.log_coefficient * ml;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i] - f.log_coefficient * lx[i];
    rss += r * r;
  }
  f.slope_stderr = n > 3 ? std::sqrt(rss / (dn - 3.0) * a22 / det) : 0.0;
  return f;
}

MeanStderr mean_stderr(std::span<const double> v) {
  if (v.empty()) throw InputError("mean of an empty sample");
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  if (v.size() < 2) return {m, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double var = ss / static_cast<double>(v.size() - 1);
  return {m, std::sqrt(var / static_cast<double>(v.size()))};
}

}  // namespace rauzy
