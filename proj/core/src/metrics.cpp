#include "tomt/metrics.hpp"

#include <cmath>

#include "tomt/errors.hpp"

namespace tomt {

double rssi(double mean_steps_tot, double mean_steps_variant) {
  if (!(mean_steps_variant > 0)) throw DivisionByZero("rssi: variant mean steps must be positive");
  return mean_steps_tot / mean_steps_variant;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DegenerateInput("pearson: inputs differ in length");
  if (x.size() < 2) throw DegenerateInput("pearson: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) throw DegenerateInput("pearson: zero variance");
  return sxy / std::sqrt(sxx * syy);
}

int inconsistency_count(const std::vector<RunResult>& results) {
  int count = 0;
  for (const auto& r : results) {
    if (r.success && !r.correct) ++count;
  }
  return count;
}

}  // namespace tomt
