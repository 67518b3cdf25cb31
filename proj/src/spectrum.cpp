#include "bsespec/spectrum.hpp"

#include "bsespec/error.hpp"

namespace bsespec {

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 2 || !(hi > lo)) {
    throw Error(ErrorCode::InvalidConfig, "grid needs at least 2 points and hi > lo");
  }
  std::vector<double> w(points);
  const double h = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) w[i] = lo + i * h;
  w.back() = hi;
  return w;
}

std::vector<double> symmetric_grid(double hi, int points) {
  std::vector<double> w = uniform_grid(-hi, hi, points);
  // Mirror exactly so eps(-w) = -eps(w) can be checked sample by sample.
  for (int i = 0; i < points / 2; ++i) w[points - 1 - i] = -w[i];
  if (points % 2 == 1) w[points / 2] = 0.0;
  return w;
}

}  // namespace bsespec
