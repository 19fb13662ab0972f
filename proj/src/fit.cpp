#include "torusqi/fit.hpp"

#include <cmath>

#include "torusqi/error.hpp"

namespace torusqi {

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  detail::require(x.size() == y.size() && x.size() >= 2, "slope fit needs two or more pairs");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw NumericalFailure("log-log fit of a nonpositive value");
    }
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  detail::require(sxx > 0.0, "slope fit needs distinct abscissae");
  return sxy / sxx;
}

}  // namespace torusqi
