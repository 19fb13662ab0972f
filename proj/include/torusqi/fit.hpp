#pragma once

#include <span>

namespace torusqi {

/// Least-squares slope of log(y) against log(x). Requires at least two
/// points with positive coordinates.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if ((sum_ >= 0 ? sum_ : -sum_) >= (v >= 0 ? v : -v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace torusqi
