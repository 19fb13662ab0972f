#include "torusqi/jet.hpp"

#include <algorithm>
#include <cmath>

#include "torusqi/error.hpp"

namespace torusqi {

Jet::Jet(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  detail::require(!coeffs_.empty(), "jet needs at least one coefficient");
}

Jet Jet::constant(double value, int order) {
  detail::require(order >= 0, "jet order must be nonnegative");
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[0] = value;
  return Jet(std::move(c));
}

Jet Jet::variable(double x0, int order) {
  Jet j = constant(x0, order);
  if (order >= 1) j.coeffs_[1] = 1.0;
  return j;
}

double Jet::derivative(int j) const {
  double factorial = 1.0;
  for (int i = 2; i <= j; ++i) factorial *= i;
  return coeffs_.at(static_cast<std::size_t>(j)) * factorial;
}

Jet& Jet::operator+=(const Jet& other) {
  coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& other) {
  coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Jet& Jet::operator*=(double scale) {
  for (double& c : coeffs_) c *= scale;
  return *this;
}

Jet operator*(const Jet& lhs, const Jet& rhs) {
  const std::size_t n = std::min(lhs.coeffs_.size(), rhs.coeffs_.size());
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k <= i; ++k) acc += lhs.coeffs_[k] * rhs.coeffs_[i - k];
    out[i] = acc;
  }
  return Jet(std::move(out));
}

Jet Jet::reciprocal() const { return pow(-1.0); }

Jet Jet::pow(double exponent) const {
  const double a0 = coeffs_[0];
  if (!(a0 > 0.0)) throw InvalidArgument("jet power needs a positive constant term");
  const std::size_t n = coeffs_.size();
  std::vector<double> b(n, 0.0);
  b[0] = std::pow(a0, exponent);
  // b_k = 1/(k a_0) sum_{i=1}^k ((exponent + 1) i - k) a_i b_{k-i}
  for (std::size_t k = 1; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      acc += ((exponent + 1.0) * static_cast<double>(i) - static_cast<double>(k)) * coeffs_[i] *
             b[k - i];
    }
    b[k] = acc / (static_cast<double>(k) * a0);
  }
  return Jet(std::move(b));
}

Jet Jet::compose(std::span<const double> outer) const {
  detail::require(!outer.empty(), "outer expansion is empty");
  Jet delta = *this;
  delta.coeffs_[0] = 0.0;
  const std::size_t terms = std::min(outer.size(), coeffs_.size());
  Jet acc = constant(outer[terms - 1], order());
  for (std::size_t k = terms - 1; k-- > 0;) {
    acc = acc * delta;
    acc.coeffs_[0] += outer[k];
  }
  return acc;
}

}  // namespace torusqi
