#pragma once

#include <span>
#include <vector>

namespace torusqi {

/// Truncated Taylor expansion a_0 + a_1 d + ... + a_n d^n of a function
/// around a fixed expansion point, with a_j = g^{(j)}(x0) / j!.
///
/// All arithmetic is closed at fixed order; mixing jets of different order
/// truncates to the smaller one.
class Jet {
 public:
  Jet() : coeffs_(1, 0.0) {}
  explicit Jet(std::vector<double> coeffs);

  static Jet constant(double value, int order);
  /// The identity function expanded around x0.
  static Jet variable(double x0, int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const { return coeffs_; }
  double operator[](int j) const { return coeffs_[static_cast<std::size_t>(j)]; }
  double value() const { return coeffs_.front(); }
  /// j-th derivative at the expansion point.
  double derivative(int j) const;

  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(double scale);

  friend Jet operator+(Jet lhs, const Jet& rhs) { return lhs += rhs; }
  friend Jet operator-(Jet lhs, const Jet& rhs) { return lhs -= rhs; }
  friend Jet operator*(Jet lhs, double s) { return lhs *= s; }
  friend Jet operator*(double s, Jet rhs) { return rhs *= s; }
  friend Jet operator*(const Jet& lhs, const Jet& rhs);

  Jet reciprocal() const;
  /// this^exponent; requires a positive constant term.
  Jet pow(double exponent) const;
  /// outer(this(.)) where `outer` holds Taylor coefficients of the outer
  /// function around this->value().
  Jet compose(std::span<const double> outer) const;

 private:
  std::vector<double> coeffs_;
};

}  // namespace torusqi
