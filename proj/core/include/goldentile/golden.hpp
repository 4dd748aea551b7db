#pragma once

// Exact arithmetic in Z[tau], tau = (1 + sqrt5) / 2, together with the
// algebraic conjugation tau -> 1 - tau (the star map).  Every geometric
// quantity of the tilings (tile sides, displacements, control points) lives
// in this ring, so comparisons are done on integers only.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace goldentile {

inline constexpr double kTau = 1.6180339887498949;
inline constexpr double kSigma = 1.0 - kTau;  // tau star, -1/tau
inline constexpr double kSqrt5 = 2.2360679774997897;
// kTau + kTauLow and kSigma - kTauLow agree with tau and sigma to about 1e-33.
inline constexpr double kTauLow = -5.432115203682506e-17;
inline constexpr double kPi = 3.14159265358979323846;

/// a + b*tau with 64-bit integer coefficients.  Arithmetic is overflow
/// checked and throws std::overflow_error.
class GoldenNumber {
 public:
  constexpr GoldenNumber() = default;
  constexpr GoldenNumber(std::int64_t a, std::int64_t b = 0) : a_(a), b_(b) {}

  static constexpr GoldenNumber tau() { return {0, 1}; }
  static constexpr GoldenNumber sigma() { return {1, -1}; }

  constexpr std::int64_t rational() const { return a_; }
  constexpr std::int64_t irrational() const { return b_; }

  GoldenNumber operator+(const GoldenNumber& o) const;
  GoldenNumber operator-(const GoldenNumber& o) const;
  GoldenNumber operator-() const;
  GoldenNumber operator*(const GoldenNumber& o) const;
  GoldenNumber& operator+=(const GoldenNumber& o) { return *this = *this + o; }
  GoldenNumber& operator-=(const GoldenNumber& o) { return *this = *this - o; }
  GoldenNumber& operator*=(const GoldenNumber& o) { return *this = *this * o; }

  /// Image under tau -> 1 - tau.
  GoldenNumber star() const;

  /// Exact sign of a + b*tau, decided with integer arithmetic only.
  int sign() const;

  double value() const {
    const double b = static_cast<double>(b_);
    return std::fma(b, kTau, static_cast<double>(a_)) + b * kTauLow;
  }
  double star_value() const {
    const double b = static_cast<double>(b_);
    return std::fma(b, kSigma, static_cast<double>(a_)) - b * kTauLow;
  }

  friend constexpr bool operator==(const GoldenNumber&, const GoldenNumber&) = default;
  friend bool operator<(const GoldenNumber& x, const GoldenNumber& y) { return (x - y).sign() < 0; }
  friend bool operator>(const GoldenNumber& x, const GoldenNumber& y) { return y < x; }
  friend bool operator<=(const GoldenNumber& x, const GoldenNumber& y) { return !(y < x); }
  friend bool operator>=(const GoldenNumber& x, const GoldenNumber& y) { return !(x < y); }

  std::string to_string() const;

 private:
  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
};

std::ostream& operator<<(std::ostream& os, const GoldenNumber& x);

inline GoldenNumber mul(const GoldenNumber& x, const GoldenNumber& y) { return x * y; }
inline int sign(const GoldenNumber& x) { return x.sign(); }

/// tau^n for n >= 0.
GoldenNumber tau_power(int n);

/// Point of Z[tau]^d, d in {1, 2}.  Components beyond `dim` are zero.
struct GoldenVec {
  int dim = 1;
  std::array<GoldenNumber, 2> c{};

  GoldenVec() = default;
  explicit GoldenVec(GoldenNumber x) : dim(1), c{x, GoldenNumber{}} {}
  GoldenVec(GoldenNumber x, GoldenNumber y) : dim(2), c{x, y} {}
  static GoldenVec zero(int dim);

  const GoldenNumber& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  GoldenNumber& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

  GoldenVec operator+(const GoldenVec& o) const;
  GoldenVec operator-(const GoldenVec& o) const;
  /// Componentwise scaling by a ring element.
  GoldenVec scaled(const GoldenNumber& s) const;
  GoldenVec star() const;
  std::array<double, 2> value() const;
  std::array<double, 2> star_value() const;

  friend bool operator==(const GoldenVec& x, const GoldenVec& y) {
    return x.dim == y.dim && x.c == y.c;
  }
  /// Lexicographic order on the integer coefficients; only for sorting.
  friend bool operator<(const GoldenVec& x, const GoldenVec& y);
};

std::ostream& operator<<(std::ostream& os, const GoldenVec& v);

/// A point k = (p + q*tau)/sqrt5 of the Fourier module Z[tau]/sqrt5, per axis.
struct ModuleCoord {
  std::int64_t p = 0;
  std::int64_t q = 0;

  double value() const;
  /// -(p + q*(1 - tau))/sqrt5: the star map sends sqrt5 to -sqrt5.
  double star_value() const;

  ModuleCoord operator+(const ModuleCoord& o) const { return {p + o.p, q + o.q}; }
  ModuleCoord operator-(const ModuleCoord& o) const { return {p - o.p, q - o.q}; }
  ModuleCoord operator-() const { return {-p, -q}; }
  friend constexpr bool operator==(const ModuleCoord&, const ModuleCoord&) = default;
  friend constexpr auto operator<=>(const ModuleCoord&, const ModuleCoord&) = default;
};

/// Fourier-module point in d dimensions (one ModuleCoord per axis).
struct FourierIndex {
  int dim = 1;
  std::array<ModuleCoord, 2> axis{};

  FourierIndex() = default;
  explicit FourierIndex(ModuleCoord k1) : dim(1), axis{k1, ModuleCoord{}} {}
  FourierIndex(ModuleCoord k1, ModuleCoord k2) : dim(2), axis{k1, k2} {}
  static FourierIndex zero(int dim);

  std::array<double, 2> value() const;
  std::array<double, 2> star_value() const;

  FourierIndex operator+(const FourierIndex& o) const;
  FourierIndex operator-() const;
  friend bool operator==(const FourierIndex& x, const FourierIndex& y) {
    return x.dim == y.dim && x.axis == y.axis;
  }
  friend bool operator<(const FourierIndex& x, const FourierIndex& y) {
    return x.axis < y.axis;
  }
};

/// Star image of a Fourier-module point, per axis.
std::array<double, 2> star_value(const FourierIndex& k);

struct GoldenNumberHash {
  std::size_t operator()(const GoldenNumber& x) const noexcept;
};
struct GoldenVecHash {
  std::size_t operator()(const GoldenVec& v) const noexcept;
};

}  // namespace goldentile
