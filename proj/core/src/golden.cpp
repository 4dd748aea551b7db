#include "goldentile/golden.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace goldentile {

namespace {

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("GoldenNumber: integer overflow in addition");
  return r;
}

std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_sub_overflow(x, y, &r)) throw std::overflow_error("GoldenNumber: integer overflow in subtraction");
  return r;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("GoldenNumber: integer overflow in multiplication");
  return r;
}

}  // namespace

GoldenNumber GoldenNumber::operator+(const GoldenNumber& o) const {
  return {checked_add(a_, o.a_), checked_add(b_, o.b_)};
}

GoldenNumber GoldenNumber::operator-(const GoldenNumber& o) const {
  return {checked_sub(a_, o.a_), checked_sub(b_, o.b_)};
}

GoldenNumber GoldenNumber::operator-() const { return GoldenNumber{} - *this; }

// (a + b tau)(c + d tau) = ac + bd + (ad + bc + bd) tau, using tau^2 = tau + 1.
GoldenNumber GoldenNumber::operator*(const GoldenNumber& o) const {
  const std::int64_t bd = checked_mul(b_, o.b_);
  return {checked_add(checked_mul(a_, o.a_), bd),
          checked_add(checked_add(checked_mul(a_, o.b_), checked_mul(b_, o.a_)), bd)};
}

GoldenNumber GoldenNumber::star() const { return {checked_add(a_, b_), checked_sub(0, b_)}; }

__extension__ using i128 = __int128;

// a + b tau = (x + y sqrt5)/2 with x = 2a + b, y = b.
int GoldenNumber::sign() const {
  const i128 x = static_cast<i128>(a_) * 2 + b_;
  const i128 y = b_;
  const int sx = (x > 0) - (x < 0);
  const int sy = (y > 0) - (y < 0);
  if (sx == 0) return sy;
  if (sy == 0 || sx == sy) return sx;
  const i128 x2 = x * x;
  const i128 y2 = 5 * y * y;
  if (x2 == y2) return 0;  // unreachable for integers, sqrt5 is irrational
  return x2 > y2 ? sx : sy;
}

std::string GoldenNumber::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GoldenNumber& x) {
  const auto a = x.rational();
  const auto b = x.irrational();
  if (b == 0) return os << a;
  if (a != 0) os << a << (b < 0 ? "-" : "+");
  else if (b < 0) os << "-";
  const auto mag = b < 0 ? -b : b;
  if (mag != 1) os << mag << "*";
  return os << "tau";
}

GoldenNumber tau_power(int n) {
  if (n < 0) throw std::invalid_argument("tau_power: negative exponent");
  GoldenNumber r{1, 0};
  for (int i = 0; i < n; ++i) r *= GoldenNumber::tau();
  return r;
}

GoldenVec GoldenVec::zero(int dim) {
  GoldenVec v;
  v.dim = dim;
  return v;
}

GoldenVec GoldenVec::operator+(const GoldenVec& o) const {
  GoldenVec r = *this;
  for (int i = 0; i < dim; ++i) r[i] = c[i] + o[i];
  return r;
}

GoldenVec GoldenVec::operator-(const GoldenVec& o) const {
  GoldenVec r = *this;
  for (int i = 0; i < dim; ++i) r[i] = c[i] - o[i];
  return r;
}

GoldenVec GoldenVec::scaled(const GoldenNumber& s) const {
  GoldenVec r = *this;
  for (int i = 0; i < dim; ++i) r[i] = c[i] * s;
  return r;
}

GoldenVec GoldenVec::star() const {
  GoldenVec r = *this;
  for (int i = 0; i < dim; ++i) r[i] = c[i].star();
  return r;
}

std::array<double, 2> GoldenVec::value() const { return {c[0].value(), c[1].value()}; }
std::array<double, 2> GoldenVec::star_value() const { return {c[0].star_value(), c[1].star_value()}; }

bool operator<(const GoldenVec& x, const GoldenVec& y) {
  for (int i = 0; i < 2; ++i) {
    if (x.c[i].rational() != y.c[i].rational()) return x.c[i].rational() < y.c[i].rational();
    if (x.c[i].irrational() != y.c[i].irrational()) return x.c[i].irrational() < y.c[i].irrational();
  }
  return x.dim < y.dim;
}

std::ostream& operator<<(std::ostream& os, const GoldenVec& v) {
  os << "(" << v[0];
  if (v.dim == 2) os << ", " << v[1];
  return os << ")";
}

double ModuleCoord::value() const {
  return (static_cast<double>(p) + static_cast<double>(q) * kTau) / kSqrt5;
}

double ModuleCoord::star_value() const {
  return -(static_cast<double>(p) + static_cast<double>(q) * kSigma) / kSqrt5;
}

FourierIndex FourierIndex::zero(int dim) {
  FourierIndex k;
  k.dim = dim;
  return k;
}

std::array<double, 2> FourierIndex::value() const {
  return {axis[0].value(), dim == 2 ? axis[1].value() : 0.0};
}

std::array<double, 2> FourierIndex::star_value() const {
  return {axis[0].star_value(), dim == 2 ? axis[1].star_value() : 0.0};
}

FourierIndex FourierIndex::operator+(const FourierIndex& o) const {
  FourierIndex r = *this;
  for (int i = 0; i < 2; ++i) r.axis[i] = axis[i] + o.axis[i];
  return r;
}

FourierIndex FourierIndex::operator-() const {
  FourierIndex r = *this;
  for (int i = 0; i < 2; ++i) r.axis[i] = -axis[i];
  return r;
}

std::array<double, 2> star_value(const FourierIndex& k) { return k.star_value(); }

std::size_t GoldenNumberHash::operator()(const GoldenNumber& x) const noexcept {
  const auto h1 = std::hash<std::int64_t>{}(x.rational());
  const auto h2 = std::hash<std::int64_t>{}(x.irrational());
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

std::size_t GoldenVecHash::operator()(const GoldenVec& v) const noexcept {
  GoldenNumberHash h;
  const auto h1 = h(v[0]);
  return h1 ^ (h(v[1]) + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

}  // namespace goldentile
