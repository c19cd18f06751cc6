#include "persp/vec.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace persp {

Vec::Vec(std::size_t n, double fill) : data_(n, fill) { check_finite(); }

Vec::Vec(std::initializer_list<double> values) : data_(values) { check_finite(); }

Vec::Vec(std::vector<double> values) : data_(std::move(values)) { check_finite(); }

void Vec::check_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) {
      throw std::domain_error("Vec entries must be finite");
    }
  }
}

double Vec::squared_norm() const {
  double acc = 0.0;
  for (double v : data_) acc += v * v;
  return acc;
}

double Vec::norm() const {
  // hypot-style scaling so tiny and huge entries do not under/overflow
  double scale = 0.0;
  for (double v : data_) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : data_) {
    const double r = v / scale;
    acc += r * r;
  }
  return scale * std::sqrt(acc);
}

bool Vec::is_zero() const {
  for (double v : data_) {
    if (v != 0.0) return false;
  }
  return true;
}

Vec& Vec::operator+=(const Vec& other) {
  require_same_size(*this, other, "Vec::operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  check_finite();
  return *this;
}

Vec& Vec::operator-=(const Vec& other) {
  require_same_size(*this, other, "Vec::operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  check_finite();
  return *this;
}

Vec& Vec::operator*=(double factor) {
  for (double& v : data_) v *= factor;
  check_finite();
  return *this;
}

Vec& Vec::operator/=(double divisor) {
  for (double& v : data_) v /= divisor;
  check_finite();
  return *this;
}

Vec operator+(Vec lhs, const Vec& rhs) { return lhs += rhs; }
Vec operator-(Vec lhs, const Vec& rhs) { return lhs -= rhs; }
Vec operator-(Vec v) { return v *= -1.0; }
Vec operator*(double factor, Vec v) { return v *= factor; }
Vec operator*(Vec v, double factor) { return v *= factor; }
Vec operator/(Vec v, double divisor) { return v /= divisor; }

double dot(const Vec& a, const Vec& b) {
  require_same_size(a, b, "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double distance(const Vec& a, const Vec& b) { return (a - b).norm(); }

Vec concat(const Vec& x, const Vec& y) {
  std::vector<double> out(x.raw());
  out.insert(out.end(), y.begin(), y.end());
  return Vec(std::move(out));
}

void require_same_size(const Vec& a, const Vec& b, const char* context) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(context) + ": dimension mismatch (" +
                         std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
}

void require_size(const Vec& v, std::size_t n, const char* context) {
  if (v.size() != n) {
    throw DimensionError(std::string(context) + ": expected dimension " + std::to_string(n) +
                         ", got " + std::to_string(v.size()));
  }
}

std::string to_string(const Vec& v) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << ')';
  return os.str();
}

}  // namespace persp
