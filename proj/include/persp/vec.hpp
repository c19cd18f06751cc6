#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace persp {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense real vector with finite entries. Used for both the base space and
/// the scaling space; the two are only distinguished by the caller.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t n, double fill = 0.0);
  Vec(std::initializer_list<double> values);
  explicit Vec(std::vector<double> values);

  static Vec zeros(std::size_t n) { return Vec(n, 0.0); }

  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  std::span<const double> values() const { return data_; }
  const std::vector<double>& raw() const { return data_; }

  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  double norm() const;
  double squared_norm() const;
  bool is_zero() const;

  Vec& operator+=(const Vec& other);
  Vec& operator-=(const Vec& other);
  Vec& operator*=(double factor);
  Vec& operator/=(double divisor);

  friend bool operator==(const Vec&, const Vec&) = default;

 private:
  void check_finite() const;

  std::vector<double> data_;
};

Vec operator+(Vec lhs, const Vec& rhs);
Vec operator-(Vec lhs, const Vec& rhs);
Vec operator-(Vec v);
Vec operator*(double factor, Vec v);
Vec operator*(Vec v, double factor);
Vec operator/(Vec v, double divisor);

double dot(const Vec& a, const Vec& b);
double distance(const Vec& a, const Vec& b);

/// Concatenation (x, y) of a base-space and a scaling-space vector.
Vec concat(const Vec& x, const Vec& y);

void require_same_size(const Vec& a, const Vec& b, const char* context);
void require_size(const Vec& v, std::size_t n, const char* context);

std::string to_string(const Vec& v);

}  // namespace persp
