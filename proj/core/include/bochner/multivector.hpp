#pragma once

#include <map>
#include <string>
#include <vector>

#include "bochner/exterior.hpp"

namespace bochner {

// Mixed-degree element of the exterior algebra: a sparse map degree -> Form.
// Clifford products of pure forms generally land here.
class Multivector {
 public:
  explicit Multivector(int q = 0) : q_(q) {}
  Multivector(const Form& f);  // NOLINT(google-explicit-constructor)

  int q() const { return q_; }

  /// Degree component, or the zero form of that degree when absent.
  Form component(int p) const;
  bool has_component(int p) const { return parts_.contains(p); }
  std::vector<int> degrees() const;
  const std::map<int, Form>& parts() const { return parts_; }

  /// True when every component except degree p is zero within tol.
  bool concentrated_in(int p, double tol = 0.0) const;
  /// The degree-p part, after checking concentration. Throws otherwise.
  Form as_form(int p, double tol = 0.0) const;

  double max_abs() const;

  Multivector& operator+=(const Multivector& other);
  Multivector& operator-=(const Multivector& other);
  Multivector& operator*=(double s);
  Multivector& operator+=(const Form& f);

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }

  std::string to_string() const;

 private:
  void accumulate(const Form& f, double s);

  int q_;
  std::map<int, Form> parts_;
};

}  // namespace bochner
