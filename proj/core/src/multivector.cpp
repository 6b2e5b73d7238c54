#include "bochner/multivector.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bochner {

Multivector::Multivector(const Form& f) : q_(f.q()) { parts_.emplace(f.degree(), f); }

Form Multivector::component(int p) const {
  if (auto it = parts_.find(p); it != parts_.end()) return it->second;
  return Form(q_, p);
}

std::vector<int> Multivector::degrees() const {
  std::vector<int> out;
  out.reserve(parts_.size());
  for (const auto& [p, f] : parts_) out.push_back(p);
  return out;
}

bool Multivector::concentrated_in(int p, double tol) const {
  return std::all_of(parts_.begin(), parts_.end(),
                     [&](const auto& kv) { return kv.first == p || kv.second.is_zero(tol); });
}

Form Multivector::as_form(int p, double tol) const {
  if (!concentrated_in(p, tol)) {
    throw std::invalid_argument("multivector has components outside degree " + std::to_string(p));
  }
  return component(p);
}

double Multivector::max_abs() const {
  double m = 0.0;
  for (const auto& [p, f] : parts_) m = std::max(m, f.max_abs());
  return m;
}

void Multivector::accumulate(const Form& f, double s) {
  if (f.q() != q_) throw std::invalid_argument("multivector: mismatched ambient rank");
  auto [it, inserted] = parts_.try_emplace(f.degree(), q_, f.degree());
  if (s == 1.0) {
    it->second += f;
  } else {
    it->second += s * f;
  }
}

Multivector& Multivector::operator+=(const Multivector& other) {
  if (other.q_ != q_) throw std::invalid_argument("multivector: mismatched ambient rank");
  for (const auto& [p, f] : other.parts_) accumulate(f, 1.0);
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& other) {
  if (other.q_ != q_) throw std::invalid_argument("multivector: mismatched ambient rank");
  for (const auto& [p, f] : other.parts_) accumulate(f, -1.0);
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (auto& [p, f] : parts_) f *= s;
  return *this;
}

Multivector& Multivector::operator+=(const Form& f) {
  accumulate(f, 1.0);
  return *this;
}

std::string Multivector::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, f] : parts_) {
    if (f.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << '[' << p << "] " << f.to_string();
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace bochner
