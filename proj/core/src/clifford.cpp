#include "bochner/clifford.hpp"

#include <stdexcept>

namespace bochner {

namespace {

void check_vector(const Form& x, int q, const char* op) {
  if (x.degree() != 1) throw std::invalid_argument(std::string(op) + ": X must be a 1-form");
  if (x.q() != q) throw std::invalid_argument(std::string(op) + ": mismatched ambient rank");
}

// e_k . omega for a pure form.
Multivector basis_left(int k, const Form& omega) {
  Multivector out(omega.q());
  if (omega.degree() < omega.q()) out += basis_wedge(k, omega);
  if (omega.degree() > 0) out += -basis_interior(k, omega);
  return out;
}

Multivector basis_left(int k, const Multivector& omega) {
  Multivector out(omega.q());
  for (const auto& [p, f] : omega.parts()) out += basis_left(k, f);
  return out;
}

}  // namespace

Multivector clifford_left(const Form& x, const Form& omega) {
  check_vector(x, omega.q(), "clifford_left");
  Multivector out(omega.q());
  if (omega.degree() < omega.q()) out += wedge(x, omega);
  if (omega.degree() > 0) out += -interior(x, omega);
  return out;
}

Multivector clifford_left(const Form& x, const Multivector& omega) {
  check_vector(x, omega.q(), "clifford_left");
  Multivector out(omega.q());
  for (const auto& [p, f] : omega.parts()) out += clifford_left(x, f);
  return out;
}

Multivector clifford_right(const Form& omega, const Form& x) {
  check_vector(x, omega.q(), "clifford_right");
  Multivector out(omega.q());
  if (omega.degree() < omega.q()) out += wedge(x, omega);
  if (omega.degree() > 0) out += interior(x, omega);
  if (omega.degree() % 2 != 0) out *= -1.0;
  return out;
}

Multivector clifford_right(const Multivector& omega, const Form& x) {
  check_vector(x, omega.q(), "clifford_right");
  Multivector out(omega.q());
  for (const auto& [p, f] : omega.parts()) out += clifford_right(f, x);
  return out;
}

Multivector clifford_product(const Form& alpha, const Multivector& omega) {
  if (alpha.q() != omega.q()) {
    throw std::invalid_argument("clifford_product: mismatched ambient rank");
  }
  const Basis basis(alpha.q(), alpha.degree());
  Multivector out(omega.q());
  for (int r = 0; r < basis.size(); ++r) {
    const double a = alpha[r];
    if (a == 0.0) continue;
    const MultiIndex mono = MultiIndex::from_mask(basis.mask(r));
    const std::vector<int>& idx = mono.indices();
    Multivector term = omega;
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) term = basis_left(*it, term);
    term *= a;
    out += term;
  }
  return out;
}

Multivector clifford_product(const Multivector& alpha, const Multivector& omega) {
  if (alpha.q() != omega.q()) {
    throw std::invalid_argument("clifford_product: mismatched ambient rank");
  }
  Multivector out(omega.q());
  for (const auto& [p, f] : alpha.parts()) out += clifford_product(f, omega);
  return out;
}

Multivector lie_bracket(const Form& alpha, const Form& omega) {
  return clifford_product(alpha, Multivector(omega)) - clifford_product(omega, Multivector(alpha));
}

Form bracket_two_form(const Form& psi, const Form& omega) {
  if (psi.degree() != 2) {
    throw std::invalid_argument("bracket_two_form: Psi must be a 2-form, got degree " +
                                std::to_string(psi.degree()));
  }
  if (psi.q() != omega.q()) throw std::invalid_argument("bracket_two_form: mismatched ambient rank");
  const int q = omega.q();
  Form out(q, omega.degree());
  if (omega.degree() == 0) return out;
  for (int i = 1; i <= q; ++i) {
    const Form contracted = basis_interior(i, omega);
    if (contracted.is_zero()) continue;
    out += wedge(basis_interior(i, psi), contracted);
  }
  out *= 2.0;
  return out;
}

}  // namespace bochner
