#pragma once

#include "bochner/exterior.hpp"
#include "bochner/multivector.hpp"

namespace bochner {

// Clifford multiplication on forms over an orthonormal frame, with the
// convention X.X = -|X|^2:
//   X.w = X^w - X-|w,    w.X = (-1)^p (X^w + X-|w)   for a p-form w.

Multivector clifford_left(const Form& x, const Form& omega);
Multivector clifford_left(const Form& x, const Multivector& omega);

Multivector clifford_right(const Form& omega, const Form& x);
Multivector clifford_right(const Multivector& omega, const Form& x);

/// alpha . omega, expanding alpha over monomials e_{i_1}^...^e_{i_p} and
/// applying e_{i_1}.( ... (e_{i_p}. omega)).
Multivector clifford_product(const Form& alpha, const Multivector& omega);
Multivector clifford_product(const Multivector& alpha, const Multivector& omega);

/// [alpha, omega] = alpha.omega - omega.alpha
Multivector lie_bracket(const Form& alpha, const Form& omega);

/// [Psi, omega] for a 2-form Psi via 2 sum_i (e_i-|Psi) ^ (e_i-|omega); stays
/// in the degree of omega.
Form bracket_two_form(const Form& psi, const Form& omega);

}  // namespace bochner
