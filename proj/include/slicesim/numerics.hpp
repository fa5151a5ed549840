#pragma once

// Special functions for integer-order gamma distributions.
//
// Only integer orders are supported: the received SNR after maximum ratio
// combining over L i.i.d. Rayleigh branches is Gamma(L) distributed, so every
// quantity the simulator needs reduces to Γ(n, x) with n = L or L - 1.

namespace slicesim {

// n! as a double. Exact for n <= 22, correctly rounded beyond.
double factorial(int n);

// Exponential integral E1(x) = Γ(0, x), x > 0.
double exp_integral_e1(double x);

// Upper incomplete gamma Γ(a, x) = ∫_x^∞ t^{a-1} e^{-t} dt.
// a >= 0. The a = 0 case is E1(x); Γ(0, 0) diverges and throws std::domain_error.
double upper_incomplete_gamma(int a, double x);

// Lower incomplete gamma γ(a, x) = (a-1)! - Γ(a, x), a >= 1.
double lower_incomplete_gamma(int a, double x);

// Regularized forms Q(a, x) = Γ(a, x)/(a-1)! and P(a, x) = 1 - Q(a, x), a >= 1.
// P is evaluated by its own series below the mode so that small probabilities
// keep full relative precision.
double reg_upper_gamma(int a, double x);
double reg_lower_gamma(int a, double x);

// Smallest x >= 0 with P(a, x) = p, for a >= 1 and 0 <= p < 1.
double inv_reg_lower_gamma(int a, double p);

}  // namespace slicesim
