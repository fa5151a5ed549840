#include "slicesim/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace slicesim {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_order(int a, int min_order, const char* fn) {
  if (a < min_order) {
    throw std::domain_error(std::string(fn) + ": order must be >= " + std::to_string(min_order));
  }
}

void require_argument(double x, const char* fn) {
  if (!(x >= 0.0)) {  // also rejects NaN
    throw std::domain_error(std::string(fn) + ": argument must be nonnegative");
  }
}

// e^{-x} Σ_{k=0}^{a-1} x^k/k!, evaluated in log space so the prefactor does not
// underflow before the sum is applied.
double finite_poisson_tail(int a, double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < a; ++k) {
    term *= x / k;
    sum += term;
  }
  return std::exp(-x + std::log(sum));
}

// e^{-x} x^a / a! Σ_{n>=0} x^n / ((a+1)...(a+n)); converges fast for x < a + 1.
double lower_series(int a, double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 1000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (term < sum * kEps) {
      break;
    }
  }
  const double log_prefactor = -x + a * std::log(x) - std::lgamma(a + 1.0);
  return std::exp(log_prefactor) * sum;
}

}  // namespace

double factorial(int n) {
  require_order(n, 0, "factorial");
  double result = 1.0;
  for (int k = 2; k <= n; ++k) {
    result *= k;
  }
  return result;
}

double exp_integral_e1(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("exp_integral_e1: argument must be positive");
  }
  if (std::isinf(x)) {
    return 0.0;
  }
  if (x <= 1.0) {
    // E1(x) = -γ_E - ln x - Σ_{k>=1} (-x)^k / (k k!)
    double sum = 0.0;
    double power = 1.0;  // (-x)^k / k!
    for (int k = 1; k < 200; ++k) {
      power *= -x / k;
      const double term = power / k;
      sum += term;
      if (std::abs(term) < std::abs(sum) * kEps) {
        break;
      }
    }
    return -std::numbers::egamma - std::log(x) - sum;
  }
  // Continued fraction, modified Lentz.
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) {
      break;
    }
  }
  return h * std::exp(-x);
}

double reg_upper_gamma(int a, double x) {
  require_order(a, 1, "reg_upper_gamma");
  require_argument(x, "reg_upper_gamma");
  if (x == 0.0) {
    return 1.0;
  }
  if (x < a + 1.0) {
    return 1.0 - lower_series(a, x);
  }
  return finite_poisson_tail(a, x);
}

double reg_lower_gamma(int a, double x) {
  require_order(a, 1, "reg_lower_gamma");
  require_argument(x, "reg_lower_gamma");
  if (x == 0.0) {
    return 0.0;
  }
  if (x < a + 1.0) {
    return lower_series(a, x);
  }
  return 1.0 - finite_poisson_tail(a, x);
}

double upper_incomplete_gamma(int a, double x) {
  require_order(a, 0, "upper_incomplete_gamma");
  require_argument(x, "upper_incomplete_gamma");
  if (a == 0) {
    if (x == 0.0) {
      throw std::domain_error("upper_incomplete_gamma: Γ(0, 0) diverges");
    }
    return exp_integral_e1(x);
  }
  return factorial(a - 1) * reg_upper_gamma(a, x);
}

double lower_incomplete_gamma(int a, double x) {
  require_order(a, 1, "lower_incomplete_gamma");
  return factorial(a - 1) * reg_lower_gamma(a, x);
}

double inv_reg_lower_gamma(int a, double p) {
  require_order(a, 1, "inv_reg_lower_gamma");
  if (!(p >= 0.0 && p < 1.0)) {
    throw std::domain_error("inv_reg_lower_gamma: probability must lie in [0, 1)");
  }
  if (p == 0.0) {
    return 0.0;
  }

  // Small-p asymptote P(a, x) ~ x^a / a! as the starting point, then bracket.
  double x = std::min(std::exp((std::log(p) + std::lgamma(a + 1.0)) / a), a + 40.0);
  double lo = x;
  double hi = x;
  if (reg_lower_gamma(a, x) < p) {
    do {
      lo = hi;
      hi *= 2.0;
    } while (reg_lower_gamma(a, hi) < p);
  } else {
    do {
      hi = lo;
      lo *= 0.5;
    } while (reg_lower_gamma(a, lo) >= p);
  }

  const double log_norm = std::lgamma(static_cast<double>(a));
  x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 300; ++iter) {
    const double f = reg_lower_gamma(a, x) - p;
    if (f == 0.0) {
      return x;
    }
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= 4.0 * kEps * hi) {
      break;
    }
    const double density = std::exp(-x + (a - 1) * std::log(x) - log_norm);
    double next = x - f / density;
    if (!(density > 0.0) || !(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    if (std::abs(next - x) <= kEps * x) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

}  // namespace slicesim
