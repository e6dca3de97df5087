#include "fpp/special_functions.hpp"

#include <limits>
#include <stdexcept>

namespace fpp {

namespace {

constexpr int kMaxIter = 100000;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

void check_gamma_args(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("incomplete gamma: a must be positive");
  if (!(x >= 0.0)) throw std::invalid_argument("incomplete gamma: x must be nonnegative");
}

// log of the series part of P(a,x): P = exp(a ln x - x - lgamma(a+1)) * S with
// S = sum_{j>=0} x^j / ((a+1)...(a+j)); converges fast for x < a+1.
double log_series_sum(double a, double x) {
  double term = 1.0, sum = 1.0;
  for (int j = 1; j < kMaxIter; ++j) {
    term *= x / (a + j);
    sum += term;
    if (term < sum * kEps) return std::log(sum);
  }
  throw std::runtime_error("incomplete gamma: series did not converge");
}

// Continued fraction for Q(a,x), modified Lentz; valid for x >= a+1.
double upper_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) {
      return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    }
  }
  throw std::runtime_error("incomplete gamma: continued fraction did not converge");
}

}  // namespace

double gamma_lower_regularized(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) {
    const double lp = a * std::log(x) - x - std::lgamma(a + 1.0) + log_series_sum(a, x);
    return std::exp(lp);
  }
  return 1.0 - upper_continued_fraction(a, x);
}

double gamma_upper_regularized(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_lower_regularized(a, x);
  return upper_continued_fraction(a, x);
}

double log_gamma_lower_regularized(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  if (x < a + 1.0)
    return a * std::log(x) - x - std::lgamma(a + 1.0) + log_series_sum(a, x);
  return std::log1p(-upper_continued_fraction(a, x));
}

double poisson_upper_tail(double w, std::int64_t k) {
  if (!(w >= 0.0)) throw std::invalid_argument("poisson_upper_tail: w must be nonnegative");
  if (k < 0) throw std::invalid_argument("poisson_upper_tail: k must be nonnegative");
  if (k == 0) return 1.0;
  if (w == 0.0) return 0.0;
  const double kk = static_cast<double>(k);
  if (kk <= w) {
    // Heavy tail: 1 - head loses no precision because the head is <= ~0.5.
    double term = std::exp(-w), head = term;
    for (std::int64_t i = 1; i < k; ++i) {
      term *= w / static_cast<double>(i);
      head += term;
    }
    return 1.0 - head;
  }
  // Light tail: sum it directly starting at i = k; the term ratio w/(i+1) is
  // below 1 throughout, so this converges geometrically.
  double term = std::exp(kk * std::log(w) - w - std::lgamma(kk + 1.0));
  if (term == 0.0) return 0.0;  // below 1e-308; the sum is at most ~2x the term
  double sum = term;
  for (std::int64_t i = k; i < k + kMaxIter; ++i) {
    term *= w / static_cast<double>(i + 1);
    sum += term;
    if (term < sum * kEps) return sum;
  }
  throw std::runtime_error("poisson_upper_tail: tail sum did not converge");
}

double gamma_pdf(double k, double x) {
  if (!(k > 0.0)) throw std::invalid_argument("gamma_pdf: k must be positive");
  if (!(x >= 0.0)) throw std::invalid_argument("gamma_pdf: x must be nonnegative");
  if (x == 0.0) return k == 1.0 ? 1.0 : (k < 1.0 ? std::numeric_limits<double>::infinity() : 0.0);
  return std::exp((k - 1.0) * std::log(x) - x - std::lgamma(k));
}

double log_falling_factorial(double n, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("log_falling_factorial: k must be nonnegative");
  if (!(n >= static_cast<double>(k)))
    throw std::invalid_argument("log_falling_factorial: need n >= k");
  double s = 0.0;
  for (std::int64_t i = 0; i < k; ++i) s += std::log(n - static_cast<double>(i));
  return s;
}

}  // namespace fpp
