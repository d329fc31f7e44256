#ifndef CPHI_NUMERIC_HPP
#define CPHI_NUMERIC_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace cphi {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

enum class ErrorCode {
  REJECT_NOT_IN_F,
  REJECT_NONPOSITIVE_MOMENT,
  REJECT_M_GT_N,
  TAIL_NOT_BOUNDED,
  NOT_PSD,
  NOT_SELFADJOINT,
  SIZE_MISMATCH,
  NO_CONVERGENCE,
  AFFINE_UNSUPPORTED_FOR_PHI,
  OVERFLOW_LIMIT,
  UNBOUNDED_OPERATOR,
  CONTRACTION_VIOLATED,
  NOT_WELL_DEFINED,
  MC_VARIANCE_TOO_HIGH,
  TRUNCATION_TOO_SMALL,
  PHI_ZERO_AT_ORIGIN,
  PARSE_ERROR,
  DIMENSION_MISMATCH,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Nonnegative extended real; +inf is a first-class value in norm formulas.
class ExtReal {
 public:
  ExtReal() : v_(0.0) {}
  explicit ExtReal(double v) : v_(v) {}
  static ExtReal infinity() { return ExtReal(std::numeric_limits<double>::infinity()); }
  bool is_infinite() const { return std::isinf(v_); }
  double value() const { return v_; }
  friend bool operator==(const ExtReal& a, const ExtReal& b) { return a.v_ == b.v_; }

 private:
  double v_;
};

struct NumericOptions {
  double residual_tol = 1e-9;   // operator-norm residual comparisons
  double rank_rel = 1e-10;      // singular-value cutoff, relative to sigma_max
  double range_rel = 1e-8;      // range-membership residual, relative to the vector norm
};

inline double factorial(int k) {
  if (k < 0 || k > 170) throw Error(ErrorCode::OVERFLOW_LIMIT, "factorial(" + std::to_string(k) + ")");
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

inline double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

// n! / prod(alpha_i!) in 64-bit integers; throws OVERFLOW_LIMIT past 2^63.
std::int64_t multinomial_exact(int n, const std::vector<int>& alpha);

// Deterministic random source. Gaussians use Box-Muller on mt19937_64 draws so
// the stream does not depend on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {
    return (gen_() >> 11) * (1.0 / 9007199254740992.0);  // 53-bit mantissa in [0,1)
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    while (u == 0.0) u = uniform();
    double v = uniform();
    double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * M_PI * v);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * v);
  }

  Complex complex_gaussian() { return Complex(gaussian(), gaussian()) / std::sqrt(2.0); }

  // sample of the Gaussian measure with density pi^{-d} exp(-|z|^2)
  CVector gaussian_point(int d) {
    CVector z(d);
    for (int i = 0; i < d; ++i) z(i) = complex_gaussian();
    return z;
  }

  CMatrix complex_matrix(int rows, int cols) {
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = complex_gaussian();
    return m;
  }

  CVector complex_vector(int dim) {
    CVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = complex_gaussian();
    return v;
  }

  std::uint64_t raw() { return gen_(); }
  int integer(int lo, int hi) {  // inclusive range
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cphi

#endif
