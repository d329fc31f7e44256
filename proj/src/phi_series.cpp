#include "cphi/phi_series.hpp"

#include <algorithm>
#include <numeric>

namespace cphi {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::REJECT_NOT_IN_F: return "REJECT_NOT_IN_F";
    case ErrorCode::REJECT_NONPOSITIVE_MOMENT: return "REJECT_NONPOSITIVE_MOMENT";
    case ErrorCode::REJECT_M_GT_N: return "REJECT_M_GT_N";
    case ErrorCode::TAIL_NOT_BOUNDED: return "TAIL_NOT_BOUNDED";
    case ErrorCode::NOT_PSD: return "NOT_PSD";
    case ErrorCode::NOT_SELFADJOINT: return "NOT_SELFADJOINT";
    case ErrorCode::SIZE_MISMATCH: return "SIZE_MISMATCH";
    case ErrorCode::NO_CONVERGENCE: return "NO_CONVERGENCE";
    case ErrorCode::AFFINE_UNSUPPORTED_FOR_PHI: return "AFFINE_UNSUPPORTED_FOR_PHI";
    case ErrorCode::OVERFLOW_LIMIT: return "OVERFLOW";
    case ErrorCode::UNBOUNDED_OPERATOR: return "UNBOUNDED_OPERATOR";
    case ErrorCode::CONTRACTION_VIOLATED: return "CONTRACTION_VIOLATED";
    case ErrorCode::NOT_WELL_DEFINED: return "NOT_WELL_DEFINED";
    case ErrorCode::MC_VARIANCE_TOO_HIGH: return "MC_VARIANCE_TOO_HIGH";
    case ErrorCode::TRUNCATION_TOO_SMALL: return "TRUNCATION_TOO_SMALL";
    case ErrorCode::PHI_ZERO_AT_ORIGIN: return "PHI_ZERO_AT_ORIGIN";
    case ErrorCode::PARSE_ERROR: return "PARSE_ERROR";
    case ErrorCode::DIMENSION_MISMATCH: return "DIMENSION_MISMATCH";
  }
  return "UNKNOWN";
}

std::int64_t multinomial_exact(int n, const std::vector<int>& alpha) {
  // running product n! / prod alpha_i!, kept integral by interleaving factors
  std::int64_t result = 1;
  int used = 0;
  for (int a : alpha) {
    for (int j = 1; j <= a; ++j) {
      ++used;
      if (result > std::numeric_limits<std::int64_t>::max() / used)
        throw Error(ErrorCode::OVERFLOW_LIMIT, "multinomial");
      result = result * used / j;  // C(used, j) step: divides exactly
    }
  }
  if (used != n) throw Error(ErrorCode::OVERFLOW_LIMIT, "multinomial degree mismatch");
  return result;
}

PhiSeries::PhiSeries(std::vector<double> coeffs, Tail tail)
    : coeffs_(std::move(coeffs)), tail_(tail) {
  recompute();
}

void PhiSeries::recompute() {
  for (double a : coeffs_)
    if (!(a >= 0.0)) throw Error(ErrorCode::REJECT_NOT_IN_F, "negative coefficient");
  support_.clear();
  for (int k = 0; k < static_cast<int>(coeffs_.size()); ++k)
    if (coeffs_[k] > 0.0) support_.push_back(k);

  bool infinite_tail = tail_.kind == Tail::Kind::Exp;
  bool positive_from_one = infinite_tail;
  for (int k : support_)
    if (k >= 1) positive_from_one = true;
  if (!positive_from_one)
    throw Error(ErrorCode::REJECT_NOT_IN_F, "no positive coefficient at index >= 1");

  if (support_.empty()) {
    m_ = stored_degree() + 1;  // Exp tail starts right past the stored block
  } else {
    m_ = support_.front();
  }
  if (infinite_tail) {
    n_sup_ = std::nullopt;
  } else {
    n_sup_ = support_.empty() ? 0 : support_.back();
  }

  int g = 0;
  for (int k : support_)
    if (k >= 1) g = std::gcd(g, k);
  if (infinite_tail) {
    int first_tail = stored_degree() + 1;
    g = std::gcd(g, first_tail);
    g = std::gcd(g, first_tail + 1);
  }
  gcd_order_ = g == 0 ? 1 : g;
}

PhiSeries PhiSeries::exp() {
  std::vector<double> c(18);
  for (int k = 0; k < 18; ++k) c[k] = 1.0 / factorial(k);
  return PhiSeries(std::move(c), Tail::exp_tail(0));
}

PhiSeries PhiSeries::z_exp() {
  std::vector<double> c(18, 0.0);
  for (int k = 1; k < 18; ++k) c[k] = 1.0 / factorial(k - 1);
  return PhiSeries(std::move(c), Tail::exp_tail(1));
}

PhiSeries PhiSeries::monomial(int degree) {
  if (degree < 1) throw Error(ErrorCode::REJECT_NOT_IN_F, "monomial degree must be >= 1");
  std::vector<double> c(degree + 1, 0.0);
  c[degree] = 1.0;
  return PhiSeries(std::move(c), Tail::none());
}

PhiSeries PhiSeries::taylor(const std::vector<double>& coeffs, Tail tail) {
  return PhiSeries(coeffs, tail);
}

PhiSeries PhiSeries::moments(const std::vector<double>& moment_list) {
  std::vector<double> c(moment_list.size());
  for (size_t k = 0; k < moment_list.size(); ++k) {
    if (!(moment_list[k] > 0.0))
      throw Error(ErrorCode::REJECT_NONPOSITIVE_MOMENT, "moment " + std::to_string(k));
    c[k] = 1.0 / moment_list[k];
  }
  return PhiSeries(std::move(c), Tail::none());
}

double PhiSeries::coefficient(int k) const {
  if (k < 0) return 0.0;
  if (k <= stored_degree()) return coeffs_[k];
  switch (tail_.kind) {
    case Tail::Kind::None: return 0.0;
    case Tail::Kind::Exp:
      return k - tail_.shift <= 170 ? 1.0 / factorial(k - tail_.shift) : 0.0;
    case Tail::Kind::Geometric:
      throw Error(ErrorCode::TAIL_NOT_BOUNDED, "geometric tail has no pointwise coefficients");
  }
  return 0.0;
}

bool PhiSeries::supported(int k) const {
  if (k < 0) return false;
  if (k <= stored_degree()) return coeffs_[k] > 0.0;
  return tail_.kind == Tail::Kind::Exp;
}

std::vector<int> PhiSeries::supported_degrees_upto(int N) const {
  std::vector<int> out;
  for (int k = 0; k <= N; ++k)
    if (supported(k)) out.push_back(k);
  return out;
}

bool PhiSeries::is_exp() const {
  if (tail_.kind != Tail::Kind::Exp || tail_.shift != 0) return false;
  for (int k = 0; k <= stored_degree(); ++k)
    if (std::abs(coeffs_[k] - 1.0 / factorial(k)) > 1e-15 * coeffs_[k]) return false;
  return true;
}

PhiEval PhiSeries::eval(double x, double tol) const {
  if (x < 0.0) throw Error(ErrorCode::TAIL_NOT_BOUNDED, "eval expects x >= 0");
  Complex v = eval_complex(Complex(x, 0.0), tol);
  PhiEval out;
  out.value = v.real();
  if (tail_.kind == Tail::Kind::Geometric) {
    double q = tail_.ratio * x;
    out.tail_bound = tail_.scale * std::pow(q, stored_degree() + 1) / (1.0 - q);
  } else {
    out.tail_bound = 0.0;  // polynomial or closed-form exponential tail
  }
  return out;
}

Complex PhiSeries::eval_complex(Complex z, double tol) const {
  double r = std::abs(z);
  Complex sum = 0.0;
  Complex zk = 1.0;
  for (int k = 0; k <= stored_degree(); ++k) {
    sum += coeffs_[k] * zk;
    zk *= z;
  }
  switch (tail_.kind) {
    case Tail::Kind::None:
      return sum;
    case Tail::Kind::Exp: {
      // sum_{k>M} z^k / (k-shift)! = z^shift * (e^z - sum_{j<=M-shift} z^j/j!)
      int M = stored_degree();
      Complex head = 0.0, zj = 1.0;
      for (int j = 0; j <= M - tail_.shift; ++j) {
        head += zj / factorial(j);
        zj *= z;
      }
      Complex pre = 1.0;
      for (int s = 0; s < tail_.shift; ++s) pre *= z;
      return sum + pre * (std::exp(z) - head);
    }
    case Tail::Kind::Geometric: {
      if (tail_.ratio * r >= 1.0)
        throw Error(ErrorCode::TAIL_NOT_BOUNDED, "geometric tail diverges at |z|=" + std::to_string(r));
      int M = stored_degree();
      double q = tail_.ratio * r;
      double bound = tail_.scale * std::pow(q, M + 1) / (1.0 - q);
      if (bound > tol)
        throw Error(ErrorCode::TAIL_NOT_BOUNDED,
                    "geometric tail bound " + std::to_string(bound) + " above tolerance");
      return sum;
    }
  }
  return sum;
}

int gcd_group_order(const PhiSeries& phi) { return phi.gcd_order(); }

ExtReal q_value(int m, std::optional<int> n, double theta) {
  if (theta < 0.0) throw Error(ErrorCode::REJECT_M_GT_N, "theta must be nonnegative");
  if (n.has_value() && *n < m) throw Error(ErrorCode::REJECT_M_GT_N, "m > n");
  double head = std::pow(theta, m);  // theta^0 = 1 including theta = 0
  if (!n.has_value()) {
    if (theta > 1.0) return ExtReal::infinity();
    if (theta == 1.0) return ExtReal(head);  // 1^inf = 1, max{1,1} = 1
    return ExtReal(head);                    // theta^inf = 0, max{1,0} = 1
  }
  double tail = std::max(1.0, std::pow(theta, *n - m));
  return ExtReal(head * tail);
}

PhiEval phi_eval(const PhiSeries& phi, double x, double tol) { return phi.eval(x, tol); }

}  // namespace cphi
