#ifndef CPHI_PHI_SERIES_HPP
#define CPHI_PHI_SERIES_HPP

#include <optional>
#include <vector>

#include "cphi/numeric.hpp"

namespace cphi {

// Tail of the Taylor series beyond the stored coefficients.
//   None       -- polynomial, stored coefficients are all of Phi
//   Exp        -- a_k = 1/(k - shift)! for every k > stored degree
//   Geometric  -- |a_k| <= scale * ratio^k for every k > stored degree
struct Tail {
  enum class Kind { None, Exp, Geometric } kind = Kind::None;
  int shift = 0;
  double scale = 0.0;
  double ratio = 0.0;

  static Tail none() { return {}; }
  static Tail exp_tail(int shift = 0) { return {Kind::Exp, shift, 0.0, 0.0}; }
  static Tail geometric(double scale, double ratio) { return {Kind::Geometric, 0, scale, ratio}; }
};

struct PhiEval {
  double value = 0.0;
  double tail_bound = 0.0;  // certified bound on the truncation error
};

// An entire function Phi(z) = sum a_n z^n with a_n >= 0 and some a_n > 0 for
// n >= 1, stored as a finite coefficient list plus a tail descriptor.
class PhiSeries {
 public:
  static PhiSeries exp();
  static PhiSeries monomial(int degree);
  static PhiSeries z_exp();  // z * e^z
  static PhiSeries taylor(const std::vector<double>& coeffs, Tail tail = Tail::none());
  // a_n = 1 / moment_n where moment_n is the 2n-th absolute moment of the
  // caller's radial measure; all moments must be strictly positive.
  static PhiSeries moments(const std::vector<double>& moment_list);

  double coefficient(int k) const;          // a_k, including the tail region
  bool supported(int k) const;              // k in Z_Phi
  const std::vector<double>& stored() const { return coeffs_; }
  int stored_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Tail& tail() const { return tail_; }

  int zero_order() const { return m_; }                          // m = min Z_Phi
  std::optional<int> sup_degree() const { return n_sup_; }       // nullopt = infinite
  bool has_infinite_degree() const { return !n_sup_.has_value(); }
  int gcd_order() const { return gcd_order_; }                   // order of the root group
  std::vector<int> supported_degrees_upto(int N) const;
  bool is_exp() const;  // exactly the exponential series

  // Phi(x) for x >= 0, absolute error below tol (TAIL_NOT_BOUNDED otherwise).
  PhiEval eval(double x, double tol = 1e-12) const;
  // Series summed on a complex argument; needed for kernel Gram matrices.
  Complex eval_complex(Complex z, double tol = 1e-12) const;

 private:
  PhiSeries(std::vector<double> coeffs, Tail tail);
  void recompute();

  std::vector<double> coeffs_;
  Tail tail_;
  std::vector<int> support_;  // stored indices with a_k > 0
  int m_ = 0;
  std::optional<int> n_sup_;
  int gcd_order_ = 1;
};

// gcd of Z_Phi \ {0}; an Exp tail forces 1 via two consecutive tail indices.
int gcd_group_order(const PhiSeries& phi);

// theta^m * max{1, theta^(n-m)} with the extended-real conventions
// theta^inf = inf for theta > 1, 0 for theta < 1, and 1^inf = 1.
ExtReal q_value(int m, std::optional<int> n, double theta);

PhiEval phi_eval(const PhiSeries& phi, double x, double tol = 1e-12);

}  // namespace cphi

#endif
