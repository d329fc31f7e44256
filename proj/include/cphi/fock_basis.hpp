#ifndef CPHI_FOCK_BASIS_HPP
#define CPHI_FOCK_BASIS_HPP

#include <unordered_map>
#include <vector>

#include "cphi/matrix_ops.hpp"
#include "cphi/phi_series.hpp"

namespace cphi {

struct AffineSymbol {
  CMatrix a;
  CVector b;

  AffineSymbol() = default;
  AffineSymbol(CMatrix a_, CVector b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a.rows() != a.cols() || a.rows() != b.size())
      throw Error(ErrorCode::DIMENSION_MISMATCH, "affine symbol");
  }
  static AffineSymbol linear(CMatrix a_) {
    CVector z = CVector::Zero(a_.rows());
    return AffineSymbol(std::move(a_), std::move(z));
  }
  int dim() const { return static_cast<int>(a.rows()); }
  bool translation_free(double tol = 1e-14) const { return b.size() == 0 || b.norm() <= tol; }
};

struct MultiIndex {
  std::vector<int> exponents;

  int degree() const {
    int s = 0;
    for (int e : exponents) s += e;
    return s;
  }
  double factorial_product() const {
    double f = 1.0;
    for (int e : exponents) f *= factorial(e);
    return f;
  }
  bool operator==(const MultiIndex& other) const { return exponents == other.exponents; }
};

// Monomial orthonormal slice of Phi(C^d) up to total degree N: the degrees
// present are Z_Phi intersected with [0, N], listed in graded order with the
// leading exponent decreasing inside each degree.  e_alpha = xi^alpha / w_alpha
// is orthonormal for w_alpha = sqrt(alpha! / (a_n * n!)), n = |alpha|.
class BasisSlice {
 public:
  BasisSlice(const PhiSeries& phi, int dim, int max_degree);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  const std::vector<int>& degrees() const { return degrees_; }          // degree set D
  const std::vector<double>& weights() const { return weights_; }       // w_alpha
  double onb_scale(int i) const { return 1.0 / weights_[i]; }           // 1 / w_alpha

  int find(const std::vector<int>& exponents) const;  // -1 when absent
  // positions whose degree equals n (contiguous by construction)
  std::pair<int, int> degree_range(int n) const;

 private:
  int dim_;
  std::vector<MultiIndex> indices_;
  std::vector<int> degrees_;
  std::vector<double> weights_;
  std::unordered_map<std::string, int> lookup_;
};

BasisSlice enumerate_basis(const PhiSeries& phi, int dim, int max_degree);

// Hermitian Gram matrix G_ij = Phi(<xi_i, xi_j>), positive semidefinite.
CMatrix kernel_gram(const PhiSeries& phi, const std::vector<CVector>& points);

// Certified lower bound of ||f||^2 over interpolants f(xi_i) = v_i; +inf when
// the values are inconsistent with the range of the Gram matrix.
ExtReal rkhs_lower_bound(const PhiSeries& phi, const std::vector<CVector>& points,
                         const CVector& values, const NumericOptions& opt = {});

struct CompOpMatrix {
  BasisSlice basis;
  CMatrix matrix;  // M[beta][alpha] = <e_alpha o (A + b), e_beta>

  CMatrix degree_block(int n) const;
};

// Matrix of the composition operator f -> f o (A + b) on the invariant slice.
// b != 0 is admitted only for the exponential series.
CompOpMatrix compose_matrix(const PhiSeries& phi, const AffineSymbol& symbol, int max_degree,
                            const NumericOptions& opt = {});

// Homogeneous degree-n substitution block of A^T in the orthonormal basis;
// unitarily equivalent to the n-th symmetric power of A.
CMatrix sym_power_matrix(const CMatrix& a, int n, const NumericOptions& opt = {});

// Max residual between the matrix action on truncated kernel coefficient
// vectors and the closed-form image of kernel functions, over sample points.
double kernel_image_check(const PhiSeries& phi, const AffineSymbol& symbol,
                          const std::vector<CVector>& points, int max_degree,
                          const NumericOptions& opt = {});

}  // namespace cphi

#endif
