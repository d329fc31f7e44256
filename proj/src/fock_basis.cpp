#include "cphi/fock_basis.hpp"

#include <algorithm>
#include <cmath>

namespace cphi {

namespace {

std::string key_of(const std::vector<int>& exps) {
  std::string k;
  k.reserve(exps.size() * 3);
  for (int e : exps) {
    k += std::to_string(e);
    k += ',';
  }
  return k;
}

void enumerate_degree(int dim, int degree, std::vector<int>& prefix,
                      std::vector<MultiIndex>& out) {
  if (static_cast<int>(prefix.size()) == dim - 1) {
    prefix.push_back(degree);
    out.push_back(MultiIndex{prefix});
    prefix.pop_back();
    return;
  }
  for (int k = degree; k >= 0; --k) {
    prefix.push_back(k);
    enumerate_degree(dim, degree - k, prefix, out);
    prefix.pop_back();
  }
}

constexpr int kMaxBasisSize = 200000;

}  // namespace

BasisSlice::BasisSlice(const PhiSeries& phi, int dim, int max_degree) : dim_(dim) {
  if (dim < 1) throw Error(ErrorCode::DIMENSION_MISMATCH, "basis dimension must be >= 1");
  if (max_degree > 170) throw Error(ErrorCode::OVERFLOW_LIMIT, "max degree beyond factorial range");
  degrees_ = phi.supported_degrees_upto(max_degree);
  for (int n : degrees_) {
    std::vector<int> prefix;
    enumerate_degree(dim, n, prefix, indices_);
    if (static_cast<int>(indices_.size()) > kMaxBasisSize)
      throw Error(ErrorCode::OVERFLOW_LIMIT, "basis size limit exceeded");
  }
  weights_.resize(indices_.size());
  for (size_t i = 0; i < indices_.size(); ++i) {
    int n = indices_[i].degree();
    double a_n = phi.coefficient(n);
    weights_[i] = std::sqrt(indices_[i].factorial_product() / (a_n * factorial(n)));
    lookup_[key_of(indices_[i].exponents)] = static_cast<int>(i);
  }
}

int BasisSlice::find(const std::vector<int>& exponents) const {
  auto it = lookup_.find(key_of(exponents));
  return it == lookup_.end() ? -1 : it->second;
}

std::pair<int, int> BasisSlice::degree_range(int n) const {
  int lo = -1, hi = -1;
  for (int i = 0; i < size(); ++i) {
    if (indices_[i].degree() == n) {
      if (lo < 0) lo = i;
      hi = i + 1;
    }
  }
  return {lo, hi};
}

BasisSlice enumerate_basis(const PhiSeries& phi, int dim, int max_degree) {
  return BasisSlice(phi, dim, max_degree);
}

CMatrix kernel_gram(const PhiSeries& phi, const std::vector<CVector>& points) {
  int n = static_cast<int>(points.size());
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (points[i].size() != points[j].size())
        throw Error(ErrorCode::DIMENSION_MISMATCH, "kernel points");
      Complex ip = points[j].dot(points[i]);  // <xi_i, xi_j>
      Complex v = phi.eval_complex(ip);
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
  }
  return g;
}

ExtReal rkhs_lower_bound(const PhiSeries& phi, const std::vector<CVector>& points,
                         const CVector& values, const NumericOptions& opt) {
  if (static_cast<int>(points.size()) != values.size())
    throw Error(ErrorCode::DIMENSION_MISMATCH, "interpolation data");
  CMatrix g = kernel_gram(phi, points);
  RangeMembership mem = range_membership(g, values, 1.0, opt);
  if (!mem.member) return ExtReal::infinity();
  Complex q = values.dot(mem.preimage);  // <G^- v, v>
  return ExtReal(std::max(0.0, q.real()));
}

CMatrix CompOpMatrix::degree_block(int n) const {
  auto [lo, hi] = basis.degree_range(n);
  if (lo < 0) return CMatrix(0, 0);
  return matrix.block(lo, lo, hi - lo, hi - lo);
}

CompOpMatrix compose_matrix(const PhiSeries& phi, const AffineSymbol& symbol, int max_degree,
                            const NumericOptions& opt) {
  (void)opt;
  const bool affine = !symbol.translation_free();
  if (affine && !phi.is_exp())
    throw Error(ErrorCode::AFFINE_UNSUPPORTED_FOR_PHI,
                "translation part requires the exponential series");
  BasisSlice basis(phi, symbol.dim(), max_degree);
  const int dim = basis.size();
  const int d = symbol.dim();

  // full monomial table of degree <= max_degree for intermediate products
  const bool gapless = phi.is_exp();
  PhiSeries full = PhiSeries::exp();
  BasisSlice table = gapless ? basis : BasisSlice(full, d, max_degree);
  const int tdim = table.size();

  // bump[t*d + j] = position of the monomial with exponent j raised by one
  std::vector<int> bump(static_cast<size_t>(tdim) * d, -1);
  for (int t = 0; t < tdim; ++t) {
    std::vector<int> exps = table.indices()[t].exponents;
    if (table.indices()[t].degree() >= max_degree) continue;
    for (int j = 0; j < d; ++j) {
      ++exps[j];
      bump[static_cast<size_t>(t) * d + j] = table.find(exps);
      --exps[j];
    }
  }

  CMatrix m = CMatrix::Zero(dim, dim);
  std::vector<Complex> poly(tdim), next(tdim);

  for (int col = 0; col < dim; ++col) {
    const MultiIndex& alpha = basis.indices()[col];
    std::fill(poly.begin(), poly.end(), Complex(0.0));
    poly[table.find(std::vector<int>(d, 0))] = 1.0;
    for (int i = 0; i < d; ++i) {
      for (int rep = 0; rep < alpha.exponents[i]; ++rep) {
        std::fill(next.begin(), next.end(), Complex(0.0));
        for (int t = 0; t < tdim; ++t) {
          Complex c = poly[t];
          if (c == Complex(0.0)) continue;
          if (affine && symbol.b(i) != Complex(0.0)) next[t] += c * symbol.b(i);
          for (int j = 0; j < d; ++j) {
            if (symbol.a(i, j) == Complex(0.0)) continue;
            next[bump[static_cast<size_t>(t) * d + j]] += c * symbol.a(i, j);
          }
        }
        poly.swap(next);
      }
    }
    // redistribute onto the slice with the orthonormal weights
    for (int t = 0; t < tdim; ++t) {
      Complex c = poly[t];
      if (c == Complex(0.0)) continue;
      int row = gapless ? t : basis.find(table.indices()[t].exponents);
      if (row < 0) continue;  // degree absent from Z_Phi: coefficient must vanish
      m(row, col) += c * basis.weights()[row] / basis.weights()[col];
    }
  }
  return CompOpMatrix{std::move(basis), std::move(m)};
}

CMatrix sym_power_matrix(const CMatrix& a, int n, const NumericOptions& opt) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::SIZE_MISMATCH, "sym_power_matrix");
  if (n == 0) return CMatrix::Identity(1, 1);
  PhiSeries mono = PhiSeries::monomial(n);
  CompOpMatrix c = compose_matrix(mono, AffineSymbol::linear(a.transpose()), n, opt);
  return c.matrix;
}

double kernel_image_check(const PhiSeries& phi, const AffineSymbol& symbol,
                          const std::vector<CVector>& points, int max_degree,
                          const NumericOptions& opt) {
  CompOpMatrix cm = compose_matrix(phi, symbol, max_degree, opt);
  const BasisSlice& basis = cm.basis;
  auto coeff_vector = [&](const CVector& xi, Complex scale) {
    // K_xi = sum_alpha conj(e_alpha(xi)) e_alpha
    CVector k(basis.size());
    for (int i = 0; i < basis.size(); ++i) {
      Complex mono = 1.0;
      for (int j = 0; j < basis.dim(); ++j)
        for (int r = 0; r < basis.indices()[i].exponents[j]; ++r) mono *= std::conj(xi(j));
      k(i) = scale * mono * basis.onb_scale(i);
    }
    return k;
  };
  double worst = 0.0;
  for (const CVector& xi : points) {
    CVector lhs = cm.matrix * coeff_vector(xi, 1.0);
    Complex factor = symbol.translation_free() ? Complex(1.0) : std::exp(xi.dot(symbol.b));
    CVector rhs = coeff_vector(symbol.a.adjoint() * xi, factor);
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

}  // namespace cphi
