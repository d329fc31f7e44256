#include "cphi/matrix_ops.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace cphi {

SvdResult svd(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) throw Error(ErrorCode::NO_CONVERGENCE, "svd");
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

double operator_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() <= 48 && a.cols() <= 48)
    return Eigen::JacobiSVD<CMatrix>(a).singularValues()(0);
  // power iteration on A*A with a fixed, slightly de-symmetrized start
  CVector v = CVector::Ones(a.cols());
  for (int i = 0; i < v.size(); ++i) v(i) += Complex(0.013 * ((i * 2654435761u) % 97) / 97.0, 0.007 * (i % 11));
  v.normalize();
  double prev = 0.0;
  for (int it = 0; it < 20000; ++it) {
    CVector w = a.adjoint() * (a * v);
    double lam = w.norm();
    if (lam == 0.0) return 0.0;
    v = w / lam;
    if (it > 4 && std::abs(lam - prev) <= 1e-14 * lam) return std::sqrt(lam);
    prev = lam;
  }
  return Eigen::BDCSVD<CMatrix>(a).singularValues()(0);
}

bool is_hermitian(const CMatrix& a, double tol) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, a.cwiseAbs().maxCoeff());
}

CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

PolarResult polar_decompose(const CMatrix& a, const NumericOptions& opt) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::SIZE_MISMATCH, "polar of non-square matrix");
  SvdResult d = svd(a);
  double cut = d.singular_values.size() ? d.singular_values(0) * opt.rank_rel : 0.0;
  CMatrix p = d.v * d.singular_values.asDiagonal() * d.v.adjoint();
  RVector mask(d.singular_values.size());
  for (int i = 0; i < mask.size(); ++i) mask(i) = d.singular_values(i) > cut ? 1.0 : 0.0;
  CMatrix u = d.u * mask.asDiagonal() * d.v.adjoint();
  return {u, p};
}

namespace {

struct HermEig {
  RVector values;
  CMatrix vectors;
};

HermEig herm_eig(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a));
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NO_CONVERGENCE, "hermitian eigensolver");
  return {es.eigenvalues(), es.eigenvectors()};
}

double scale_of(const CMatrix& a) { return std::max(1.0, a.cwiseAbs().maxCoeff()); }

}  // namespace

CMatrix psd_power(const CMatrix& a, double t, const NumericOptions& opt) {
  double s = scale_of(a);
  if (!is_hermitian(a, opt.residual_tol)) throw Error(ErrorCode::NOT_PSD, "matrix is not Hermitian");
  HermEig e = herm_eig(a);
  RVector lam = e.values;
  for (int i = 0; i < lam.size(); ++i) {
    if (lam(i) < -opt.residual_tol * s) throw Error(ErrorCode::NOT_PSD, "negative eigenvalue");
    lam(i) = lam(i) > 0.0 ? std::pow(lam(i), t) : 0.0;
  }
  return e.vectors * lam.asDiagonal() * e.vectors.adjoint();
}

CMatrix pseudo_inverse(const CMatrix& a, const NumericOptions& opt) {
  if (!is_hermitian(a, opt.residual_tol))
    throw Error(ErrorCode::NOT_SELFADJOINT, "pseudo_inverse expects a selfadjoint matrix");
  HermEig e = herm_eig(a);
  double cut = e.values.cwiseAbs().maxCoeff() * opt.rank_rel;
  RVector lam = e.values;
  for (int i = 0; i < lam.size(); ++i) lam(i) = std::abs(lam(i)) > cut ? 1.0 / lam(i) : 0.0;
  return e.vectors * lam.asDiagonal() * e.vectors.adjoint();
}

RangeMembership range_membership(const CMatrix& b, const CVector& e, double exponent,
                                 const NumericOptions& opt) {
  double s = scale_of(b);
  if (!is_hermitian(b, opt.residual_tol)) throw Error(ErrorCode::NOT_PSD, "range test expects PSD matrix");
  HermEig eig = herm_eig(b);
  if (eig.values.minCoeff() < -opt.residual_tol * s) throw Error(ErrorCode::NOT_PSD, "negative eigenvalue");

  RangeMembership out;
  double vnorm = e.norm();
  if (vnorm == 0.0) {
    out.member = true;
    out.preimage = CVector::Zero(e.size());
    return out;
  }
  double cut = std::max(eig.values.maxCoeff(), 0.0) * opt.rank_rel;
  CVector coords = eig.vectors.adjoint() * e;
  double res2 = 0.0;
  CVector pre = CVector::Zero(e.size());
  for (int i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) > cut) {
      double p = std::pow(eig.values(i), exponent);
      pre += (coords(i) / p) * eig.vectors.col(i);
    } else {
      res2 += std::norm(coords(i));
    }
  }
  out.residual = std::sqrt(res2) / vnorm;
  out.member = out.residual <= opt.range_rel;
  out.borderline = !out.member && out.residual <= 10.0 * opt.range_rel;
  if (out.member) out.preimage = pre;
  return out;
}

bool quad_form_bound(const CMatrix& b, const CVector& e, double c, const NumericOptions& opt) {
  ExtReal best = least_c(b, e, opt);
  if (best.is_infinite()) return false;
  return best.value() <= c + opt.residual_tol * std::max(1.0, std::abs(c));
}

ExtReal least_c(const CMatrix& b, const CVector& e, const NumericOptions& opt) {
  double s = scale_of(b);
  if (!is_hermitian(b, opt.residual_tol)) throw Error(ErrorCode::NOT_SELFADJOINT, "least_c");
  HermEig eig = herm_eig(b);
  if (eig.values.minCoeff() < -opt.residual_tol * s) return ExtReal::infinity();
  RangeMembership mem = range_membership(hermitian_part(b).eval(), e, 0.5, opt);
  if (!mem.member) return ExtReal::infinity();
  return ExtReal(mem.preimage.squaredNorm());
}

bool loewner_leq(const CMatrix& a, const CMatrix& b, const NumericOptions& opt) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::SIZE_MISMATCH, "loewner comparison");
  CMatrix diff = hermitian_part(b - a);
  HermEig e = herm_eig(diff);
  return e.values.minCoeff() >= -opt.residual_tol * std::max(scale_of(a), scale_of(b));
}

GeninvOrder geninv_order_check(const CMatrix& a, const CMatrix& b, const NumericOptions& opt) {
  double s = std::max(scale_of(a), scale_of(b));
  for (const CMatrix* m : {&a, &b}) {
    if (!is_hermitian(*m, opt.residual_tol)) throw Error(ErrorCode::NOT_PSD, "geninv order");
    if (herm_eig(*m).values.minCoeff() < -opt.residual_tol * s)
      throw Error(ErrorCode::NOT_PSD, "geninv order");
  }
  GeninvOrder out;
  out.lhs = loewner_leq(a, b, opt);

  CMatrix a_half = psd_power(hermitian_part(a), 0.5, opt);
  CMatrix b_half = psd_power(hermitian_part(b), 0.5, opt);
  // ran(A^{1/2}) subset of ran(B^{1/2}): every column of A^{1/2} must be in range
  bool inclusion = true;
  for (int j = 0; j < a_half.cols() && inclusion; ++j) {
    CVector col = a_half.col(j);
    if (col.norm() < opt.rank_rel * s) continue;
    inclusion = range_membership(b_half, col, 1.0, opt).member;
  }
  bool contraction = false;
  if (inclusion) {
    CMatrix t = pseudo_inverse(b_half, opt) * a_half;
    contraction = operator_norm(t) <= 1.0 + 1e-7;
  }
  out.rhs = inclusion && contraction;
  return out;
}

std::vector<Complex> eigenvalues(const CMatrix& a) {
  Eigen::ComplexEigenSolver<CMatrix> es(a);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NO_CONVERGENCE, "eigensolver");
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end(), [](Complex x, Complex y) {
    if (std::abs(x) != std::abs(y)) return std::abs(x) > std::abs(y);
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  return out;
}

double spectral_radius(const CMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::SIZE_MISMATCH, "spectral radius");
  if (a.size() == 0) return 0.0;
  auto ev = eigenvalues(a);
  return ev.empty() ? 0.0 : std::abs(ev.front());
}

double gelfand_radius(const CMatrix& a, int squarings) {
  // log r(A) = sum_k log(s_k)/2^k with s_0 = ||A|| and s_{k+1} = ||(B_k/s_k)^2||
  double log_r = 0.0;
  CMatrix b = a;
  double w = 1.0;
  for (int k = 0; k <= squarings; ++k) {
    double n = operator_norm(b);
    if (n == 0.0) return 0.0;
    log_r += w * std::log(n);
    w *= 0.5;
    b = ((b / n) * (b / n)).eval();
  }
  return std::exp(log_r);
}

namespace {

double paranormal_min_margin(const CMatrix& a, const NumericOptions& opt) {
  // A paranormal iff A*^2 A^2 - 2 lambda A*A + lambda^2 I is PSD for every lambda > 0.
  // The smallest eigenvalue is minimized over a log grid with golden-section polish.
  double smax = operator_norm(a);
  if (smax == 0.0) return 0.0;
  double s2 = smax * smax;
  CMatrix a2 = a * a;
  CMatrix q0 = a2.adjoint() * a2;
  CMatrix q1 = a.adjoint() * a;
  CMatrix id = CMatrix::Identity(a.rows(), a.cols());
  auto min_eig = [&](double lam) {
    CMatrix m = q0 - 2.0 * lam * q1 + lam * lam * id;
    return herm_eig(m).values.minCoeff() / (s2 * s2);
  };
  double lo = s2 * 1e-9, hi = s2 * 2.5;
  double best = 0.0, best_lam = lo;
  const int grid = 240;
  for (int i = 0; i <= grid; ++i) {
    double lam = lo * std::pow(hi / lo, static_cast<double>(i) / grid);
    double v = min_eig(lam);
    if (v < best) {
      best = v;
      best_lam = lam;
    }
  }
  // golden-section refinement around the worst grid point
  double gl = best_lam / std::pow(hi / lo, 1.0 / grid);
  double gr = best_lam * std::pow(hi / lo, 1.0 / grid);
  const double phi = 0.6180339887498949;
  for (int it = 0; it < 60; ++it) {
    double m1 = gr - phi * (gr - gl), m2 = gl + phi * (gr - gl);
    if (min_eig(m1) < min_eig(m2)) gr = m2; else gl = m1;
  }
  best = std::min(best, min_eig(0.5 * (gl + gr)));
  (void)opt;
  return best;
}

}  // namespace

ClassFlags classify_matrix(const CMatrix& a, const NumericOptions& opt) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::SIZE_MISMATCH, "classify_matrix");
  ClassFlags f;
  double s = scale_of(a);
  double tol = opt.residual_tol * s;
  CMatrix id = CMatrix::Identity(a.rows(), a.cols());
  CMatrix ata = a.adjoint() * a;
  CMatrix aat = a * a.adjoint();

  f.selfadjoint_residual = (a - a.adjoint()).cwiseAbs().maxCoeff();
  f.selfadjoint = f.selfadjoint_residual <= tol;

  if (f.selfadjoint) {
    f.positive_margin = herm_eig(a).values.minCoeff();
    f.positive = f.positive_margin >= -tol;
  }

  f.hyponormal_margin = herm_eig(ata - aat).values.minCoeff();
  f.cohyponormal_margin = herm_eig(aat - ata).values.minCoeff();
  f.hyponormal = f.hyponormal_margin >= -tol * s;
  f.cohyponormal = f.cohyponormal_margin >= -tol * s;
  f.normal_residual = (ata - aat).cwiseAbs().maxCoeff();
  f.normal = f.normal_residual <= tol * s;

  f.isometry_residual = (ata - id).cwiseAbs().maxCoeff();
  f.coisometry_residual = (aat - id).cwiseAbs().maxCoeff();
  f.isometry = f.isometry_residual <= tol;
  f.coisometry = f.coisometry_residual <= tol;
  f.unitary = f.isometry && f.coisometry;

  f.partial_isometry_residual = (a * ata - a).cwiseAbs().maxCoeff();
  f.partial_isometry = f.partial_isometry_residual <= tol;

  f.projection_residual =
      std::max((a - a.adjoint()).cwiseAbs().maxCoeff(), (a * a - a).cwiseAbs().maxCoeff());
  f.orthogonal_projection = f.projection_residual <= tol;

  double nrm = operator_norm(a);
  f.normaloid_gap = std::abs(spectral_radius(a) - nrm);
  f.normaloid = f.normaloid_gap <= opt.residual_tol * std::max(1.0, nrm);

  f.paranormal_margin = paranormal_min_margin(a, opt);
  f.paranormal = f.paranormal_margin >= -opt.residual_tol;
  return f;
}

CMatrix aluthge(const CMatrix& a, double s, double t, const NumericOptions& opt) {
  PolarResult pd = polar_decompose(a, opt);
  CMatrix ps = psd_power(pd.positive, s, opt);
  CMatrix pt = psd_power(pd.positive, t, opt);
  return ps * pd.partial_isometry * pt;
}

CMatrix conjugate_reflect(const CMatrix& a) { return a.conjugate(); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace cphi
