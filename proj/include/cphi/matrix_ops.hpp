#ifndef CPHI_MATRIX_OPS_HPP
#define CPHI_MATRIX_OPS_HPP

#include <optional>
#include <vector>

#include "cphi/numeric.hpp"

namespace cphi {

struct SvdResult {
  CMatrix u;
  RVector singular_values;  // descending
  CMatrix v;
};

struct PolarResult {
  CMatrix partial_isometry;  // ker = ker(A)
  CMatrix positive;          // (A*A)^{1/2}
};

struct RangeMembership {
  bool member = false;
  bool borderline = false;  // residual within 10x of the decision tolerance
  CVector preimage;         // defined when member
  double residual = 0.0;    // ||(I - Pi) e|| / ||e||
};

// Per-class flag with the numeric margin that witnessed the decision
// (smallest eigenvalue, residual norm, ... depending on the class).
struct ClassFlags {
  bool positive = false;
  bool selfadjoint = false;
  bool normal = false;
  bool hyponormal = false;
  bool cohyponormal = false;
  bool isometry = false;
  bool coisometry = false;
  bool unitary = false;
  bool partial_isometry = false;
  bool orthogonal_projection = false;
  bool normaloid = false;
  bool paranormal = false;

  double selfadjoint_residual = 0.0;
  double positive_margin = 0.0;       // min eigenvalue
  double hyponormal_margin = 0.0;     // min eig of A*A - AA*
  double cohyponormal_margin = 0.0;   // min eig of AA* - A*A
  double normal_residual = 0.0;
  double isometry_residual = 0.0;
  double coisometry_residual = 0.0;
  double partial_isometry_residual = 0.0;
  double projection_residual = 0.0;
  double normaloid_gap = 0.0;         // | r(A) - ||A|| |
  double paranormal_margin = 0.0;     // worst scaled eigenvalue over the lambda scan
};

SvdResult svd(const CMatrix& a);

// operator norm (largest singular value); power iteration with SVD fallback
double operator_norm(const CMatrix& a);

PolarResult polar_decompose(const CMatrix& a, const NumericOptions& opt = {});

bool is_hermitian(const CMatrix& a, double tol);
CMatrix hermitian_part(const CMatrix& a);

// spectral-calculus power of a PSD matrix; negatives within tolerance clamp to 0
CMatrix psd_power(const CMatrix& a, double t, const NumericOptions& opt = {});

// generalized inverse of a selfadjoint matrix: invert on ran(A), zero on ker(A)
CMatrix pseudo_inverse(const CMatrix& a, const NumericOptions& opt = {});

// e in ran(B^exponent)?  exponent is 1 or 1/2; rank decided by relative cutoff
RangeMembership range_membership(const CMatrix& b, const CVector& e, double exponent,
                                 const NumericOptions& opt = {});

// <B xi, xi> - 2 Re<xi, e> + c >= 0 for all xi
bool quad_form_bound(const CMatrix& b, const CVector& e, double c, const NumericOptions& opt = {});
// least admissible c; +inf when B is not PSD or e escapes ran(B^{1/2})
ExtReal least_c(const CMatrix& b, const CVector& e, const NumericOptions& opt = {});

bool loewner_leq(const CMatrix& a, const CMatrix& b, const NumericOptions& opt = {});

// Order equivalence for generalized inverses of a PSD pair:
// lhs tests A <= B, rhs tests the reversed order of the inverses
// (range inclusion ran(A^{1/2}) in ran(B^{1/2}) plus ||B^{-1/2} A^{1/2}|| <= 1).
struct GeninvOrder {
  bool lhs = false;
  bool rhs = false;
};
GeninvOrder geninv_order_check(const CMatrix& a, const CMatrix& b, const NumericOptions& opt = {});

ClassFlags classify_matrix(const CMatrix& a, const NumericOptions& opt = {});

double spectral_radius(const CMatrix& a);
// norm-only route ||A^{2^k}||^{1/2^k}; used to cross-check spectral_radius
double gelfand_radius(const CMatrix& a, int squarings = 24);

std::vector<Complex> eigenvalues(const CMatrix& a);

// |A|^s U |A|^t from the polar decomposition A = U |A|
CMatrix aluthge(const CMatrix& a, double s, double t, const NumericOptions& opt = {});

// entrywise conjugate = Q A Q for the conjugation fixing the standard basis
CMatrix conjugate_reflect(const CMatrix& a);

CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace cphi

#endif
