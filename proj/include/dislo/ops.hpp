#ifndef DISLO_OPS_HPP_
#define DISLO_OPS_HPP_

#include "dislo/chart.hpp"
#include "dislo/field.hpp"

namespace dislo {

// Plain partial derivative d/dy^r, appended as a new (fastest) covariant
// body slot. No connection terms.
Field partial_derivative(const Field& f, const Chart& chart);

// Covariant derivative: partial derivative plus Christoffel corrections on
// every body slot. Burgers slots receive no connection term.
Field covariant_derivative(const Field& f, const Chart& chart);

// div rho: sum_jk g^kj nabla_k rho^i_j, one value per Burgers index.
Field div_burgers_density(const Field& rho, const Chart& chart);

// rot X: sum omega_kqp g^qr g^pm nabla_r X^i_m, same signature as X.
Field rot_distortion(const Field& x, const Chart& chart);

// (grad w)^i_k = dw^i/dy^k; w carries only a Burgers index, so covariant
// and partial derivatives coincide.
Field grad_potential(const Field& w, const Chart& chart);

// Nodewise inverse S-hat of a distortion field. The result stores S^k_p with
// the Burgers index p slowest; use shat_mat() for the (k,p) matrix view.
Field invert_pointwise(const Field& that, const Chart& chart,
                       double det_floor = 1e-10);

// Matrix views with the mathematically natural row index.
inline Mat3 that_mat(const Field& that, std::size_t n) { return that.mat(n); }
inline Mat3 shat_mat(const Field& shat, std::size_t n) {
  return transpose(shat.mat(n));  // stored (p,k), math form (k,p)
}
inline void set_shat_mat(Field& shat, std::size_t n, const Mat3& m) {
  shat.set_mat(n, transpose(m));
}

// out = a*x + b*y (signatures and grids must match).
Field axpby(double a, const Field& x, double b, const Field& y);

}  // namespace dislo

#endif  // DISLO_OPS_HPP_
