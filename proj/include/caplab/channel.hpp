// channel.hpp — the additive-noise channel as a Fock-space superoperator:
// Gauss-Laguerre quadrature in |alpha|^2, uniform trapezoid in phase.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "caplab/core_math.hpp"
#include "caplab/fock.hpp"

namespace caplab::fock {

// Nodes for the polar realization of the displacement integral.
// angular_nodes = 0 means "enough": with A >= 2K+1 the trapezoid phase sum is
// exact on a cutoff-K space, so the kernel evaluates its Kronecker-delta form.
struct QuadratureScheme {
    int radial_nodes = 48;
    int angular_nodes = 0;
    double certificate_delta = -1.0;  // doubling certificate; < 0 = not certified

    // Doubles node counts until the channel output on a thermal probe moves
    // less than tol in trace norm; records the certificate.
    static QuadratureScheme certified(const ChannelParams& ch, int cutoff, double probe_N,
                                      double tol = 1e-10, int start_radial = 32);
};

// Gauss-Laguerre rule for int_0^inf e^{-t} f(t) dt (Golub-Welsch).
void gauss_laguerre(int n, Vec& nodes, Vec& weights);

// d[i] = <i+offset| D(s) |i>, i = 0..dim-1-offset, for real s >= 0.
// Stable three-term recurrence; all values are unitary matrix elements.
Vec displacement_subdiagonal(int offset, double s, int dim);

// Full real matrix <q|D(s)|k>; D(s) = exp[s(a^† - a)].
Mat displacement_matrix(double s, int dim);

// The channel at fixed cutoff.  apply() realizes
//   E(rho) = sum_w w_w * phase-average[ D(s_w) rho D(s_w)^† ],  s_w = sqrt(N_n t_w),
// with the trapezoid phase average folded into its exact banded form
// (mod-A aliasing included when angular_nodes <= 2K).
class ChannelKernel {
public:
    ChannelKernel(const ChannelParams& ch, int cutoff, const QuadratureScheme& quad);

    int cutoff() const { return cutoff_; }
    const ChannelParams& params() const { return ch_; }
    const Vec& nodes() const { return t_; }
    const Vec& weights() const { return w_; }
    double node_s(int w) const { return s_[w]; }
    int radial_count() const { return static_cast<int>(t_.size()); }

    // diagonal -> diagonal map T[q,k] = sum_w w_w D_{qk}(s_w)^2
    const Mat& transition() const;
    Vec apply_diagonal(const Vec& p) const;

    // dense single-mode apply (any Hermitian input)
    CMat apply(const CMat& rho) const;
    // 1-mode input, or 2-mode input with the channel on mode Q only
    FockDensityMatrix apply(const FockDensityMatrix& rho) const;

    // Gram factor of sector j of (E ⊗ I)(|psi><psi|), |psi> = sum_r c_r |rr>:
    // block_j = U U^T with U[r, w] = sqrt(w_w) c_r D_{r+j, r}(s_w).
    Mat joint_gram_factor(const Vec& c, int j) const;

private:
    ChannelParams ch_;
    int cutoff_;
    QuadratureScheme quad_;
    Vec t_, w_, s_;
    mutable Mat transition_;  // lazily built
};

}
