#include "caplab/channel.hpp"

#include <cmath>
#include <string>

#include "caplab/errors.hpp"

namespace caplab::fock {

void gauss_laguerre(int n, Vec& nodes, Vec& weights) {
    if (n < 1)
        throw std::domain_error("gauss_laguerre: need n >= 1");
    // Jacobi matrix of the monic Laguerre recurrence: alpha_i = 2i+1, beta_i = i^2
    Mat J = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        J(i, i) = 2.0 * i + 1.0;
        if (i + 1 < n) {
            J(i, i + 1) = i + 1.0;
            J(i + 1, i) = i + 1.0;
        }
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(J);
    nodes = es.eigenvalues();
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double v0 = es.eigenvectors()(0, i);
        weights[i] = v0 * v0;  // mu_0 = int e^{-t} dt = 1
    }
}

Vec displacement_subdiagonal(int offset, double s, int dim) {
    const int n_max = dim - offset;
    if (offset < 0 || n_max < 1)
        throw std::domain_error("displacement_subdiagonal: offset outside [0, dim-1]");
    Vec d(n_max);
    const double x = s * s;
    if (x == 0.0) {
        d.setZero();
        if (offset == 0) d.setOnes();
        return d;
    }
    d[0] = std::exp(0.5 * offset * std::log(x) - 0.5 * std::lgamma(offset + 1.0) - 0.5 * x);
    if (n_max > 1)
        d[1] = (1.0 + offset - x) * d[0] / std::sqrt(1.0 + offset);
    for (int n = 1; n + 1 < n_max; ++n)
        d[n + 1] = ((2.0 * n + 1.0 + offset - x) * d[n] - std::sqrt(double(n) * (n + offset)) * d[n - 1]) /
                   std::sqrt((n + 1.0) * (n + 1.0 + offset));
    return d;
}

Mat displacement_matrix(double s, int dim) {
    Mat D = Mat::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        const Vec d = displacement_subdiagonal(j, s, dim);
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        for (int n = 0; n + j < dim; ++n) {
            D(n + j, n) = d[n];
            D(n, n + j) = sign * d[n];  // <n|D(s)|n+j> = (-1)^j <n+j|D(s)|n>
        }
    }
    return D;
}

ChannelKernel::ChannelKernel(const ChannelParams& ch, int cutoff, const QuadratureScheme& quad)
    : ch_(ch), cutoff_(cutoff), quad_(quad) {
    if (cutoff < 1)
        throw std::domain_error("ChannelKernel: cutoff must be >= 1");
    if (quad.radial_nodes < 1)
        throw std::domain_error("ChannelKernel: radial_nodes must be >= 1");
    gauss_laguerre(quad.radial_nodes, t_, w_);
    s_.resize(t_.size());
    for (int i = 0; i < s_.size(); ++i) s_[i] = std::sqrt(ch.noise_photons * t_[i]);
}

const Mat& ChannelKernel::transition() const {
    if (transition_.size() == 0) {
        const int d = cutoff_ + 1;
        transition_ = Mat::Zero(d, d);
        for (int wi = 0; wi < radial_count(); ++wi) {
            for (int j = 0; j < d; ++j) {
                const Vec sub = displacement_subdiagonal(j, s_[wi], d);
                for (int n = 0; n + j < d; ++n) {
                    const double v = w_[wi] * sub[n] * sub[n];
                    transition_(n + j, n) += v;
                    if (j) transition_(n, n + j) += v;
                }
            }
        }
    }
    return transition_;
}

Vec ChannelKernel::apply_diagonal(const Vec& p) const {
    if (p.size() != cutoff_ + 1)
        throw std::domain_error("apply_diagonal: dimension mismatch");
    return transition() * p;
}

CMat ChannelKernel::apply(const CMat& rho) const {
    const int d = cutoff_ + 1;
    if (rho.rows() != d || rho.cols() != d)
        throw std::domain_error("ChannelKernel::apply: dimension mismatch");
    const int A = quad_.angular_nodes;
    CMat out = CMat::Zero(d, d);
    for (int wi = 0; wi < radial_count(); ++wi) {
        const Mat D = displacement_matrix(s_[wi], d);
        const double wgt = w_[wi];
        for (int dout = -cutoff_; dout <= cutoff_; ++dout) {
            // input diagonals coupled to dout: exact phase average keeps
            // din = dout; a finite trapezoid also aliases din = dout + sigma*A
            for (int din = -cutoff_; din <= cutoff_; ++din) {
                if (A <= 0 || A > 2 * cutoff_) {
                    if (din != dout) continue;
                } else if (((din - dout) % A + A) % A != 0) {
                    continue;
                }
                for (int q = std::max(0, dout); q <= std::min(cutoff_, cutoff_ + dout); ++q) {
                    const int qp = q - dout;
                    std::complex<double> acc = 0.0;
                    for (int k = std::max(0, din); k <= std::min(cutoff_, cutoff_ + din); ++k)
                        acc += D(q, k) * rho(k, k - din) * D(qp, k - din);
                    out(q, qp) += wgt * acc;
                }
            }
        }
    }
    return out;
}

FockDensityMatrix ChannelKernel::apply(const FockDensityMatrix& rho) const {
    if (rho.cutoff != cutoff_)
        throw std::domain_error("ChannelKernel::apply: cutoff mismatch");
    FockDensityMatrix out;
    out.cutoff = rho.cutoff;
    out.modes = rho.modes;
    const double leak = thermal_tail(ch_.noise_photons + mean_photons(rho, 0), cutoff_);
    out.tail_mass = rho.tail_mass + std::max(leak, 0.0);
    if (rho.modes == 1) {
        out.matrix = apply(rho.matrix);
        return out;
    }
    // channel on mode Q, identity on R: transform each (r, r') slice
    const int d = cutoff_ + 1;
    out.matrix.resize(d * d, d * d);
    CMat slice(d, d);
    for (int r = 0; r < d; ++r)
        for (int rp = 0; rp < d; ++rp) {
            for (int q = 0; q < d; ++q)
                for (int qp = 0; qp < d; ++qp)
                    slice(q, qp) = rho.matrix(q * d + r, qp * d + rp);
            const CMat res = apply(slice);
            for (int q = 0; q < d; ++q)
                for (int qp = 0; qp < d; ++qp)
                    out.matrix(q * d + r, qp * d + rp) = res(q, qp);
        }
    return out;
}

Mat ChannelKernel::joint_gram_factor(const Vec& c, int j) const {
    const int d = cutoff_ + 1;
    if (c.size() != d)
        throw std::domain_error("joint_gram_factor: dimension mismatch");
    const int aj = std::abs(j);
    const int nj = d - aj;
    const int R = radial_count();
    Mat U(nj, R);
    for (int wi = 0; wi < R; ++wi) {
        const Vec sub = displacement_subdiagonal(aj, s_[wi], d);
        const double sq = std::sqrt(w_[wi]);
        if (j >= 0) {
            // rows follow the reference index r; q = r + j
            for (int r = 0; r < nj; ++r) U(r, wi) = sq * c[r] * sub[r];
        } else {
            // q = r + j < r: <q|D|r> = (-1)^{|j|} <r|D|q>; the sign cancels in U U^T
            const double sign = (aj % 2 == 0) ? 1.0 : -1.0;
            for (int i = 0; i < nj; ++i) U(i, wi) = sq * c[i + aj] * sign * sub[i];
        }
    }
    return U;
}

QuadratureScheme QuadratureScheme::certified(const ChannelParams& ch, int cutoff, double probe_N,
                                             double tol, int start_radial) {
    const Vec p = thermal_weights(probe_N, cutoff);
    QuadratureScheme quad;
    quad.radial_nodes = start_radial;
    for (int iter = 0; iter < 6; ++iter) {
        ChannelKernel k1(ch, cutoff, quad);
        QuadratureScheme doubled = quad;
        doubled.radial_nodes = 2 * quad.radial_nodes;
        ChannelKernel k2(ch, cutoff, doubled);
        const double delta = 0.5 * (k1.apply_diagonal(p) - k2.apply_diagonal(p)).cwiseAbs().sum();
        if (delta < tol) {
            quad.certificate_delta = delta;
            return quad;
        }
        quad = doubled;
    }
    throw convergence_error("QuadratureScheme::certified: doubling did not converge below " +
                            std::to_string(tol));
}

}
