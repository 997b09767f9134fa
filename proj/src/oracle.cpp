#include "caplab/oracle.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>

#include "caplab/errors.hpp"

namespace caplab::fock {

namespace {

double entropy_of_gram_factor(const Mat& U, double eig_floor) {
    // eigenvalues of U U^T are the squared singular values of U
    Eigen::BDCSVD<Mat> svd(U);
    const Vec sv = svd.singularValues();
    double s = 0.0;
    for (int i = 0; i < sv.size(); ++i) {
        const double lam = sv[i] * sv[i];
        if (lam > eig_floor) s -= lam * std::log2(lam);
    }
    return s;
}

}  // namespace

double TwoModeBlockState::trace() const {
    double t = 0.0;
    for (const Mat& b : blocks) t += b.trace();
    return t;
}

double TwoModeBlockState::entropy(double eig_floor) const {
    double s = 0.0;
    for (const Mat& b : blocks) {
        Eigen::SelfAdjointEigenSolver<Mat> es(b, Eigen::EigenvaluesOnly);
        s += entropy_of_eigenvalues(es.eigenvalues(), eig_floor);
    }
    return s;
}

CMat TwoModeBlockState::to_dense() const {
    const int d = cutoff + 1;
    CMat out = CMat::Zero(d * d, d * d);
    for (int j = -cutoff; j <= cutoff; ++j) {
        const Mat& B = block(j);
        const int nj = static_cast<int>(B.rows());
        for (int a = 0; a < nj; ++a)
            for (int b = 0; b < nj; ++b) {
                const int qa = a + std::max(j, 0), ra = a + std::max(-j, 0);
                const int qb = b + std::max(j, 0), rb = b + std::max(-j, 0);
                out(qa * d + ra, qb * d + rb) = B(a, b);
            }
    }
    return out;
}

double trace_distance(const TwoModeBlockState& a, const TwoModeBlockState& b) {
    if (a.cutoff != b.cutoff)
        throw std::domain_error("trace_distance: cutoff mismatch");
    double td = 0.0;
    for (int j = -a.cutoff; j <= a.cutoff; ++j) {
        Eigen::SelfAdjointEigenSolver<Mat> es(a.block(j) - b.block(j), Eigen::EigenvaluesOnly);
        td += 0.5 * es.eigenvalues().cwiseAbs().sum();
    }
    return td;
}

TwoModeBlockState joint_output_via_channel(const Vec& c, const ChannelKernel& kernel) {
    const int K = kernel.cutoff();
    TwoModeBlockState st;
    st.cutoff = K;
    st.blocks.resize(2 * K + 1);
    for (int j = -K; j <= K; ++j) {
        const Mat U = kernel.joint_gram_factor(c, j);
        st.blocks[j + K] = U * U.transpose();
    }
    return st;
}

TwoModeBlockState joint_output_direct(double N, const ChannelParams& ch, int cutoff) {
    const ThermalDecomposition td = thermal_decomposition(N, ch);
    const Vec lamA = thermal_weights(td.NA, cutoff);
    const Vec lamB = thermal_weights(td.NB, cutoff);  // NB = 0 gives |0><0|
    TwoModeSqueezer sq(td.r, cutoff);
    TwoModeBlockState st;
    st.cutoff = cutoff;
    st.blocks.resize(2 * cutoff + 1);
    for (int j = -cutoff; j <= cutoff; ++j) {
        const Mat& E = sq.block(j);
        const int nj = static_cast<int>(E.rows());
        Vec diag(nj);
        for (int i = 0; i < nj; ++i)
            diag[i] = lamA[i + std::max(j, 0)] * lamB[i + std::max(-j, 0)];
        st.blocks[j + cutoff] = E * diag.asDiagonal() * E.transpose();
    }
    return st;
}

JointOutputResult joint_output_state(double N, const ChannelParams& ch, int cutoff,
                                     const QuadratureScheme& quad, double agreement_tol) {
    ChannelKernel kernel(ch, cutoff, quad);
    Vec c = thermal_weights(N, cutoff).cwiseSqrt();
    JointOutputResult res;
    res.state = joint_output_via_channel(c, kernel);
    const TwoModeBlockState direct = joint_output_direct(N, ch, cutoff);
    res.construction_gap = trace_distance(res.state, direct);
    res.entropy = res.state.entropy();
    if (res.construction_gap > agreement_tol)
        throw inconsistency_error("joint_output_state: constructions disagree by " +
                                  std::to_string(res.construction_gap));
    return res;
}

double coherent_info_oracle_diagonal(const Vec& p, const ChannelKernel& kernel, double eig_floor) {
    const int K = kernel.cutoff();
    const double s_out = entropy_of_weights(kernel.apply_diagonal(p), eig_floor);
    const Vec c = p.cwiseSqrt();
    double s_joint = 0.0;
    for (int j = -K; j <= K; ++j)
        s_joint += entropy_of_gram_factor(kernel.joint_gram_factor(c, j), eig_floor);
    return s_out - s_joint;
}

namespace {

// joint entropy for a general single-mode input given its eigen-decomposition;
// per radial node the state gains one rank-1 factor per Fock offset, assembled
// as a symmetric rank-(2K+1) update.
template <typename MatT>
double joint_entropy_general(const std::vector<double>& lam, const MatT& V,
                             const ChannelKernel& kernel, double eig_floor) {
    const int d = kernel.cutoff() + 1;
    const int rank = static_cast<int>(lam.size());
    const int n = d * rank;
    std::vector<double> sqrt_lam(rank);
    for (int i = 0; i < rank; ++i) sqrt_lam[i] = std::sqrt(lam[i]);

    MatT M = MatT::Zero(n, n);
    MatT F(n, 2 * d - 1);
    for (int wi = 0; wi < kernel.radial_count(); ++wi) {
        const Mat D = displacement_matrix(kernel.node_s(wi), d);
        F.setZero();
        for (int off = -(d - 1); off <= d - 1; ++off) {
            const int col = off + d - 1;
            for (int q = std::max(0, off); q < d + std::min(0, off); ++q)
                for (int i = 0; i < rank; ++i)
                    F(q * rank + i, col) = sqrt_lam[i] * D(q, q - off) * V(q - off, i);
        }
        M.template selfadjointView<Eigen::Lower>().rankUpdate(F, kernel.weights()[wi]);
    }
    Eigen::SelfAdjointEigenSolver<MatT> es(M.template selfadjointView<Eigen::Lower>(),
                                           Eigen::EigenvaluesOnly);
    return entropy_of_eigenvalues(es.eigenvalues(), eig_floor);
}

double oracle_single_mode(const CMat& rho, const ChannelKernel& kernel, double eig_floor = 1e-14) {
    const int d = kernel.cutoff() + 1;
    // diagonal fast path
    double offdiag = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j) offdiag = std::max(offdiag, std::abs(rho(i, j)));
    if (offdiag < 1e-14)
        return coherent_info_oracle_diagonal(rho.diagonal().real(), kernel, eig_floor);

    const CMat out = kernel.apply(rho);
    Eigen::SelfAdjointEigenSolver<CMat> es_out(out, Eigen::EigenvaluesOnly);
    const double s_out = entropy_of_eigenvalues(es_out.eigenvalues(), eig_floor);

    Eigen::SelfAdjointEigenSolver<CMat> es(rho);
    std::vector<double> lam;
    std::vector<int> keep;
    for (int i = 0; i < d; ++i)
        if (es.eigenvalues()[i] > 1e-14) {
            lam.push_back(es.eigenvalues()[i]);
            keep.push_back(i);
        }
    const int rank = static_cast<int>(lam.size());

    const bool real_input = rho.imag().cwiseAbs().maxCoeff() < 1e-14;
    double s_joint;
    if (real_input) {
        Mat V(d, rank);
        for (int c = 0; c < rank; ++c) {
            Vec col = es.eigenvectors().col(keep[c]).real();
            // fix the purification phase: dominant component nonnegative
            int imax = 0;
            col.cwiseAbs().maxCoeff(&imax);
            if (col[imax] < 0) col = -col;
            V.col(c) = col;
        }
        s_joint = joint_entropy_general<Mat>(lam, V, kernel, eig_floor);
    } else {
        CMat V(d, rank);
        for (int c = 0; c < rank; ++c) {
            CVec col = es.eigenvectors().col(keep[c]);
            int imax = 0;
            col.cwiseAbs().maxCoeff(&imax);
            const std::complex<double> ph = col[imax] / std::abs(col[imax]);
            V.col(c) = col / ph;
        }
        s_joint = joint_entropy_general<CMat>(lam, V, kernel, eig_floor);
    }
    return s_out - s_joint;
}

}  // namespace

Mat single_mode_squeezer(double z, int cutoff) {
    const int d = cutoff + 1;
    Mat G = Mat::Zero(d, d);
    for (int nn = 0; nn + 2 < d; ++nn) {
        const double c = 0.5 * std::sqrt((nn + 1.0) * (nn + 2.0));
        G(nn + 2, nn) = c;   // a^†2 / 2
        G(nn, nn + 2) = -c;  // -a^2 / 2
    }
    return (z * G).exp();
}

FockDensityMatrix two_mode_squeezed_thermal_fock(double N, double r2, int cutoff) {
    const Vec p = thermal_weights(N, cutoff);
    FockDensityMatrix prod;
    prod.cutoff = cutoff;
    prod.modes = 2;
    const int d = cutoff + 1;
    prod.matrix = CMat::Zero(d * d, d * d);
    for (int q = 0; q < d; ++q)
        for (int r = 0; r < d; ++r)
            prod.matrix(q * d + r, q * d + r) = p[q] * p[r];
    prod.tail_mass = 1.0 - prod.trace();
    if (r2 == 0.0) return prod;
    // generator argument r2/2 makes the state's shape exactly 1/cosh^2(r2)
    TwoModeSqueezer sq(0.5 * r2, cutoff);
    return sq.apply(prod, 1e-6);
}

Mat beam_splitter_50_50(int cutoff) {
    const int d = cutoff + 1;
    Mat U = Mat::Zero(d * d, d * d);
    // number-conserving: build exp[(pi/4)(a^† b - a b^†)] per total-photon sector
    for (int n = 0; n <= 2 * cutoff; ++n) {
        const int t_lo = std::max(0, n - cutoff), t_hi = std::min(n, cutoff);
        const int nt = t_hi - t_lo + 1;
        if (nt <= 0) continue;
        Mat G = Mat::Zero(nt, nt);
        for (int t = t_lo; t < t_hi; ++t) {
            // |n-t, t>: a^† b lowers t by one with sqrt((n-t+1) t) from |n-t,t> -> ...
            const double c = std::sqrt((n - t) * (t + 1.0));  // t -> t+1 via a b^†... sign below
            G(t + 1 - t_lo, t - t_lo) = -c;  // -a b^†: raises t
            G(t - t_lo, t + 1 - t_lo) = c;   // a^† b: lowers t
        }
        const Mat E = ((M_PI / 4.0) * G).exp();
        for (int ta = t_lo; ta <= t_hi; ++ta)
            for (int tb = t_lo; tb <= t_hi; ++tb)
                U((n - ta) * d + ta, (n - tb) * d + tb) = E(ta - t_lo, tb - t_lo);
    }
    return U;
}

double coherent_info_oracle(const FockDensityMatrix& rho, const ChannelParams& ch,
                            const QuadratureScheme& quad) {
    const double deficit = std::fabs(rho.trace() - 1.0);
    if (deficit > rho.tail_mass + 1e-10)
        throw std::domain_error("coherent_info_oracle: input trace deficit " + std::to_string(deficit));
    if (rho.modes == 1) {
        ChannelKernel kernel(ch, rho.cutoff, quad);
        return oracle_single_mode(rho.matrix, kernel);
    }
    // two modes: rotate to the beam-splitter basis, require a product state
    const int d = rho.cutoff + 1;
    const Mat U = beam_splitter_50_50(rho.cutoff);
    const CMat rot = U * rho.matrix * U.transpose();
    CMat sig_c = CMat::Zero(d, d), sig_d = CMat::Zero(d, d);
    for (int q = 0; q < d; ++q)
        for (int qp = 0; qp < d; ++qp) {
            for (int r = 0; r < d; ++r) {
                sig_c(q, qp) += rot(q * d + r, qp * d + r);
                sig_d(q, qp) += rot(r * d + q, r * d + qp);
            }
        }
    double prod_gap = 0.0;
    for (int a = 0; a < d * d; ++a)
        for (int b = 0; b < d * d; ++b) {
            const std::complex<double> p = sig_c(a / d, b / d) * sig_d(a % d, b % d);
            prod_gap = std::max(prod_gap, std::abs(rot(a, b) - p));
        }
    if (prod_gap > 1e-6)
        throw std::domain_error("coherent_info_oracle: 2-mode input does not factorize "
                                "in the beam-splitter basis (gap " + std::to_string(prod_gap) + ")");
    ChannelKernel kernel(ch, rho.cutoff, quad);
    const double tc = sig_c.trace().real(), tdd = sig_d.trace().real();
    return oracle_single_mode(sig_c / tc, kernel) + oracle_single_mode(sig_d / tdd, kernel);
}

double coherent_info_oracle(const TwoModeSqueezedThermalInput& input, const ChannelParams& ch,
                            int cutoff, const QuadratureScheme& quad) {
    ChannelKernel kernel(ch, cutoff, quad);
    if (input.r2 == 0.0)
        return 2.0 * coherent_info_oracle_diagonal(thermal_weights(input.N, cutoff), kernel);
    // beam-splitter modes of the two-mode squeezed thermal state: single-mode
    // squeezed thermals with quadrature scaling e^{+-r2/2... } (generator r2/2)
    const Mat rho_th = thermal_weights(input.N, cutoff).asDiagonal();
    double ic = 0.0;
    for (const double sgn : {+1.0, -1.0}) {
        const Mat S = single_mode_squeezer(sgn * 0.5 * input.r2, cutoff);
        const CMat sig = (S * rho_th * S.transpose()).cast<std::complex<double>>();
        ic += oracle_single_mode(sig / sig.trace().real(), kernel);
    }
    return ic;
}

double verify_lemma(int which, int k, int m, double N, const ChannelParams& ch,
                    int cutoff, const QuadratureScheme& quad, int margin) {
    if (which != 1 && which != 2)
        throw std::domain_error("verify_lemma: which must be 1 or 2");
    if (k < 0 || m < 0 || k > 4 || m > 4)
        throw std::domain_error("verify_lemma: k, m must lie in [0, 4]");
    if (margin < k + m + 4)
        throw std::domain_error("verify_lemma: margin must be >= k + m + 4");
    if (cutoff <= margin)
        throw cutoff_error("verify_lemma: cutoff too small for the margin", margin + 16);

    ChannelKernel kernel(ch, cutoff, quad);
    const int d = cutoff + 1;
    const int R = kernel.radial_count();
    std::vector<Mat> D(R);
    for (int wi = 0; wi < R; ++wi) D[wi] = displacement_matrix(kernel.node_s(wi), d);

    const Vec lam = thermal_weights(N, cutoff);
    const Vec c = lam.cwiseSqrt();
    const double v = N / (N + 1.0);

    // rho^{QR'} blocks for the right-hand side
    std::vector<Mat> B(2 * cutoff + 1);
    for (int j = -cutoff; j <= cutoff; ++j) {
        const Mat U = kernel.joint_gram_factor(c, j);
        B[j + cutoff] = U * U.transpose();
    }

    auto ratio_fac = [](int base, int steps) {  // sqrt((base+steps)!/base!)
        double f = 1.0;
        for (int i = 1; i <= steps; ++i) f *= base + i;
        return std::sqrt(f);
    };

    const int smax = cutoff - margin;
    double max_err = 0.0;
    for (int q = 0; q <= smax; ++q)
        for (int r = 0; q + r <= smax; ++r)
            for (int qp = 0; qp <= smax; ++qp) {
                // element ((q,r),(q',r')); the Q-mode offsets must match:
                // lemma 1: q-(r+k) = q'-(r'+m);  lemma 2: q-(r-k) = q'-(r'-m)
                const int rp = (which == 1) ? r + k - m - q + qp : r - k + m - q + qp;
                if (rp < 0 || qp + rp > smax) continue;
                double lhs = 0.0, rhs = 0.0;
                if (which == 1) {
                    // lhs = (E⊗I)(a^{†k}|psi><psi|a^m) at ((q,r),(q',r'))
                    const double fac = ratio_fac(r, k) * ratio_fac(rp, m);
                    for (int wi = 0; wi < R; ++wi)
                        lhs += kernel.weights()[wi] * D[wi](q, r + k) * D[wi](qp, rp + m);
                    lhs *= fac * c[r] * c[rp];
                    // rhs = v^{-(k+m)/2} <q,r| b^k rho' b^{†m} |q',r'>
                    const int jj = q - (r + k);
                    const int a_row = std::min(r + k, q), a_col = std::min(rp + m, qp);
                    rhs = std::pow(v, -0.5 * (k + m)) * fac * B[jj + cutoff](a_row, a_col);
                } else {
                    if (r < k || rp < m) continue;  // both sides annihilate to 0
                    const double fac = ratio_fac(r - k, k) * ratio_fac(rp - m, m);
                    for (int wi = 0; wi < R; ++wi)
                        lhs += kernel.weights()[wi] * D[wi](q, r - k) * D[wi](qp, rp - m);
                    lhs *= fac * c[r] * c[rp];
                    const int jj = q - (r - k);
                    const int a_row = std::min(r - k, q), a_col = std::min(rp - m, qp);
                    rhs = std::pow(v, 0.5 * (k + m)) * fac * B[jj + cutoff](a_row, a_col);
                }
                max_err = std::max(max_err, std::fabs(lhs - rhs));
            }
    return max_err;
}

double verify_lemma3(int j, double N, int cutoff, int margin) {
    if (j < 0 || j > 4)
        throw std::domain_error("verify_lemma3: j must lie in [0, 4]");
    if (!(N > 0.0))
        throw std::domain_error("verify_lemma3: N must be > 0");
    if (cutoff <= margin + j)
        throw cutoff_error("verify_lemma3: cutoff too small", margin + j + 16);

    const int smax = cutoff - margin;
    // d^i lambda_k / dN^i for lambda_k = N^k (N+1)^{-(k+1)}, by Leibniz
    auto dlam = [&](int k, int i) {
        double sum = 0.0;
        for (int t = 0; t <= i; ++t) {
            if (k - t < 0) continue;
            double term = binomial(i, t);
            for (int u = 0; u < t; ++u) term *= (k - u);                 // k!/(k-t)!
            term *= std::pow(N, k - t);
            double fall = 1.0;
            for (int u = 1; u <= i - t; ++u) fall *= (k + u);            // (k+i-t)!/k!
            term *= ((i - t) % 2 == 0 ? 1.0 : -1.0) * fall * std::pow(N + 1.0, -(k + 1.0 + i - t));
            sum += term;
        }
        return sum;
    };

    double max_err = 0.0;
    for (int k = 0; k <= smax; ++k) {
        const double lam_k = std::pow(N, k) * std::pow(N + 1.0, -(k + 1.0));
        // identity 1: a^{†j} a^j rho  ->  diagonal k!/(k-j)! lam_k
        double lhs1 = 0.0;
        if (k >= j) {
            lhs1 = lam_k;
            for (int u = 0; u < j; ++u) lhs1 *= (k - u);
        }
        double rhs1 = 0.0;
        for (int i = 0; i <= j; ++i) {
            double fall = 1.0;
            for (int u = i + 1; u <= j; ++u) fall *= u;                  // j!/i!
            rhs1 += fall * binomial(j, i) * std::pow(N + 1.0, i) * dlam(k, i);
        }
        rhs1 *= std::pow(N, j);
        // identity 2: a^j a^{†j} rho  ->  diagonal (k+j)!/k! lam_k
        double lhs2 = lam_k;
        for (int u = 1; u <= j; ++u) lhs2 *= (k + u);
        double rhs2 = 0.0;
        for (int i = 0; i <= j; ++i) {
            double fall = 1.0;
            for (int u = i + 1; u <= j; ++u) fall *= u;
            rhs2 += fall * binomial(j, i) * std::pow(N, i) * dlam(k, i);
        }
        rhs2 *= std::pow(N + 1.0, j);
        max_err = std::max({max_err, std::fabs(lhs1 - rhs1), std::fabs(lhs2 - rhs2)});
    }
    return max_err;
}

}
