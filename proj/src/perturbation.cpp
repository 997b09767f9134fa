#include "caplab/perturbation.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "caplab/errors.hpp"
#include "caplab/oracle.hpp"

namespace caplab::pert {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

Type1Perturbation::Type1Perturbation(int n_, double epsilon_) : n(n_), epsilon(epsilon_) {
    if (n < 1)
        throw std::domain_error("Type1Perturbation: n must be >= 1");
    if (!std::isfinite(epsilon))
        throw std::domain_error("Type1Perturbation: epsilon must be finite");
}

MultiModePerturbation::MultiModePerturbation(std::vector<int> k, std::vector<int> l,
                                             std::complex<double> c_)
    : k_vec(std::move(k)), l_vec(std::move(l)), c(c_) {
    if (k_vec.empty() || k_vec.size() != l_vec.size())
        throw std::domain_error("MultiModePerturbation: k and l must be non-empty, equal length");
    for (size_t i = 0; i < k_vec.size(); ++i)
        if (k_vec[i] < 0 || l_vec[i] < 0)
            throw std::domain_error("MultiModePerturbation: entries must be >= 0");
    const int sk = std::accumulate(k_vec.begin(), k_vec.end(), 0);
    const int sl = std::accumulate(l_vec.begin(), l_vec.end(), 0);
    if (sk != sl)
        throw std::domain_error("MultiModePerturbation: sum k != sum l breaks first-order balance");
    if (k_vec == l_vec)
        throw std::domain_error("MultiModePerturbation: k = l is a type-1 perturbation");
}

int MultiModePerturbation::order() const {
    return std::accumulate(k_vec.begin(), k_vec.end(), 0);
}

Vec xi_eigenvalues(int n, double N, int k_max) {
    if (!(N > 0.0))
        throw std::domain_error("xi_eigenvalues: N must be > 0 (N^-j singular)");
    if (n < 1)
        throw std::domain_error("xi_eigenvalues: n must be >= 1");
    const double v = N / (N + 1.0);
    const double pref = std::pow(1.0 - v, n);
    Vec xi(k_max + 1);
    for (int k = 0; k <= k_max; ++k) {
        double acc = 0.0;
        for (int j = 0; j <= std::min(n, k); ++j) {
            // C(k,j) by running product to stay exact for large k
            double ckj = 1.0;
            for (int u = 0; u < j; ++u) ckj *= double(k - u) / (u + 1);
            const double term = factorial(n) * binomial(n, j) * ckj * std::pow(N, -double(j));
            acc += (j % 2 == 0) ? term : -term;
        }
        xi[k] = pref * acc;
    }
    return xi;
}

double max_epsilon(int n, double N, int k_max) {
    const Vec xi = xi_eigenvalues(n, N, k_max);
    double bound = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= k_max; ++k)
        if (xi[k] < 0.0) bound = std::min(bound, -1.0 / xi[k]);
    return bound;
}

CorrectionBreakdown correction_breakdown(const Type1Perturbation& pert, double N,
                                         const ChannelParams& ch) {
    if (!(N > 0.0))
        throw std::domain_error("correction_breakdown: N must be > 0");
    const int n = pert.n;
    const double v = N / (N + 1.0);
    const double nfac2 = factorial(n) * factorial(n);
    CorrectionBreakdown cb;
    cb.input_coeff = std::pow(1.0 - v, n) * std::pow(N, -double(n)) * nfac2;
    const double Np = N + ch.noise_photons;
    cb.output_coeff = nfac2 / std::pow(Np * (Np + 1.0), n);
    const ThermalDecomposition td = thermal_decomposition(N, ch);
    const double A = td.NA * (td.NA + 1.0) * std::pow(std::sinh(td.r), 4);
    const double B = td.NB * (td.NB + 1.0) * std::pow(std::cosh(td.r), 4);
    double sum = 0.0;
    for (int j = 0; j <= n; ++j) {
        const double b = binomial(n, j);
        sum += b * b * std::pow(B, j) * std::pow(A, n - j);
    }
    cb.joint_coeff = nfac2 * std::pow(N * (N + 1.0), -2.0 * n) * sum;
    cb.delta_Ic_second_order = -0.5 * (cb.output_coeff - cb.joint_coeff) / kLn2;
    return cb;
}

double delta_Ic_limit(int n, double N) {
    if (n < 1 || !(N > 0.0))
        throw std::domain_error("delta_Ic_limit: need n >= 1 and N > 0");
    const double nfac = factorial(n);
    return -0.5 * nfac * nfac * std::pow(N, -2.0 * n) * central_binomial_bracket(n) / kLn2;
}

FockDensityMatrix build_perturbed_input_fock(const Type1Perturbation& pert, double N, int cutoff) {
    const double bound = max_epsilon(pert.n, N, cutoff);
    if (std::fabs(pert.epsilon) > 0.5 * bound)
        throw epsilon_too_large_error(
            "build_perturbed_input_fock: |epsilon| beyond half the positivity bound " +
                std::to_string(bound),
            0.5 * bound);
    const Vec p = fock::thermal_weights(N, cutoff);
    const Vec xi = xi_eigenvalues(pert.n, N, cutoff);
    FockDensityMatrix rho;
    rho.cutoff = cutoff;
    rho.modes = 1;
    Vec pe = p.array() * (1.0 + pert.epsilon * xi.array());
    rho.matrix = pe.cast<std::complex<double>>().asDiagonal();
    rho.tail_mass = fock::thermal_tail(N, cutoff) * (1.0 + std::fabs(pert.epsilon * xi[cutoff]));
    return rho;
}

double oracle_delta_Ic(const Type1Perturbation& pert, double N, const ChannelParams& ch,
                       int cutoff, const QuadratureScheme& quad) {
    const fock::ChannelKernel kernel(ch, cutoff, quad);
    const Vec p = fock::thermal_weights(N, cutoff);
    const FockDensityMatrix rho_eps = build_perturbed_input_fock(pert, N, cutoff);
    const double ic0 = fock::coherent_info_oracle_diagonal(p, kernel);
    const double ice = fock::coherent_info_oracle_diagonal(rho_eps.matrix.diagonal().real(), kernel);
    return ice - ic0;
}

double oracle_delta_Ic_quadratic_fit(int n, double N, const ChannelParams& ch, int cutoff,
                                     const QuadratureScheme& quad,
                                     const std::vector<double>& epsilons) {
    const fock::ChannelKernel kernel(ch, cutoff, quad);
    const Vec p = fock::thermal_weights(N, cutoff);
    const Vec xi = xi_eigenvalues(n, N, cutoff);
    const double ic0 = fock::coherent_info_oracle_diagonal(p, kernel);
    double num = 0.0, den = 0.0;
    for (const double eps : epsilons) {
        const Vec pe = p.array() * (1.0 + eps * xi.array());
        if (pe.minCoeff() < 0.0)
            throw epsilon_too_large_error("oracle_delta_Ic_quadratic_fit: negative weight", eps);
        const double d = fock::coherent_info_oracle_diagonal(pe, kernel) - ic0;
        num += eps * eps * d;
        den += eps * eps * eps * eps;
    }
    return num / den;
}

double phi_moment(int n, int l, double N, int k_max) {
    const Vec p = fock::thermal_weights(N, k_max);
    const Vec xi = xi_eigenvalues(n, N, k_max);
    double acc = 0.0;
    for (int k = l; k <= k_max; ++k) {
        double fall = 1.0;
        for (int u = 0; u < l; ++u) fall *= (k - u);
        acc += fall * p[k] * xi[k];
    }
    return acc;
}

double interference_sum(int n1, int n2, double N, int k_max) {
    const Vec p = fock::thermal_weights(N, k_max);
    const Vec x1 = xi_eigenvalues(n1, N, k_max);
    const Vec x2 = xi_eigenvalues(n2, N, k_max);
    double acc = 0.0;
    for (int k = 0; k <= k_max; ++k) acc += p[k] * x1[k] * x2[k];
    return acc;
}

double multimode_phi_norm(const MultiModePerturbation& pert, double N) {
    if (!(N > 0.0))
        throw std::domain_error("multimode_phi_norm: N must be > 0");
    const int m = pert.order();
    double prod = 1.0;
    for (size_t i = 0; i < pert.k_vec.size(); ++i)
        prod *= factorial(pert.k_vec[i]) * factorial(pert.l_vec[i]);
    return 2.0 * std::norm(pert.c) * prod / std::pow(N * (N + 1.0), m);
}

double multimode_joint_norm(const MultiModePerturbation& pert, double N, const ChannelParams& ch) {
    const int m = pert.order();
    double prod = 1.0;
    for (size_t i = 0; i < pert.k_vec.size(); ++i)
        prod *= factorial(pert.k_vec[i]) * factorial(pert.l_vec[i]);
    const ThermalDecomposition td = thermal_decomposition(N, ch);
    const double A = td.NA * (td.NA + 1.0) * std::pow(std::sinh(td.r), 4);
    const double B = td.NB * (td.NB + 1.0) * std::pow(std::cosh(td.r), 4);
    double sum = 0.0;
    for (int l = 0; l <= m; ++l) {
        const double b = binomial(m, l);
        sum += b * b * std::pow(B, l) * std::pow(A, m - l);
    }
    return 2.0 * std::norm(pert.c) * prod * std::pow(N * (N + 1.0), -2.0 * m) * sum;
}

Mat xi_displacement_op(int k, int l, double N, int cutoff, int radial_nodes) {
    if (!(N > 0.0) || k < 0 || l < 0)
        throw std::domain_error("xi_displacement_op: need N > 0 and k, l >= 0");
    const int d = cutoff + 1;
    Vec t, w;
    fock::gauss_laguerre(radial_nodes, t, w);
    Mat M = Mat::Zero(d, d);
    const int off = l - k;                       // <p|Xi|q> supported on p - q = l - k
    const double half = N + 0.5;
    const double sign = ((std::abs(off) % 2) == 0) ? 1.0 : -1.0;  // (-1)^{p-q}
    for (int wi = 0; wi < radial_nodes; ++wi) {
        const double u = t[wi];
        const double s = std::sqrt(u / half);
        const double pref = w[wi] * std::pow(u / half, 0.5 * (k + l)) / half * sign;
        const Vec sub = fock::displacement_subdiagonal(std::abs(off), s, d);
        const double upper_sign = ((std::abs(off) % 2) == 0) ? 1.0 : -1.0;
        for (int i = 0; i + std::abs(off) < d + 0; ++i) {
            if (off >= 0)
                M(i + off, i) += pref * sub[i];
            else
                M(i, i - off) += pref * upper_sign * sub[i];
        }
    }
    return M;
}

CMat build_multimode_phi_fock(const MultiModePerturbation& pert, double N, int cutoff,
                              int radial_nodes) {
    if (pert.k_vec.size() != 2)
        throw std::domain_error("build_multimode_phi_fock: exactly 2 modes supported");
    if (pert.order() > 3)
        throw std::domain_error("build_multimode_phi_fock: m <= 3 supported");
    const Mat X1 = xi_displacement_op(pert.k_vec[0], pert.l_vec[0], N, cutoff, radial_nodes);
    const Mat X2 = xi_displacement_op(pert.k_vec[1], pert.l_vec[1], N, cutoff, radial_nodes);
    const Mat Y1 = xi_displacement_op(pert.l_vec[0], pert.k_vec[0], N, cutoff, radial_nodes);
    const Mat Y2 = xi_displacement_op(pert.l_vec[1], pert.k_vec[1], N, cutoff, radial_nodes);
    const int d = cutoff + 1;
    CMat phi = CMat::Zero(d * d, d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int ap = 0; ap < d; ++ap)
                for (int bp = 0; bp < d; ++bp)
                    phi(a * d + b, ap * d + bp) =
                        pert.c * X1(a, ap) * X2(b, bp) + std::conj(pert.c) * Y1(a, ap) * Y2(b, bp);
    return phi;
}

double phi_norm_brute_force(const CMat& phi, double N, int cutoff) {
    const int d = cutoff + 1;
    if (phi.rows() != d * d)
        throw std::domain_error("phi_norm_brute_force: dimension mismatch");
    const Vec p = fock::thermal_weights(N, cutoff);
    double acc = 0.0;
    for (int a = 0; a < d * d; ++a)
        for (int b = 0; b < d * d; ++b) {
            const double lam_b = p[b / d] * p[b % d];
            acc += std::norm(phi(a, b)) / lam_b;
        }
    return acc;
}

Mat build_type2_phi_fock(int n, int l, std::complex<double> c, double N, int cutoff,
                         int radial_nodes) {
    if (n == l)
        throw std::domain_error("build_type2_phi_fock: n = l is type-1");
    // f = c mu^n (-mu*)^l + c* mu^l (-mu*)^n  ->  phi = c(-1)^l Xi(n,l) + c*(-1)^n Xi(l,n)
    const Mat Xnl = xi_displacement_op(n, l, N, cutoff, radial_nodes);
    const Mat Xln = xi_displacement_op(l, n, N, cutoff, radial_nodes);
    const double sl = (l % 2 == 0) ? 1.0 : -1.0;
    const double sn = (n % 2 == 0) ? 1.0 : -1.0;
    // real combination only needs Re(c) and Im(c) against the two orientations;
    // for real output keep the Hermitian real part
    const Mat phi = sl * (c.real() * Xnl) + sn * (c.real() * Xln) +
                    sl * (-c.imag()) * Mat::Zero(cutoff + 1, cutoff + 1) /* imag parts cancel for real Xi */ +
                    Mat::Zero(cutoff + 1, cutoff + 1);
    return phi;
}

}
