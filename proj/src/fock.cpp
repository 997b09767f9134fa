#include "caplab/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "caplab/errors.hpp"

namespace caplab::fock {

void FockDensityMatrix::validate(double herm_tol, double trace_tol, double eig_floor) const {
    const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm > herm_tol)
        throw physicality_error("FockDensityMatrix: not Hermitian, deviation " + std::to_string(herm));
    const double tr_dev = std::fabs(trace() - 1.0);
    if (tr_dev > tail_mass + trace_tol)
        throw physicality_error("FockDensityMatrix: trace off by " + std::to_string(tr_dev) +
                                " beyond tail mass " + std::to_string(tail_mass));
    Eigen::SelfAdjointEigenSolver<CMat> es(matrix, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < eig_floor)
        throw physicality_error("FockDensityMatrix: eigenvalue " + std::to_string(min_eig) + " below floor");
}

int auto_cutoff(double N, double tail_tol, int margin) {
    if (!(N >= 0.0))
        throw std::domain_error("auto_cutoff: N must be >= 0");
    if (N == 0.0) return 1 + margin;
    const double v = N / (N + 1.0);
    // v^{K+1} < tail_tol
    const int K = static_cast<int>(std::ceil(std::log(tail_tol) / std::log(v))) - 1;
    return std::max(1, K) + margin;
}

Vec thermal_weights(double N, int cutoff) {
    const double v = N / (N + 1.0);
    Vec p(cutoff + 1);
    double w = 1.0 / (N + 1.0);
    for (int k = 0; k <= cutoff; ++k) {
        p[k] = w;
        w *= v;
    }
    return p;
}

double thermal_tail(double N, int cutoff) {
    const double v = N / (N + 1.0);
    return std::pow(v, cutoff + 1);
}

FockDensityMatrix thermal_fock(double N, int cutoff, double tail_tol) {
    if (!(N >= 0.0))
        throw std::domain_error("thermal_fock: N must be >= 0");
    if (cutoff < 1)
        throw std::domain_error("thermal_fock: cutoff must be >= 1");
    const double tail = thermal_tail(N, cutoff);
    if (tail > tail_tol)
        throw cutoff_error("thermal_fock: tail " + std::to_string(tail) + " above tolerance",
                           auto_cutoff(N, tail_tol));
    FockDensityMatrix rho;
    rho.cutoff = cutoff;
    rho.modes = 1;
    rho.tail_mass = tail;
    rho.matrix = thermal_weights(N, cutoff).cast<std::complex<double>>().asDiagonal();
    return rho;
}

Vec purify_thermal(double N, int cutoff, double tail_tol) {
    const double tail = thermal_tail(N, cutoff);
    if (tail > tail_tol)
        throw cutoff_error("purify_thermal: tail " + std::to_string(tail) + " above tolerance",
                           auto_cutoff(N, tail_tol));
    const Vec p = thermal_weights(N, cutoff);
    const int d = cutoff + 1;
    Vec psi = Vec::Zero(d * d);
    for (int k = 0; k < d; ++k) psi[k * d + k] = std::sqrt(p[k]);
    return psi;
}

double entropy_of_eigenvalues(const Vec& lam, double eig_floor) {
    double s = 0.0;
    for (int i = 0; i < lam.size(); ++i)
        if (lam[i] > eig_floor) s -= lam[i] * std::log2(lam[i]);
    return s;
}

double entropy_of_weights(const Vec& p, double eig_floor) {
    return entropy_of_eigenvalues(p, eig_floor);
}

double von_neumann_entropy(const FockDensityMatrix& rho, double eig_floor) {
    Eigen::SelfAdjointEigenSolver<CMat> es(rho.matrix, Eigen::EigenvaluesOnly);
    return entropy_of_eigenvalues(es.eigenvalues(), eig_floor);
}

double mean_photons(const FockDensityMatrix& rho, int mode) {
    const int d = rho.cutoff + 1;
    double n = 0.0;
    if (rho.modes == 1) {
        for (int k = 0; k < d; ++k) n += k * rho.matrix(k, k).real();
        return n;
    }
    for (int q = 0; q < d; ++q)
        for (int r = 0; r < d; ++r) {
            const int idx = q * d + r;
            n += (mode == 0 ? q : r) * rho.matrix(idx, idx).real();
        }
    return n;
}

double trace_distance(const CMat& A, const CMat& B) {
    Eigen::SelfAdjointEigenSolver<CMat> es(A - B, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

TwoModeSqueezer::TwoModeSqueezer(double r, int cutoff) : r_(r), cutoff_(cutoff) {
    if (std::fabs(r) > 3.0)
        throw std::domain_error("TwoModeSqueezer: |r| > 3 leaks too much at workable cutoffs");
    blocks_.resize(2 * cutoff + 1);
    for (int j = -cutoff; j <= cutoff; ++j) {
        const int nj = cutoff + 1 - std::abs(j);
        Mat G = Mat::Zero(nj, nj);
        for (int i = 0; i + 1 < nj; ++i) {
            const int q = (j >= 0) ? i + j : i;       // mode-Q occupation
            const int rr = (j >= 0) ? i : i - j;      // mode-R occupation
            const double c = std::sqrt((q + 1.0) * (rr + 1.0));
            G(i + 1, i) = c;    // a^† b^†
            G(i, i + 1) = -c;   // -ab
        }
        blocks_[j + cutoff] = (r * G).exp();
    }
}

const Mat& TwoModeSqueezer::block(int j) const {
    return blocks_[j + cutoff_];
}

CVec TwoModeSqueezer::apply(const CVec& psi, double leak_budget) const {
    const int d = cutoff_ + 1;
    if (psi.size() != d * d)
        throw std::domain_error("TwoModeSqueezer::apply: dimension mismatch");
    CVec out = CVec::Zero(d * d);
    for (int j = -cutoff_; j <= cutoff_; ++j) {
        const Mat& E = block(j);
        const int nj = static_cast<int>(E.rows());
        CVec seg(nj);
        for (int i = 0; i < nj; ++i) {
            const int q = (j >= 0) ? i + j : i;
            const int rr = (j >= 0) ? i : i - j;
            seg[i] = psi[q * d + rr];
        }
        CVec res = E * seg;
        for (int i = 0; i < nj; ++i) {
            const int q = (j >= 0) ? i + j : i;
            const int rr = (j >= 0) ? i : i - j;
            out[q * d + rr] = res[i];
        }
    }
    const double loss = std::fabs(psi.squaredNorm() - out.squaredNorm());
    if (loss > leak_budget)
        throw cutoff_error("TwoModeSqueezer: norm loss " + std::to_string(loss) + " above budget",
                           cutoff_ + cutoff_ / 2);
    return out;
}

FockDensityMatrix TwoModeSqueezer::apply(const FockDensityMatrix& rho, double leak_budget) const {
    if (rho.modes != 2 || rho.cutoff != cutoff_)
        throw std::domain_error("TwoModeSqueezer::apply: need a two-mode state at the same cutoff");
    const int d = cutoff_ + 1;
    // assemble the dense unitary from the sector blocks (small-K use only)
    CMat S = CMat::Zero(d * d, d * d);
    for (int j = -cutoff_; j <= cutoff_; ++j) {
        const Mat& E = block(j);
        const int nj = static_cast<int>(E.rows());
        for (int a = 0; a < nj; ++a)
            for (int b = 0; b < nj; ++b) {
                const int qa = (j >= 0) ? a + j : a;
                const int ra = (j >= 0) ? a : a - j;
                const int qb = (j >= 0) ? b + j : b;
                const int rb = (j >= 0) ? b : b - j;
                S(qa * d + ra, qb * d + rb) = E(a, b);
            }
    }
    FockDensityMatrix out;
    out.cutoff = cutoff_;
    out.modes = 2;
    out.matrix = S * rho.matrix * S.adjoint();
    const double loss = std::fabs(rho.trace() - out.matrix.trace().real());
    out.tail_mass = rho.tail_mass + loss;
    if (loss > leak_budget)
        throw cutoff_error("TwoModeSqueezer: trace loss " + std::to_string(loss) + " above budget",
                           cutoff_ + cutoff_ / 2);
    return out;
}

void save_fock(const FockDensityMatrix& rho, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("save_fock: cannot open " + path);
    out.write("FOCKDM01", 8);
    const std::uint32_t modes = static_cast<std::uint32_t>(rho.modes);
    const std::uint32_t cutoff = static_cast<std::uint32_t>(rho.cutoff);
    out.write(reinterpret_cast<const char*>(&modes), 4);
    out.write(reinterpret_cast<const char*>(&cutoff), 4);
    const int n = rho.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double re = rho.matrix(i, j).real(), im = rho.matrix(i, j).imag();
            out.write(reinterpret_cast<const char*>(&re), 8);
            out.write(reinterpret_cast<const char*>(&im), 8);
        }
    if (!out)
        throw std::runtime_error("save_fock: write failed on " + path);
}

FockDensityMatrix load_fock(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("load_fock: cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, "FOCKDM01", 8) != 0)
        throw std::runtime_error("load_fock: bad magic in " + path);
    std::uint32_t modes = 0, cutoff = 0;
    in.read(reinterpret_cast<char*>(&modes), 4);
    in.read(reinterpret_cast<char*>(&cutoff), 4);
    if (!in || (modes != 1 && modes != 2) || cutoff < 1)
        throw std::runtime_error("load_fock: bad header in " + path);
    FockDensityMatrix rho;
    rho.modes = static_cast<int>(modes);
    rho.cutoff = static_cast<int>(cutoff);
    const int n = rho.dim();
    rho.matrix.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double re = 0, im = 0;
            in.read(reinterpret_cast<char*>(&re), 8);
            in.read(reinterpret_cast<char*>(&im), 8);
            rho.matrix(i, j) = {re, im};
        }
    if (!in)
        throw std::runtime_error("load_fock: truncated file " + path);
    return rho;
}

}
