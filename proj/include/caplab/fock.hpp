// fock.hpp — truncated Fock-space states: thermal construction, purification,
// entropy, two-mode squeezing, binary dump.

#pragma once

#include <Eigen/Dense>
#include <string>

#include "caplab/core_math.hpp"

namespace caplab::fock {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Truncated density matrix with per-mode cutoff K (dimension K+1 per mode)
// and the certified probability weight left above the cutoff.
struct FockDensityMatrix {
    int cutoff = 0;
    int modes = 1;
    CMat matrix;
    double tail_mass = 0.0;

    int dim() const { return modes == 1 ? cutoff + 1 : (cutoff + 1) * (cutoff + 1); }
    double trace() const { return matrix.trace().real(); }
    // Hermiticity deviation, trace deviation beyond tail_mass, most negative eigenvalue.
    void validate(double herm_tol = 1e-12, double trace_tol = 1e-10, double eig_floor = -1e-10) const;
};

// Smallest K with thermal tail (1-v) sum_{k>K} v^k = v^{K+1} below tail_tol, plus margin.
int auto_cutoff(double N, double tail_tol = 1e-12, int margin = 10);

// Thermal occupation weights (1-v) v^k, k = 0..K.
Vec thermal_weights(double N, int cutoff);
double thermal_tail(double N, int cutoff);

// Diagonal thermal state; throws cutoff_error (with a suggested K) if the
// tail exceeds tail_tol.
FockDensityMatrix thermal_fock(double N, int cutoff, double tail_tol = 1e-12);

// Schmidt-form purification sum_k sqrt(lambda_k) |kk>, as a two-mode vector
// indexed q*(K+1)+r.
Vec purify_thermal(double N, int cutoff, double tail_tol = 1e-12);

// -sum lambda log2 lambda over the eigenvalues; entries below the floor
// contribute 0 (truncation can produce spurious tiny negatives).
double von_neumann_entropy(const FockDensityMatrix& rho, double eig_floor = 1e-14);
double entropy_of_eigenvalues(const Vec& lam, double eig_floor = 1e-14);
double entropy_of_weights(const Vec& p, double eig_floor = 1e-14);

// Mean photon number of one mode (0-based) of a 1- or 2-mode state.
double mean_photons(const FockDensityMatrix& rho, int mode = 0);

// 1/2 ||A - B||_1 for Hermitian matrices of equal dimension.
double trace_distance(const CMat& A, const CMat& B);

// Two-mode squeezing S2(r) = exp[r(a^† b^† - ab)] on the truncated space.
// Exactly block-diagonal over sectors j = n_Q - n_R; blocks() returns the
// per-sector orthogonal factors, apply() acts on vectors / density matrices.
// The reported norm loss beyond `leak_budget` raises cutoff_error.
class TwoModeSqueezer {
public:
    TwoModeSqueezer(double r, int cutoff);

    const Mat& block(int j) const;            // sector j in [-K, K]
    CVec apply(const CVec& psi, double leak_budget = 1e-8) const;
    FockDensityMatrix apply(const FockDensityMatrix& rho, double leak_budget = 1e-8) const;

    double r() const { return r_; }

private:
    double r_;
    int cutoff_;
    std::vector<Mat> blocks_;                 // index j + cutoff
};

// Binary dump: 16-byte header (magic "FOCKDM01", u32 modes, u32 cutoff), then
// row-major complex pairs.  Debugging aid, not a stability-guaranteed format.
void save_fock(const FockDensityMatrix& rho, const std::string& path);
FockDensityMatrix load_fock(const std::string& path);

}
