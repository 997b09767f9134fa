// perturbation.hpp — first-order non-Gaussian perturbations of thermal
// inputs: eigenvalue shifts, second-order entropy coefficients, multimode
// (k,l) closed forms, and Fock-space builders for oracle comparison.

#pragma once

#include <complex>
#include <vector>

#include "caplab/channel.hpp"
#include "caplab/gaussian.hpp"

namespace caplab::pert {

using fock::CMat;
using fock::FockDensityMatrix;
using fock::Mat;
using fock::QuadratureScheme;
using fock::Vec;

// Type-1 perturbation of the characteristic function: chi -> chi(1 + eps |mu|^{2n}).
// n = 1 is Gaussian-type (permitted but flagged).
struct Type1Perturbation {
    Type1Perturbation(int n_, double epsilon_);

    int n;
    double epsilon;
    bool gaussian_type() const { return n == 1; }
};

// Multimode (k,l) perturbation c Prod mu_i^{k_i} mu_i*^{l_i} + c.c. with
// sum k = sum l = m (first-order balance) and k != l.
struct MultiModePerturbation {
    MultiModePerturbation(std::vector<int> k, std::vector<int> l, std::complex<double> c_);

    std::vector<int> k_vec, l_vec;
    std::complex<double> c;
    int order() const;  // m
};

// The three second-order entropy coefficients and the resulting Delta I_c.
struct CorrectionBreakdown {
    double input_coeff;             // sum phi_k^2/lambda_k = (1-v)^n N^-n (n!)^2
    double output_coeff;            // (n!)^2 / [N'(N'+1)]^n
    double joint_coeff;             // (n!)^2 N^-2n (N+1)^-2n sum_j C(n,j)^2 B^j A^{n-j}
    double delta_Ic_second_order;   // -(output_coeff - joint_coeff)/(2 ln 2), per unit eps^2, bits
};

// xi_k = (1-v)^n sum_{j<=min(n,k)} (-1)^j n! C(n,j) C(k,j) N^-j, k = 0..k_max.
Vec xi_eigenvalues(int n, double N, int k_max);

// Largest admissible |epsilon| keeping all lambda_k(1 + eps xi_k) >= 0 up to k_max.
double max_epsilon(int n, double N, int k_max);

CorrectionBreakdown correction_breakdown(const Type1Perturbation& pert, double N,
                                         const ChannelParams& ch);

// Eq.-limit coefficient -(n!)^2 N^-2n [1 - 2^{-2n} C(2n,n)]/(2 ln 2), per unit
// eps^2, bits; strictly negative for all n >= 1.
double delta_Ic_limit(int n, double N);

// Diagonal state lambda_k (1 + eps xi_k); rejects eps beyond half the
// admissible bound, reporting the bound.
FockDensityMatrix build_perturbed_input_fock(const Type1Perturbation& pert, double N, int cutoff);

// I_c(rho_eps) - I_c(rho) straight from the Fock oracle.
double oracle_delta_Ic(const Type1Perturbation& pert, double N, const ChannelParams& ch,
                       int cutoff, const QuadratureScheme& quad);

// Least-squares coefficient of Delta I_c = c2 eps^2 over the given strengths.
double oracle_delta_Ic_quadratic_fit(int n, double N, const ChannelParams& ch, int cutoff,
                                     const QuadratureScheme& quad,
                                     const std::vector<double>& epsilons);

// Tr(a^{†l} a^l phi) for the type-1 phi; vanishes for l < n.
double phi_moment(int n, int l, double N, int k_max);

// Interference sum_k phi1_k phi2_k / lambda_k between orders n1 != n2; zero.
double interference_sum(int n1, int n2, double N, int k_max);

// Tr(phi^2 / rho^{(x)n}) = 2|c|^2 Prod(k_i! l_i!) / [N(N+1)]^m.
double multimode_phi_norm(const MultiModePerturbation& pert, double N);

// sum Tr[(M+M^†)/2]^2/lambda = 2|c|^2 Prod(k_i! l_i!)/[N(N+1)]^{2m}
//                              * sum_l C(m,l)^2 B^l A^{m-l}.
double multimode_joint_norm(const MultiModePerturbation& pert, double N, const ChannelParams& ch);

// Single-mode generating-function factor Xi(k,l) = int (d^2 mu/pi)
// e^{-(N+1/2)|mu|^2} mu^k mu*^l D(-mu); supported on <p|..|q> with p-q = l-k.
Mat xi_displacement_op(int k, int l, double N, int cutoff, int radial_nodes = 64);

// Quadrature-built two-mode phi = c Xi(k1,l1) x Xi(k2,l2) + h.c. (Hermitian,
// traceless, conserves total photon number).
CMat build_multimode_phi_fock(const MultiModePerturbation& pert, double N, int cutoff,
                              int radial_nodes = 64);

// Tr(X^2 / rho^{(x)2}) for a two-mode operator against the product thermal.
double phi_norm_brute_force(const CMat& phi, double N, int cutoff);

// Type-2 single-mode perturbation c mu^n (-mu*)^l + c.c. (n != l): built only
// to check that its first-order eigenvalue shift vanishes (no analytics).
Mat build_type2_phi_fock(int n, int l, std::complex<double> c, double N, int cutoff,
                         int radial_nodes = 64);

}
