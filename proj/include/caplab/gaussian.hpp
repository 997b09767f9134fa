// gaussian.hpp — closed-form coherent information for Gaussian inputs:
// covariance map, symplectic quantities, thermal decomposition, the
// large-E derivative asymptotic and the two-mode squeezed thermal formula.

#pragma once

#include <cmath>

#include "caplab/core_math.hpp"

namespace caplab {

// Real 2x2 correlation matrix of a single-mode Gaussian state
// (first moments dropped; vacuum is a_qq = a_pp = 1/2, a_qp = 0).
struct SingleModeCovariance {
    SingleModeCovariance(double qq, double pp, double qp);

    // Thermal state with mean photon number N: ((N+1/2) I).
    static SingleModeCovariance thermal(double N);
    // Zero-mean state of energy E and shape x = det/E^2 (diagonal, squeezed).
    static SingleModeCovariance from_energy_shape(double E, double x);

    double a_qq, a_pp, a_qp;

    double energy() const { return 0.5 * (a_qq + a_pp); }          // E
    double det() const { return a_qq * a_pp - a_qp * a_qp; }
    double shape() const {                                         // x = det/E^2
        const double E = energy();
        return det() / (E * E);
    }
};

// d0, d1, d2, D_G of the symplectic spectra of the output and joint states.
struct SymplecticBreakdown {
    double d0, d1, d2, DG;  // d1 takes the + branch, so d1 >= d2
};

// (r, N_A, N_B, D) describing rho^{QR'} = S2(r)(rho_A x rho_B)S2(r)^dagger.
struct ThermalDecomposition {
    double r, NA, NB, D;
};

// Two-mode squeezed thermal input S2 applied to a thermal pair; the shape
// parameter of the formula is x = 1/cosh^2(r2), r2 = 0 is the product thermal.
struct TwoModeSqueezedThermalInput {
    TwoModeSqueezedThermalInput(double N_, double r2_);

    double N;             // per-mode thermal photon number before squeezing
    double r2;            // squeezing parameter, >= 0
    double total_energy;  // E of both modes: (2N+1) cosh(r2)

    double shape() const { const double c = std::cosh(r2); return 1.0 / (c * c); }
};

// chi' = chi * e^{-N_n |mu|^2}  =>  alpha' = alpha + N_n I.
SingleModeCovariance channel_on_covariance(const SingleModeCovariance& cov, const ChannelParams& ch);

// d0 = sqrt(N_n^2 + 2 N_n E + E^2 x), d_{1,2} = sqrt((N_n^2 + 2 N_n E + 1/2 +- N_n D_G)/2),
// D_G = sqrt((N_n + 2E)^2 + 1 - (2E)^2 x).
SymplecticBreakdown symplectic_breakdown(const SingleModeCovariance& cov, const ChannelParams& ch);

// I_c = g(d0 - 1/2) - g(d1 - 1/2) - g(d2 - 1/2); may be negative, no clamping.
double coherent_info_gaussian(const SingleModeCovariance& cov, const ChannelParams& ch);

// I_c = g(N + N_n) - g(N_A) - g(N_B) for a thermal input.
double coherent_info_thermal(double N, const ChannelParams& ch);

// tanh 2r = 2 sqrt(N(N+1)) / (2N + N_n + 1); N_{A,B} = (D +- N_n - 1)/2,
// D = sqrt(N_n^2 + 2(2N+1)N_n + 1).
ThermalDecomposition thermal_decomposition(double N, const ChannelParams& ch);

// Leading large-E term of dI_c/dx at fixed E, in bits:
// (1/(2 E x^2)) (1/(3 N_n) - 2 N_n) / ln 2.
double asymptotic_dIc_dx(double E, double x, const ChannelParams& ch);

// I_c = 2 max{0, g(d0-1/2) - g(d1-1/2) - g(d2-1/2)} at per-mode energy E/2
// and x = 1/cosh^2(r2).
double coherent_info_two_mode_squeezed(const TwoModeSqueezedThermalInput& input, const ChannelParams& ch);

}
