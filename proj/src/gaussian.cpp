#include "caplab/gaussian.hpp"

#include <cmath>
#include <string>

namespace caplab {

namespace {

constexpr double kDetTol = 1e-12;
constexpr double kRadicandTol = 1e-12;

// Eqs. (5)-(6) radicands can dip ~-1e-14 from rounding: clamp small
// negatives to 0, reject anything genuinely negative.
double checked_sqrt(double radicand, const char* label) {
    if (radicand < 0.0) {
        if (radicand < -kRadicandTol)
            throw physicality_error(std::string(label) + ": negative radicand " + std::to_string(radicand));
        radicand = 0.0;
    }
    return std::sqrt(radicand);
}

}  // namespace

SingleModeCovariance::SingleModeCovariance(double qq, double pp, double qp)
    : a_qq(qq), a_pp(pp), a_qp(qp) {
    if (!std::isfinite(qq) || !std::isfinite(pp) || !std::isfinite(qp))
        throw std::domain_error("SingleModeCovariance: entries must be finite");
    if (qq <= 0.0 || pp <= 0.0)
        throw physicality_error("SingleModeCovariance: diagonal entries must be positive");
    if (det() < 0.25 - kDetTol)
        throw physicality_error("SingleModeCovariance: det < 1/4 violates the uncertainty bound");
}

SingleModeCovariance SingleModeCovariance::thermal(double N) {
    if (!(N >= 0.0))
        throw std::domain_error("SingleModeCovariance::thermal: N must be >= 0");
    return {N + 0.5, N + 0.5, 0.0};
}

SingleModeCovariance SingleModeCovariance::from_energy_shape(double E, double x) {
    if (!(E >= 0.5))
        throw std::domain_error("from_energy_shape: E must be >= 1/2");
    const double xmin = 1.0 / (4.0 * E * E);
    if (x < xmin - kDetTol || x > 1.0 + kDetTol)
        throw physicality_error("from_energy_shape: x outside [1/(4E^2), 1]");
    const double x_cl = std::min(std::max(x, xmin), 1.0);
    // diagonal representative: a_qq a_pp = E^2 x, a_qq + a_pp = 2E
    const double root = std::sqrt(std::max(0.0, 1.0 - x_cl));
    return {E * (1.0 + root), E * (1.0 - root), 0.0};
}

TwoModeSqueezedThermalInput::TwoModeSqueezedThermalInput(double N_, double r2_)
    : N(N_), r2(r2_), total_energy((2.0 * N_ + 1.0) * std::cosh(r2_)) {
    if (!(N_ >= 0.0) || !(r2_ >= 0.0))
        throw std::domain_error("TwoModeSqueezedThermalInput: need N >= 0 and r2 >= 0");
}

SingleModeCovariance channel_on_covariance(const SingleModeCovariance& cov, const ChannelParams& ch) {
    return {cov.a_qq + ch.noise_photons, cov.a_pp + ch.noise_photons, cov.a_qp};
}

SymplecticBreakdown symplectic_breakdown(const SingleModeCovariance& cov, const ChannelParams& ch) {
    const double E = cov.energy();
    const double x = cov.shape();
    const double Nn = ch.noise_photons;
    SymplecticBreakdown b;
    b.d0 = checked_sqrt(Nn * Nn + 2.0 * Nn * E + E * E * x, "d0");
    b.DG = checked_sqrt((Nn + 2.0 * E) * (Nn + 2.0 * E) + 1.0 - 4.0 * E * E * x, "DG");
    const double base = Nn * Nn + 2.0 * Nn * E + 0.5;
    b.d1 = checked_sqrt(0.5 * (base + Nn * b.DG), "d1");
    b.d2 = checked_sqrt(0.5 * (base - Nn * b.DG), "d2");
    return b;
}

double coherent_info_gaussian(const SingleModeCovariance& cov, const ChannelParams& ch) {
    const SymplecticBreakdown b = symplectic_breakdown(cov, ch);
    return bosonic_entropy(b.d0 - 0.5) - bosonic_entropy(b.d1 - 0.5) - bosonic_entropy(b.d2 - 0.5);
}

double coherent_info_thermal(double N, const ChannelParams& ch) {
    const ThermalDecomposition td = thermal_decomposition(N, ch);
    return bosonic_entropy(N + ch.noise_photons) - bosonic_entropy(td.NA) - bosonic_entropy(td.NB);
}

ThermalDecomposition thermal_decomposition(double N, const ChannelParams& ch) {
    if (!(N >= 0.0))
        throw std::domain_error("thermal_decomposition: N must be >= 0");
    const double Nn = ch.noise_photons;
    ThermalDecomposition td;
    td.D = std::sqrt(Nn * Nn + 2.0 * (2.0 * N + 1.0) * Nn + 1.0);
    td.NA = 0.5 * (td.D + Nn - 1.0);
    td.NB = 0.5 * (td.D - Nn - 1.0);
    if (td.NB < 0.0) td.NB = 0.0;  // N = 0 gives exactly 0 up to rounding
    if (td.NA < 0.0) td.NA = 0.0;
    td.r = 0.5 * std::atanh(2.0 * std::sqrt(N * (N + 1.0)) / (2.0 * N + Nn + 1.0));
    return td;
}

double asymptotic_dIc_dx(double E, double x, const ChannelParams& ch) {
    if (!(E > 0.0) || !(x > 0.0))
        throw std::domain_error("asymptotic_dIc_dx: need E > 0 and x > 0");
    const double Nn = ch.noise_photons;
    return (1.0 / (2.0 * E * x * x)) * (1.0 / (3.0 * Nn) - 2.0 * Nn) / kLn2;
}

double coherent_info_two_mode_squeezed(const TwoModeSqueezedThermalInput& input, const ChannelParams& ch) {
    const double E_half = 0.5 * input.total_energy;  // per-mode energy E/2
    const SingleModeCovariance cov = SingleModeCovariance::from_energy_shape(E_half, input.shape());
    const double ic1 = coherent_info_gaussian(cov, ch);
    return 2.0 * std::max(0.0, ic1);
}

}
