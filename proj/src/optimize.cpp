#include "caplab/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace caplab {

namespace {

double ic_at(double E, double x, const ChannelParams& ch) {
    return coherent_info_gaussian(SingleModeCovariance::from_energy_shape(E, x), ch);
}

// d g(s)/ds = log2((s+1)/s)
double g_prime(double s) {
    return std::log1p(1.0 / s) / kLn2;
}

// d I_c(thermal N)/dN
double ic_thermal_prime(double N, const ChannelParams& ch) {
    const double Nn = ch.noise_photons;
    const ThermalDecomposition td = thermal_decomposition(N, ch);
    const double dD = 2.0 * Nn / td.D;           // dD/dN
    const double dNA = 0.5 * dD, dNB = 0.5 * dD;
    double grad = g_prime(N + Nn);
    if (td.NA > 0.0) grad -= g_prime(td.NA) * dNA;
    if (td.NB > 0.0) grad -= g_prime(td.NB) * dNB;
    return grad;
}

}  // namespace

double dIc_dx_numeric(double E, double x, const ChannelParams& ch, double step) {
    if (!(E >= 0.5))
        throw std::domain_error("dIc_dx_numeric: E must be >= 1/2");
    const double xmin = 1.0 / (4.0 * E * E);
    if (!(x > xmin) || !(x <= 1.0))
        throw std::domain_error("dIc_dx_numeric: x outside (1/(4E^2), 1]");
    double h = step > 0.0 ? step : 1e-3 * std::min(x, 1.0);
    if (x >= 1.0) {
        // one-sided backward, second order, Richardson over h and h/2
        if (x - 2.0 * h <= xmin)
            throw step_size_error("dIc_dx_numeric: step does not fit inside the x domain");
        auto d1 = [&](double hh) {
            return (3.0 * ic_at(E, x, ch) - 4.0 * ic_at(E, x - hh, ch) + ic_at(E, x - 2.0 * hh, ch)) / (2.0 * hh);
        };
        return (4.0 * d1(0.5 * h) - d1(h)) / 3.0;
    }
    h = std::min(h, 0.5 * std::min(1.0 - x, x - xmin));
    if (h <= 0.0 || x + h > 1.0 || x - h <= xmin)
        throw step_size_error("dIc_dx_numeric: step does not fit inside the x domain");
    auto d1 = [&](double hh) {
        return (ic_at(E, x + hh, ch) - ic_at(E, x - hh, ch)) / (2.0 * hh);
    };
    return (4.0 * d1(0.5 * h) - d1(h)) / 3.0;
}

OptimizeResult optimize_x(double E, const ChannelParams& ch, int grid_points) {
    if (!(E >= 0.5))
        throw std::domain_error("optimize_x: E must be >= 1/2");
    const double xmin = 1.0 / (4.0 * E * E);
    double lo = xmin, hi = 1.0;
    if (hi - lo < 1e-15)  // minimal energy: only the vacuum fits
        return {1.0, std::max(0.0, ic_at(E, 1.0, ch))};

    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - invphi * (hi - lo);
    double d = lo + invphi * (hi - lo);
    double fc = ic_at(E, c, ch), fd = ic_at(E, d, ch);
    while (hi - lo > 1e-8) {
        if (fc < fd) {  // maximum in [c, hi]
            lo = c; c = d; fc = fd;
            d = lo + invphi * (hi - lo);
            fd = ic_at(E, d, ch);
        } else {
            hi = d; d = c; fd = fc;
            c = hi - invphi * (hi - lo);
            fc = ic_at(E, c, ch);
        }
    }
    double x_star = 0.5 * (lo + hi);
    double f_star = ic_at(E, x_star, ch);

    if (grid_points > 1) {
        for (int i = 0; i < grid_points; ++i) {
            const double xg = xmin + (1.0 - xmin) * (double(i) / (grid_points - 1));
            const double fg = ic_at(E, xg, ch);
            if (fg > f_star + 1e-14) { f_star = fg; x_star = xg; }
        }
    }
    // ties toward larger x; the boundary is always a candidate
    const double f1 = ic_at(E, 1.0, ch);
    if (f1 >= f_star - 1e-12 * std::max(1.0, std::fabs(f_star))) {
        x_star = 1.0;
        f_star = f1;
    }
    return {x_star, f_star};
}

std::vector<double> optimal_energy_split(double total_E, int n_modes, const ChannelParams& ch,
                                         int restarts, unsigned seed) {
    if (n_modes < 2)
        throw std::domain_error("optimal_energy_split: need n_modes >= 2");
    if (!(total_E >= 0.5 * n_modes))
        throw std::domain_error("optimal_energy_split: total_E below the vacuum energy of the modes");

    const double budget = total_E - 0.5 * n_modes;  // photons to distribute
    auto objective = [&](const std::vector<double>& N) {
        double s = 0.0;
        for (double Ni : N) s += coherent_info_thermal(Ni, ch);
        return s;
    };

    auto ascend = [&](std::vector<double> N) {
        double f = objective(N);
        for (int it = 0; it < 2000; ++it) {
            std::vector<double> grad(n_modes);
            double mean = 0.0;
            for (int i = 0; i < n_modes; ++i) {
                grad[i] = ic_thermal_prime(N[i], ch);
                mean += grad[i];
            }
            mean /= n_modes;
            double gmax = 0.0;
            for (int i = 0; i < n_modes; ++i) {
                grad[i] -= mean;  // project onto sum(dN) = 0
                // at the N=0 face only inward components are admissible
                if (N[i] <= 0.0 && grad[i] < 0.0) grad[i] = 0.0;
                gmax = std::max(gmax, std::fabs(grad[i]));
            }
            if (gmax < 1e-10) break;
            double stepsize = 1.0;
            bool improved = false;
            for (int back = 0; back < 60; ++back) {
                std::vector<double> Nt(n_modes);
                double moved = 0.0;
                for (int i = 0; i < n_modes; ++i) {
                    Nt[i] = std::max(0.0, N[i] + stepsize * grad[i]);
                    moved += Nt[i];
                }
                // renormalize onto the photon budget after clipping
                if (moved > 0.0) {
                    const double scale = budget / moved;
                    for (double& Ni : Nt) Ni *= scale;
                } else {
                    for (double& Ni : Nt) Ni = budget / n_modes;
                }
                const double ft = objective(Nt);
                if (ft > f + 1e-15) {
                    N = Nt; f = ft; improved = true;
                    break;
                }
                stepsize *= 0.5;
            }
            if (!improved) break;
        }
        return std::make_pair(N, f);
    };

    // equal split first, then random Dirichlet starts; best wins, ties to equal
    std::vector<double> best_N(n_modes, budget / n_modes);
    double best_f;
    std::tie(best_N, best_f) = ascend(best_N);

    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    for (int rnd = 0; rnd < restarts; ++rnd) {
        std::vector<double> N0(n_modes);
        double s = 0.0;
        for (double& Ni : N0) { Ni = expo(rng); s += Ni; }
        for (double& Ni : N0) Ni *= budget / s;
        auto [N, f] = ascend(N0);
        if (f > best_f + 1e-12) { best_f = f; best_N = N; }
    }

    std::vector<double> energies(n_modes);
    for (int i = 0; i < n_modes; ++i) energies[i] = best_N[i] + 0.5;
    return energies;
}

}
