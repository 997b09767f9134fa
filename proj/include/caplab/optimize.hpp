// optimize.hpp — derivative probes and maximizers over input shape and
// energy allocation.

#pragma once

#include <vector>

#include "caplab/gaussian.hpp"

namespace caplab {

// Richardson-extrapolated finite difference of coherent_info_gaussian in x
// at fixed E (central in the interior, one-sided at the x = 1 boundary).
// step = 0 picks a scale-aware default.
double dIc_dx_numeric(double E, double x, const ChannelParams& ch, double step = 0.0);

struct OptimizeResult {
    double x_star;
    double ic_star;
};

// Golden-section search of I_c over x in [1/(4E^2), 1], refined to |dx| < 1e-8,
// ties broken toward larger x.  grid_points > 0 additionally scans a dense
// grid and keeps the better candidate (multimodality guard used in tests).
OptimizeResult optimize_x(double E, const ChannelParams& ch, int grid_points = 0);

// Maximize sum_i I_c(thermal N_i) subject to sum_i (N_i + 1/2) = total_E.
// Projected-gradient ascent from the equal split plus random Dirichlet
// restarts; returns per-mode energies E_i = N_i + 1/2.
std::vector<double> optimal_energy_split(double total_E, int n_modes, const ChannelParams& ch,
                                         int restarts = 8, unsigned seed = 12345);

}
