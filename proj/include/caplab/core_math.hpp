// core_math.hpp — scalar special functions and capacity formulas

#pragma once

#include "caplab/errors.hpp"

namespace caplab {

inline constexpr double kLn2 = 0.69314718055994530942;

// Additive Gaussian quantum channel: random displacement with complex-Gaussian
// amplitude of mean photon number N_n.  N_n > 0 enforced at construction.
struct ChannelParams {
    explicit ChannelParams(double nn);

    double noise_photons;                                     // N_n
    double v() const { return noise_photons / (noise_photons + 1.0); }  // v_n
};

// Bosonic entropy g(s) = (s+1) log2(s+1) - s log2 s, in bits.
// Continuous at 0 with g(0) = 0; evaluated cancellation-free for large s.
double bosonic_entropy(double s);

// Conjectured quantum capacity Q = max{0, -log2(e N_n)}, in bits.
double conjectured_capacity(const ChannelParams& ch);

// Exact binomial coefficient as a double (log-factorial accumulation).
double binomial(int n, int k);

// 1 - 2^{-2n} C(2n,n); lies in (0,1) and increases with n.
double central_binomial_bracket(int n);

}
