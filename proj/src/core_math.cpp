#include "caplab/core_math.hpp"

#include <cmath>

namespace caplab {

ChannelParams::ChannelParams(double nn) : noise_photons(nn) {
    if (!std::isfinite(nn) || nn < 0.0)
        throw std::domain_error("ChannelParams: noise_photons must be finite and >= 0");
    if (nn == 0.0)
        throw zero_noise_error();
}

double bosonic_entropy(double s) {
    if (!std::isfinite(s) || s < 0.0)
        throw std::domain_error("bosonic_entropy: s must be finite and >= 0");
    if (s < 1e-300)
        return (s + 1.0) * std::log1p(s) / kLn2;  // s log2 s underflows to 0
    if (s <= 1.0)
        return (s + 1.0) * std::log1p(s) / kLn2 - s * std::log2(s);
    // (s+1)log2(s+1) - s log2 s cancels badly for large s; regroup as
    // log2(s+1) + s log2(1 + 1/s).
    return std::log2(s + 1.0) + s * std::log1p(1.0 / s) / kLn2;
}

double conjectured_capacity(const ChannelParams& ch) {
    const double q = -std::log2(M_E * ch.noise_photons);
    return q > 0.0 ? q : 0.0;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k == 0 || k == n) return 1.0;
    const double lg = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    return std::round(std::exp(lg));
}

double central_binomial_bracket(int n) {
    if (n < 0) throw std::domain_error("central_binomial_bracket: n must be >= 0");
    // 2^{-2n} C(2n,n) in log space; exact rounding of C(2n,n) overflows past n~500
    const double lg = std::lgamma(2.0 * n + 1.0) - 2.0 * std::lgamma(n + 1.0) - 2.0 * n * kLn2;
    return 1.0 - std::exp(lg);
}

}
