// errors.hpp — error types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace caplab {

// N_n = 0 is the identity channel, not a noisy one; rejected separately so
// callers can distinguish it from a plain bad value.
class zero_noise_error : public std::domain_error {
public:
    zero_noise_error() : std::domain_error("noise_photons = 0: identity channel is outside the model") {}
};

// A radicand or eigenvalue went negative beyond rounding tolerance.
class physicality_error : public std::domain_error {
public:
    explicit physicality_error(const std::string& what) : std::domain_error(what) {}
};

// Requested cutoff cannot hold the state to the requested tail tolerance.
class cutoff_error : public std::runtime_error {
public:
    cutoff_error(const std::string& what, int suggested)
        : std::runtime_error(what), suggested_cutoff(suggested) {}
    int suggested_cutoff;
};

// Quadrature doubling certificate violated.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

// Perturbation strength would make an eigenvalue negative.
class epsilon_too_large_error : public std::domain_error {
public:
    epsilon_too_large_error(const std::string& what, double max_eps)
        : std::domain_error(what), max_epsilon(max_eps) {}
    double max_epsilon;
};

// Finite-difference step cannot fit inside the parameter domain.
class step_size_error : public std::domain_error {
public:
    explicit step_size_error(const std::string& what) : std::domain_error(what) {}
};

// Two independent constructions of the same state disagree beyond tolerance.
class inconsistency_error : public std::runtime_error {
public:
    explicit inconsistency_error(const std::string& what) : std::runtime_error(what) {}
};

}
