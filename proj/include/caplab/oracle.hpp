// oracle.hpp — brute-force verification layer: the joint output state
// rho^{QR'} built two independent ways, coherent information from truncated
// Fock space, and numerical checks of the operator lemmas.

#pragma once

#include <vector>

#include "caplab/channel.hpp"
#include "caplab/gaussian.hpp"

namespace caplab::fock {

// Two-mode state that is block-diagonal over sectors j = n_Q - n_R
// (the case for every joint output of a diagonal input).  Within sector j the
// basis is |i + max(j,0), i + max(-j,0)> for i = 0..K-|j|.
struct TwoModeBlockState {
    int cutoff = 0;
    std::vector<Mat> blocks;  // index j + cutoff

    const Mat& block(int j) const { return blocks[j + cutoff]; }
    double trace() const;
    double entropy(double eig_floor = 1e-14) const;
    CMat to_dense() const;  // small-K debugging only
};

double trace_distance(const TwoModeBlockState& a, const TwoModeBlockState& b);

// Path (a): (E ⊗ I)(|psi><psi|) for |psi> = sum_r c_r |rr> via Gram factors.
TwoModeBlockState joint_output_via_channel(const Vec& c, const ChannelKernel& kernel);

// Path (b): S2(r)(rho_A ⊗ rho_B)S2(r)^† from the thermal decomposition.
TwoModeBlockState joint_output_direct(double N, const ChannelParams& ch, int cutoff);

struct JointOutputResult {
    TwoModeBlockState state;      // path (a)
    double construction_gap;      // trace distance between paths (a) and (b)
    double entropy;               // of path (a)
};

// Builds both constructions and cross-checks them; a gap above agreement_tol
// raises inconsistency_error (a test-failure signal, not user error).
JointOutputResult joint_output_state(double N, const ChannelParams& ch, int cutoff,
                                     const QuadratureScheme& quad, double agreement_tol = 1e-6);

// I_c = S(E(rho)) - S((E ⊗ I)(purification)) for a diagonal input given by
// its weights; the fast path behind every thermal / type-1-perturbed check.
double coherent_info_oracle_diagonal(const Vec& p, const ChannelKernel& kernel,
                                     double eig_floor = 1e-14);

// General inputs: 1-mode states are purified by eigendecomposition; 2-mode
// states are rotated by the 50:50 beam splitter (the additive-noise pair is
// covariant under passive rotations), required to factorize, and handled as
// two 1-mode problems.  Input trace deficit beyond 1e-10 is rejected.
double coherent_info_oracle(const FockDensityMatrix& rho, const ChannelParams& ch,
                            const QuadratureScheme& quad);

// Specialized entry for the two-mode squeezed thermal family: builds the two
// beam-splitter modes directly as squeezed thermal states.
double coherent_info_oracle(const TwoModeSqueezedThermalInput& input, const ChannelParams& ch,
                            int cutoff, const QuadratureScheme& quad);

// Single-mode squeezer exp[(z/2)(a^†2 - a^2)] on the truncated space.
Mat single_mode_squeezer(double z, int cutoff);

// Fock matrix of the two-mode squeezed thermal input with shape
// x = 1/cosh^2(r2) (squeeze generator argument r2/2; see TwoModeSqueezer).
FockDensityMatrix two_mode_squeezed_thermal_fock(double N, double r2, int cutoff);

// 50:50 beam splitter exp[(pi/4)(a^† b - a b^†)]; number-conserving, so
// exactly unitary on the truncated space.
Mat beam_splitter_50_50(int cutoff);

// Lemma 1: (E ⊗ I)(a^{†k} rho^{QR} a^m)      = v^{-(k+m)/2} b^k rho^{QR'} b^{†m}
// Lemma 2: (E ⊗ I)(a^k    rho^{QR} a^{†m})   = v^{+(k+m)/2} b^{†k} rho^{QR'} b^m
// Entrywise max deviation on the subspace with total photon number
// <= cutoff - margin; margin must be >= k + m + 4.
double verify_lemma(int which, int k, int m, double N, const ChannelParams& ch,
                    int cutoff, const QuadratureScheme& quad, int margin = 10);

// Lemma 3 on the thermal diagonal:
//   a^{†j} a^j rho = N^j     sum_i (j!/i!) C(j,i) (N+1)^i d^i rho/dN^i
//   a^j a^{†j} rho = (N+1)^j sum_i (j!/i!) C(j,i) N^i     d^i rho/dN^i
// Max deviation over diagonal entries on the safe subspace, both identities.
double verify_lemma3(int j, double N, int cutoff, int margin = 10);

}
