#pragma once

#include <cstdint>

#include "rescon/atom_dist.hpp"
#include "rescon/lorenz.hpp"

namespace rescon {

// Outcome of one interconversion instance: the optimal final
// distribution together with the fidelity it achieves against the
// target.
struct ConversionResult {
    AtomDist final;
    double fidelity = 0.0;
    double infidelity = 0.0;
    bool feasible_exact = false;
    // Probability the final state carries outside the target support;
    // for the heat engine this equals the battery-marginal infidelity.
    double mass_outside_target_support = 0.0;
};

// Final distribution maximizing fidelity with `target` over the set of
// distributions (thermo-)majorized by `initial`.
//
// The target's atoms, ratio-sorted, define cumulative points
// (X_k, Q_k); blocks between contact points of min_k L_initial(X_k)/Q_k
// are rescaled by a common factor, the Bhattacharyya overlap being
// sum_j sqrt(t_j) dQ_j. Mass the initial curve cannot deliver onto the
// target support is spread over the complement at the largest feasible
// ratio. The result is re-checked against the initial curve and its
// fidelity recomputed from the constructed atoms; disagreement beyond
// 1e-8 raises ConvergenceError.
ConversionResult optimal_final_state(const AtomDist& initial,
                                     const AtomDist& target);

// Largest m with optimal_final_state(initial^n, target^m).infidelity
// below epsilon, found by bisection over [0, ceil(1.5 R_inf n)] with a
// growth step; monotonicity of infidelity in m is asserted from the
// evaluations made and a linear scan is used as fallback when it fails.
// Returns m = 0 when even a single target copy is out of reach.
struct RateResult {
    std::int64_t copies = 0;
    double rate = 0.0;
};
RateResult max_rate(const ProbVec& initial_base, const ProbVec& target_base,
                    std::int64_t n, double epsilon,
                    double atom_cap = AtomDist::kDefaultAtomCap);

}  // namespace rescon
