#pragma once

#include <vector>

#include "rescon/prob_vec.hpp"

namespace rescon {

// Independent check of the interconversion solver on explicit small
// instances (dimension <= 6). Maximizes (sum_i sqrt(q_i x_i))^2 over
// the polytope of distributions thermo-majorized by `initial` (with
// reference weights `gibbs`, uniform when omitted) by conditional
// gradient iteration with away steps. Each linear subproblem is solved
// exactly by greedy allocation along the initial state's Lorenz curve.
// Iterates until the duality gap drops below 1e-10; throws
// IterationLimitError after 1e6 steps.
//
// This routine shares no code with optimal_final_state.
struct OracleResult {
    std::vector<double> final;
    double fidelity = 0.0;
};
OracleResult oracle_optimal_fidelity(const std::vector<double>& initial,
                                     const std::vector<double>& target,
                                     const std::vector<double>& gibbs = {});

}  // namespace rescon
