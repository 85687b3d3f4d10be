#pragma once

#include <cstdint>
#include <vector>

#include "rescon/convert.hpp"
#include "rescon/prob_vec.hpp"
#include "rescon/sweep_grid.hpp"

namespace rescon {

// Work-extraction sweep over initial and final working-body
// temperatures. FixedWork records the optimal infidelity while
// extracting a fixed fraction of the Carnot work per qubit; FixedError
// records the largest extractable fraction whose infidelity stays
// below a threshold.
struct HeatEngineSpec {
    enum class Mode {
        FixedWork,
        FixedError,
    };

    std::int64_t copies = 200;
    double t_hot = 10.0;
    double gap = 1.0;
    Axis t_cold_axis = Axis::linspace("T_c", 0.5, 5.0, 60);
    Axis t_cold_final_axis = Axis::linspace("T_c'", 0.5, 5.0, 60);
    Mode mode = Mode::FixedWork;
    double work_fraction = 0.95;     // FixedWork
    double error_threshold = 1e-3;   // FixedError
    // Measure work quality on the battery marginal instead of the full
    // joint state.
    bool battery_marginal = false;
    double atom_cap = AtomDist::kDefaultAtomCap;
};

SweepGrid heat_engine_sweep(const HeatEngineSpec& spec, unsigned jobs = 0);

// One conversion cell of the heat-engine model: n copies of
// gamma_Tc x |ground> into gamma_Tcp x |excited> with battery gap
// `work`, everything referenced against gamma_Th x gamma_battery.
ConversionResult heat_engine_conversion(double t_cold, double t_cold_final,
                                        double t_hot, double gap, double work,
                                        std::int64_t copies,
                                        double atom_cap = AtomDist::kDefaultAtomCap);

// Infidelity of converting lambda-mixed powers of (p1, p2) into
// iid_power(target, n), per (n, lambda). Cells whose lambda n is not an
// integer are masked.
SweepGrid lambda_sweep(const ProbVec& p1, const ProbVec& p2,
                       const ProbVec& target,
                       const std::vector<std::int64_t>& n_list,
                       const std::vector<double>& lambdas, unsigned jobs = 0,
                       double atom_cap = AtomDist::kDefaultAtomCap);

// Optimal conversion rate R = m/n at fixed infidelity threshold, per
// (initial state, n).
SweepGrid rate_sweep(const std::vector<ProbVec>& initials, const ProbVec& target,
                     const std::vector<std::int64_t>& n_list, double epsilon,
                     unsigned jobs = 0,
                     double atom_cap = AtomDist::kDefaultAtomCap);

}  // namespace rescon
