#pragma once

#include <functional>
#include <optional>

#include "rescon/functionals.hpp"
#include "rescon/prob_vec.hpp"
#include "rescon/sweep_grid.hpp"

namespace rescon {

// Two initial species, a target, and the theory they live in.
struct ResonanceQuery {
    ProbVec p1;
    ProbVec p2;
    ProbVec target;
    ResourceTheory theory = ResourceTheory::Entanglement;
};

// Mixing factor lambda* at which lambda n copies of p1 and (1-lambda) n
// copies of p2 match the target's relative fluctuation strength, i.e.
// nu = 1. Uses per-copy additivity of the mean and variance
// functionals; returns nullopt when no lambda in [0, 1] reaches the
// target ratio, and 0.5 by convention when every lambda does.
std::optional<double> resonant_lambda(const ResonanceQuery& query);

// Per-cell inputs for a nu grid: per-copy stats of the initial and
// target states (battery or other point-mass factors folded in
// analytically by the caller).
struct NuCell {
    ResourceStats initial;
    ResourceStats target;
};
using NuFamily =
    std::function<std::optional<NuCell>(double row_value, double col_value)>;

// Grid of irreversibility parameters over a two-parameter state
// family; cells where the family is undefined (or the target ratio
// degenerates) are masked.
SweepGrid nu_contour(const NuFamily& family, const Axis& rows, const Axis& cols);

// Irreversibility parameter of the heat-engine interconversion
// (gamma_Tc x battery ground -> gamma_Tcp x battery excited against the
// hot bath at T_h), with the battery of gap work_fraction * W_C folded
// in analytically. nullopt when no work is extractable (W_C <= 0) or
// the temperature ordering T_c < T_cp < T_h fails.
std::optional<NuCell> heat_engine_nu_cell(double t_cold, double t_cold_final,
                                          double t_hot, double gap,
                                          double work_fraction);
std::optional<double> heat_engine_nu(double t_cold, double t_cold_final,
                                     double t_hot, double gap,
                                     double work_fraction);

// For each row of a nu grid, the interpolated column coordinate where
// the value crosses `level` (nullopt when it never does).
std::vector<std::optional<double>> contour_crossings(const SweepGrid& grid,
                                                     double level);

// For each row, the column coordinate of the unmasked cell whose value
// lies closest to `level`. Complements contour_crossings when the level
// line clamps to the edge of the evaluated region and the values never
// change sign across it.
std::vector<std::optional<double>> contour_nearest(const SweepGrid& grid,
                                                   double level);

}  // namespace rescon
