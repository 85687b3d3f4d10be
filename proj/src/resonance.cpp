#include "rescon/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rescon {

std::optional<double> resonant_lambda(const ResonanceQuery& query) {
    const ResourceStats s1 = resource_stats(query.p1, query.theory);
    const ResourceStats s2 = resource_stats(query.p2, query.theory);
    const ResourceStats st = resource_stats(query.target, query.theory);
    if (st.mean <= 0.0 || st.variance <= 0.0) {
        throw DegenerateTargetError("target V/H ratio undefined");
    }
    const double c = st.variance / st.mean;

    // Per-copy additivity: solve
    //   lambda V1 + (1 - lambda) V2 = c (lambda H1 + (1 - lambda) H2).
    const double num = c * s2.mean - s2.variance;
    const double den = (s1.variance - s2.variance) - c * (s1.mean - s2.mean);
    if (std::abs(den) < 1e-14) {
        if (std::abs(num) < 1e-12) {
            return 0.5;  // every lambda is resonant
        }
        return std::nullopt;
    }
    const double lambda = num / den;
    if (lambda < -1e-12 || lambda > 1.0 + 1e-12) {
        return std::nullopt;
    }
    return std::clamp(lambda, 0.0, 1.0);
}

SweepGrid nu_contour(const NuFamily& family, const Axis& rows, const Axis& cols) {
    SweepGrid grid(rows, cols);
    for (std::size_t i = 0; i < grid.row_count(); ++i) {
        for (std::size_t j = 0; j < grid.col_count(); ++j) {
            const auto cell = family(rows.values[i], cols.values[j]);
            if (!cell) {
                grid.mask(i, j, "undefined");
                continue;
            }
            if (cell->target.mean <= 0.0 || cell->target.variance <= 0.0 ||
                cell->initial.mean <= 0.0) {
                grid.mask(i, j, "degenerate");
                continue;
            }
            grid.set(i, j, (cell->initial.variance / cell->initial.mean) /
                               (cell->target.variance / cell->target.mean));
        }
    }
    return grid;
}

std::optional<NuCell> heat_engine_nu_cell(double t_cold, double t_cold_final,
                                          double t_hot, double gap,
                                          double work_fraction) {
    if (!(t_cold < t_cold_final && t_cold_final < t_hot)) {
        return std::nullopt;
    }
    const ProbVec gamma_h = gibbs_qubit(t_hot, gap);
    const ProbVec gamma_c = gibbs_qubit(t_cold, gap);
    const ProbVec gamma_cp = gibbs_qubit(t_cold_final, gap);
    const double d_c = relative_entropy(gamma_c, gamma_h);
    const double d_cp = relative_entropy(gamma_cp, gamma_h);
    const double w_carnot = t_hot * (d_c - d_cp);
    if (w_carnot <= 0.0) {
        return std::nullopt;
    }
    const double work = work_fraction * w_carnot;

    // Battery (gap `work`, referenced against its own Gibbs weights at
    // T_h) enters analytically: a point-mass factor adds -ln gamma_b to
    // the relative entropy and nothing to its variance.
    const double log_z_b = std::log1p(std::exp(-work / t_hot));
    NuCell cell;
    cell.initial.mean = d_c + log_z_b;
    cell.initial.variance = relative_entropy_variance(gamma_c, gamma_h);
    cell.target.mean = d_cp + work / t_hot + log_z_b;
    cell.target.variance = relative_entropy_variance(gamma_cp, gamma_h);
    return cell;
}

std::optional<double> heat_engine_nu(double t_cold, double t_cold_final,
                                     double t_hot, double gap,
                                     double work_fraction) {
    const auto cell =
        heat_engine_nu_cell(t_cold, t_cold_final, t_hot, gap, work_fraction);
    if (!cell || cell->target.variance <= 0.0 || cell->target.mean <= 0.0 ||
        cell->initial.mean <= 0.0) {
        return std::nullopt;
    }
    return (cell->initial.variance / cell->initial.mean) /
           (cell->target.variance / cell->target.mean);
}

std::vector<std::optional<double>> contour_crossings(const SweepGrid& grid,
                                                     double level) {
    std::vector<std::optional<double>> out(grid.row_count());
    for (std::size_t i = 0; i < grid.row_count(); ++i) {
        for (std::size_t j = 0; j + 1 < grid.col_count(); ++j) {
            const auto a = grid.value(i, j);
            const auto b = grid.value(i, j + 1);
            if (!a || !b) {
                continue;
            }
            if ((*a - level) * (*b - level) <= 0.0 && *a != *b) {
                const double t = (level - *a) / (*b - *a);
                out[i] = grid.cols().values[j] +
                         t * (grid.cols().values[j + 1] - grid.cols().values[j]);
                break;
            }
        }
    }
    return out;
}

std::vector<std::optional<double>> contour_nearest(const SweepGrid& grid,
                                                   double level) {
    std::vector<std::optional<double>> out(grid.row_count());
    for (std::size_t i = 0; i < grid.row_count(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < grid.col_count(); ++j) {
            const auto v = grid.value(i, j);
            if (!v) {
                continue;
            }
            const double d = std::abs(*v - level);
            if (d < best) {
                best = d;
                out[i] = grid.cols().values[j];
            }
        }
    }
    return out;
}

}  // namespace rescon
