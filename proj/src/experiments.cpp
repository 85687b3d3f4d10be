#include "rescon/experiments.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "rescon/functionals.hpp"

namespace rescon {

namespace {

// Evaluates cells [0, count) with a bounded worker pool. Each cell
// writes only its own slot, so results are identical for any job
// count.
void parallel_cells(std::size_t count, unsigned jobs,
                    const std::function<void(std::size_t)>& body) {
    unsigned workers = jobs == 0 ? std::thread::hardware_concurrency() : jobs;
    workers = std::max(1u, std::min<unsigned>(workers, count));
    if (workers == 1) {
        for (std::size_t k = 0; k < count; ++k) {
            body(k);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t k = next.fetch_add(1); k < count;
                 k = next.fetch_add(1)) {
                body(k);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

ProbVec heat_engine_base(const ProbVec& working, bool battery_excited,
                         double t_hot, double gap, double work) {
    const ProbVec battery(battery_excited ? std::vector<double>{0.0, 1.0}
                                          : std::vector<double>{1.0, 0.0});
    const ProbVec joint = ProbVec::tensor(working, battery);
    const ProbVec gibbs = ProbVec::tensor(gibbs_qubit(t_hot, gap),
                                          gibbs_qubit(t_hot, work));
    return ProbVec(joint.probs(), gibbs.probs());
}

}  // namespace

ConversionResult heat_engine_conversion(double t_cold, double t_cold_final,
                                        double t_hot, double gap, double work,
                                        std::int64_t copies, double atom_cap) {
    const ProbVec initial_base = heat_engine_base(gibbs_qubit(t_cold, gap), false,
                                                  t_hot, gap, work);
    const ProbVec target_base = heat_engine_base(gibbs_qubit(t_cold_final, gap),
                                                 true, t_hot, gap, work);
    return optimal_final_state(iid_power(initial_base, copies, atom_cap),
                               iid_power(target_base, copies, atom_cap));
}

SweepGrid heat_engine_sweep(const HeatEngineSpec& spec, unsigned jobs) {
    SweepGrid grid(spec.t_cold_axis, spec.t_cold_final_axis);
    const ProbVec gamma_h = gibbs_qubit(spec.t_hot, spec.gap);
    const std::size_t cols = grid.col_count();

    auto cell = [&](std::size_t k) {
        const std::size_t i = k / cols;
        const std::size_t j = k % cols;
        const double t_c = spec.t_cold_axis.values[i];
        const double t_cp = spec.t_cold_final_axis.values[j];
        try {
            if (!(t_c < t_cp && t_cp < spec.t_hot)) {
                grid.mask(i, j, "temperature-order");
                return;
            }
            const double w_carnot =
                spec.t_hot *
                (relative_entropy(gibbs_qubit(t_c, spec.gap), gamma_h) -
                 relative_entropy(gibbs_qubit(t_cp, spec.gap), gamma_h));
            if (w_carnot <= 0.0) {
                grid.mask(i, j, "no-extractable-work");
                return;
            }
            auto infidelity_at = [&](double fraction) {
                const ConversionResult res = heat_engine_conversion(
                    t_c, t_cp, spec.t_hot, spec.gap, fraction * w_carnot,
                    spec.copies, spec.atom_cap);
                return spec.battery_marginal ? res.mass_outside_target_support
                                             : res.infidelity;
            };

            if (spec.mode == HeatEngineSpec::Mode::FixedWork) {
                grid.set(i, j, infidelity_at(spec.work_fraction));
                return;
            }

            // FixedError: walk the work fraction down from 1 until the
            // infidelity drops below threshold, then refine by
            // bisection. Infidelity should shrink with the fraction;
            // if an evaluation breaks that, keep the plain scan result.
            constexpr double kStep = 0.005;
            double prev_inf = std::numeric_limits<double>::infinity();
            bool monotone = true;
            double pass_x = -1.0;
            double fail_x = 1.0 + kStep;
            for (int s = 0;; ++s) {
                const double x = 1.0 - kStep * static_cast<double>(s);
                if (x <= 0.0) {
                    break;
                }
                const double e = infidelity_at(x);
                if (e > prev_inf + 1e-12) {
                    monotone = false;
                }
                prev_inf = e;
                if (e < spec.error_threshold) {
                    pass_x = x;
                    break;
                }
                fail_x = x;
            }
            if (pass_x < 0.0) {
                grid.set(i, j, 0.0);
                return;
            }
            double x = pass_x;
            if (monotone && fail_x <= 1.0) {
                double lo = pass_x;
                double hi = fail_x;
                while (hi - lo > 1e-4) {
                    const double mid = 0.5 * (lo + hi);
                    if (infidelity_at(mid) < spec.error_threshold) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                x = lo;
            } else if (monotone && pass_x >= 1.0) {
                x = 1.0;
            }
            grid.set(i, j, x);
        } catch (const Error& e) {
            grid.mask(i, j, e.what());
        }
    };
    parallel_cells(grid.row_count() * cols, jobs, cell);
    return grid;
}

SweepGrid lambda_sweep(const ProbVec& p1, const ProbVec& p2,
                       const ProbVec& target,
                       const std::vector<std::int64_t>& n_list,
                       const std::vector<double>& lambdas, unsigned jobs,
                       double atom_cap) {
    Axis rows{"n", {}};
    for (std::int64_t n : n_list) {
        rows.values.push_back(static_cast<double>(n));
    }
    Axis cols{"lambda", lambdas};
    SweepGrid grid(std::move(rows), std::move(cols));
    const std::size_t ncols = grid.col_count();

    auto cell = [&](std::size_t k) {
        const std::size_t i = k / ncols;
        const std::size_t j = k % ncols;
        const std::int64_t n = n_list[i];
        const double lambda = lambdas[j];
        try {
            const double split = lambda * static_cast<double>(n);
            if (std::abs(split - std::nearbyint(split)) > 1e-9) {
                grid.mask(i, j, "non-integer-split");
                return;
            }
            const AtomDist initial = mixed_power(p1, p2, n, lambda, atom_cap);
            const AtomDist goal = iid_power(target, n, atom_cap);
            grid.set(i, j, optimal_final_state(initial, goal).infidelity);
        } catch (const Error& e) {
            grid.mask(i, j, e.what());
        }
    };
    parallel_cells(grid.row_count() * ncols, jobs, cell);
    return grid;
}

SweepGrid rate_sweep(const std::vector<ProbVec>& initials, const ProbVec& target,
                     const std::vector<std::int64_t>& n_list, double epsilon,
                     unsigned jobs, double atom_cap) {
    Axis rows{"initial", {}};
    for (std::size_t i = 0; i < initials.size(); ++i) {
        rows.values.push_back(static_cast<double>(i + 1));
    }
    Axis cols{"n", {}};
    for (std::int64_t n : n_list) {
        cols.values.push_back(static_cast<double>(n));
    }
    SweepGrid grid(std::move(rows), std::move(cols));
    const std::size_t ncols = grid.col_count();

    auto cell = [&](std::size_t k) {
        const std::size_t i = k / ncols;
        const std::size_t j = k % ncols;
        try {
            grid.set(i, j,
                     max_rate(initials[i], target, n_list[j], epsilon, atom_cap)
                         .rate);
        } catch (const Error& e) {
            grid.mask(i, j, e.what());
        }
    };
    parallel_cells(grid.row_count() * ncols, jobs, cell);
    return grid;
}

}  // namespace rescon
