#include "rescon/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "rescon/errors.hpp"

namespace rescon {

namespace {

constexpr double kGapTol = 1e-10;
constexpr long kMaxIters = 1000000;

// Piecewise-linear curve through the ratio-sorted cumulative points of
// the initial distribution.
struct Curve {
    std::vector<double> xs;
    std::vector<double> ys;

    double eval(double x) const {
        if (x <= 0.0) {
            return 0.0;
        }
        if (x >= xs.back()) {
            return ys.back();
        }
        std::size_t k = 0;
        while (xs[k] < x) {
            ++k;
        }
        const double x0 = (k == 0) ? 0.0 : xs[k - 1];
        const double y0 = (k == 0) ? 0.0 : ys[k - 1];
        return y0 + (x - x0) / (xs[k] - x0) * (ys[k] - y0);
    }
};

Curve build_curve(const std::vector<double>& p, const std::vector<double>& g) {
    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return p[a] * g[b] > p[b] * g[a];
    });
    Curve c;
    double cx = 0.0;
    double cy = 0.0;
    for (std::size_t i : order) {
        cx += g[i];
        cy += p[i];
        c.xs.push_back(cx);
        c.ys.push_back(cy);
    }
    return c;
}

// Exact linear maximization over the polytope: allocate curve
// increments in descending gradient order (Edmonds' greedy on the
// polymatroid base).
std::vector<double> linear_oracle(const Curve& curve,
                                  const std::vector<double>& g,
                                  const std::vector<double>& c) {
    std::vector<std::size_t> order(g.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (c[a] != c[b]) {
            return c[a] > c[b];
        }
        return a < b;
    });
    std::vector<double> x(g.size(), 0.0);
    double cum = 0.0;
    double prev = 0.0;
    for (std::size_t i : order) {
        cum += g[i];
        const double v = curve.eval(cum);
        x[i] = std::max(v - prev, 0.0);
        prev = v;
    }
    return x;
}

double overlap(const std::vector<double>& q, const std::vector<double>& x) {
    double b = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] > 0.0 && x[i] > 0.0) {
            b += std::sqrt(q[i] * x[i]);
        }
    }
    return b;
}

}  // namespace

OracleResult oracle_optimal_fidelity(const std::vector<double>& initial,
                                     const std::vector<double>& target,
                                     const std::vector<double>& gibbs) {
    const std::size_t d = initial.size();
    if (d == 0 || d > 6) {
        throw InputError("oracle supports dimensions 1 through 6");
    }
    if (target.size() != d || (!gibbs.empty() && gibbs.size() != d)) {
        throw InputError("oracle dimension mismatch");
    }
    const std::vector<double> g =
        gibbs.empty() ? std::vector<double>(d, 1.0 / static_cast<double>(d))
                      : gibbs;
    const Curve curve = build_curve(initial, g);

    // Start from the Gibbs point, which every curve dominates.
    std::vector<double> x = g;
    std::map<std::vector<double>, double> vertices;
    vertices[g] = 1.0;

    // Directional derivative of the Bhattacharyya overlap along dir at
    // step t.  Bisecting on its sign keeps full relative precision even
    // when objective differences fall below double-precision noise.
    auto dir_derivative = [&](const std::vector<double>& dir, double t) {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            if (target[i] <= 0.0) {
                continue;
            }
            double xi = x[i] + t * dir[i];
            if (xi <= 0.0) {
                if (dir[i] < 0.0) {
                    return -std::numeric_limits<double>::infinity();
                }
                xi = 1e-300;
            }
            s += dir[i] * 0.5 * std::sqrt(target[i] / xi);
        }
        return s;
    };
    auto line_search = [&](const std::vector<double>& dir, double max_step) {
        if (dir_derivative(dir, 0.0) <= 0.0) {
            return 0.0;
        }
        if (dir_derivative(dir, max_step) >= 0.0) {
            return max_step;
        }
        double lo = 0.0;
        double hi = max_step;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (dir_derivative(dir, mid) > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    std::vector<double> grad(d);
    for (long iter = 0; iter < kMaxIters; ++iter) {
        for (std::size_t i = 0; i < d; ++i) {
            if (target[i] <= 0.0) {
                grad[i] = 0.0;
            } else if (x[i] > 1e-300) {
                grad[i] = 0.5 * std::sqrt(target[i] / x[i]);
            } else {
                grad[i] = 1e15;
            }
        }
        const std::vector<double> s = linear_oracle(curve, g, grad);
        double gap = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            gap += grad[i] * (s[i] - x[i]);
        }
        if (gap < kGapTol) {
            const double b = overlap(target, x);
            return {x, std::clamp(b * b, 0.0, 1.0)};
        }

        // Away vertex: active vertex with the smallest gradient value.
        auto away = vertices.begin();
        double away_val = std::numeric_limits<double>::infinity();
        for (auto it = vertices.begin(); it != vertices.end(); ++it) {
            double v = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                v += grad[i] * it->first[i];
            }
            if (v < away_val) {
                away_val = v;
                away = it;
            }
        }
        double xdotg = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            xdotg += grad[i] * x[i];
        }

        std::vector<double> dir(d);
        const bool fw_step = (gap >= xdotg - away_val);
        double max_step;
        if (fw_step) {
            for (std::size_t i = 0; i < d; ++i) {
                dir[i] = s[i] - x[i];
            }
            max_step = 1.0;
        } else {
            for (std::size_t i = 0; i < d; ++i) {
                dir[i] = x[i] - away->first[i];
            }
            const double alpha = away->second;
            max_step = (alpha < 1.0) ? alpha / (1.0 - alpha) : 1e12;
        }
        const double step = line_search(dir, max_step);
        if (fw_step) {
            for (auto& [v, w] : vertices) {
                w *= (1.0 - step);
            }
            vertices[s] += step;
        } else {
            for (auto& [v, w] : vertices) {
                w *= (1.0 + step);
            }
            away->second -= step;
            if (away->second < 1e-14) {
                vertices.erase(away);
            }
        }
        for (std::size_t i = 0; i < d; ++i) {
            x[i] += step * dir[i];
        }
        // Drop numerically dead vertices to keep the active set small.
        for (auto it = vertices.begin(); it != vertices.end();) {
            it = (it->second < 1e-14) ? vertices.erase(it) : std::next(it);
        }
    }
    throw IterationLimitError("conditional gradient exhausted its step budget");
}

}  // namespace rescon
