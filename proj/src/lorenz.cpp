#include "rescon/lorenz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rescon {

namespace {

constexpr double kRatioQuantum = 1e-12;

double log_add(double a, double b) {
    if (a < b) {
        std::swap(a, b);
    }
    if (b == -std::numeric_limits<double>::infinity()) {
        return a;
    }
    return a + std::log1p(std::exp(b - a));
}

}  // namespace

LorenzCurve::LorenzCurve(std::vector<double> x, std::vector<double> y,
                         RefKind ref_kind)
    : x_(std::move(x)), y_(std::move(y)), ref_kind_(ref_kind) {
    if (x_.size() != y_.size() || x_.empty()) {
        throw InputError("malformed lorenz curve");
    }
}

double LorenzCurve::eval(double x) const {
    if (x <= 0.0) {
        return 0.0;
    }
    if (x >= x_.back()) {
        return y_.back();
    }
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const auto k = static_cast<std::size_t>(it - x_.begin());
    const double x0 = (k == 0) ? 0.0 : x_[k - 1];
    const double y0 = (k == 0) ? 0.0 : y_[k - 1];
    const double t = (x - x0) / (x_[k] - x0);
    return y0 + t * (y_[k] - y0);
}

double LorenzCurve::slope_after(double x) const {
    if (x >= x_.back()) {
        return 0.0;
    }
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const auto k = static_cast<std::size_t>(it - x_.begin());
    const double x0 = (k == 0) ? 0.0 : x_[k - 1];
    const double y0 = (k == 0) ? 0.0 : y_[k - 1];
    return (y_[k] - y0) / (x_[k] - x0);
}

bool LorenzCurve::is_concave(double tol) const {
    double prev = std::numeric_limits<double>::infinity();
    double x0 = 0.0;
    double y0 = 0.0;
    for (std::size_t k = 0; k < x_.size(); ++k) {
        const double s = (y_[k] - y0) / (x_[k] - x0);
        if (s > prev * (1.0 + 1e-12) + tol) {
            return false;
        }
        prev = s;
        x0 = x_[k];
        y0 = y_[k];
    }
    return true;
}

bool LorenzCurve::dominates(const LorenzCurve& other, double tol) const {
    for (std::size_t k = 0; k < other.x_.size(); ++k) {
        if (eval(other.x_[k]) < other.y_[k] - tol) {
            return false;
        }
    }
    // Own breakpoints cannot witness a violation of a piecewise-linear
    // comparison, but kinks of this curve between other's breakpoints
    // can only raise this curve; nothing further to check.
    return true;
}

LorenzCurve lorenz_curve(const AtomDist& d) {
    struct Entry {
        double ratio;  // log_p - log_g
        double log_p_mass;
        double log_x_mass;
    };
    std::vector<Entry> entries;
    entries.reserve(d.atom_count());
    for (const Atom& a : d.atoms()) {
        entries.push_back(Entry{a.log_p - a.log_g, a.log_mult + a.log_p,
                                a.log_mult + a.log_g + d.log_ref_scale()});
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.ratio > b.ratio; });

    // Merge equal-ratio runs, then accumulate prefix sums in log space.
    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(entries.size());
    ys.reserve(entries.size());
    double lx = -std::numeric_limits<double>::infinity();
    double ly = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < entries.size();) {
        std::size_t j = i;
        double bx = -std::numeric_limits<double>::infinity();
        double by = -std::numeric_limits<double>::infinity();
        while (j < entries.size() &&
               std::llround(entries[j].ratio / kRatioQuantum) ==
                   std::llround(entries[i].ratio / kRatioQuantum)) {
            bx = log_add(bx, entries[j].log_x_mass);
            by = log_add(by, entries[j].log_p_mass);
            ++j;
        }
        lx = log_add(lx, bx);
        ly = log_add(ly, by);
        xs.push_back(std::exp(lx));
        ys.push_back(std::exp(ly));
        i = j;
    }

    // Normalize probability drift so the curve ends exactly at 1.
    const double total = ys.back();
    if (std::abs(total - 1.0) > 1e-6) {
        throw InputError("atom distribution is not normalized");
    }
    for (double& y : ys) {
        y /= total;
    }
    return LorenzCurve(std::move(xs), std::move(ys), d.ref_kind());
}

bool majorizes(const AtomDist& a, const AtomDist& b, double tol) {
    if (a.ref_kind() != b.ref_kind()) {
        throw InputError("cannot compare counting and normalized references");
    }
    return lorenz_curve(a).dominates(lorenz_curve(b), tol);
}

}  // namespace rescon
