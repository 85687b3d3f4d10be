#include "rescon/functionals.hpp"

#include <algorithm>
#include <cmath>

namespace rescon {

namespace {

void check_support(const ProbVec& p, const ProbVec& g) {
    if (p.size() != g.size()) {
        throw InputError("dimension mismatch between distribution and reference");
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0 && g[i] <= 0.0) {
            throw SupportError("distribution has mass where reference vanishes");
        }
    }
}

}  // namespace

double shannon_entropy(const ProbVec& p) {
    double h = 0.0;
    for (double x : p.probs()) {
        if (x > 0.0) {
            h -= x * std::log(x);
        }
    }
    return h;
}

double entropy_variance(const ProbVec& p) {
    const double h = shannon_entropy(p);
    double v = 0.0;
    for (double x : p.probs()) {
        if (x > 0.0) {
            const double t = std::log(x) + h;
            v += x * t * t;
        }
    }
    return v;
}

double relative_entropy(const ProbVec& p, const ProbVec& g) {
    check_support(p, g);
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
            d += p[i] * std::log(p[i] / g[i]);
        }
    }
    return std::max(d, 0.0);
}

double relative_entropy_variance(const ProbVec& p, const ProbVec& g) {
    check_support(p, g);
    const double d = relative_entropy(p, g);
    double v = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
            const double t = std::log(p[i] / g[i]) - d;
            v += p[i] * t * t;
        }
    }
    return v;
}

ResourceStats resource_stats(const ProbVec& p, ResourceTheory theory) {
    if (theory == ResourceTheory::Thermodynamic) {
        const ProbVec g(p.gibbs());
        return {relative_entropy(p, g), relative_entropy_variance(p, g)};
    }
    return {shannon_entropy(p), entropy_variance(p)};
}

double asymptotic_rate(const ProbVec& p, const ProbVec& q, ResourceTheory theory) {
    const double num = resource_stats(p, theory).mean;
    const double den = resource_stats(q, theory).mean;
    if (den <= 0.0) {
        throw DegenerateTargetError("target state is free, asymptotic rate undefined");
    }
    return num / den;
}

double irreversibility_parameter(const ProbVec& p, const ProbVec& q,
                                 ResourceTheory theory) {
    const ResourceStats sp = resource_stats(p, theory);
    const ResourceStats sq = resource_stats(q, theory);
    if (sq.mean <= 0.0 || sq.variance <= 0.0) {
        throw DegenerateTargetError("target V/H ratio vanishes, nu undefined");
    }
    if (sp.mean <= 0.0) {
        throw DegenerateTargetError("initial state is free, nu undefined");
    }
    return (sp.variance / sp.mean) / (sq.variance / sq.mean);
}

double fidelity(const ProbVec& p, const ProbVec& q) {
    const std::size_t n = std::min(p.size(), q.size());
    double b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        b += std::sqrt(p[i] * q[i]);
    }
    return std::clamp(b * b, 0.0, 1.0);
}

}  // namespace rescon
