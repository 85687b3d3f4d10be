#include "rescon/prob_vec.hpp"

#include <cmath>
#include <string>

namespace rescon {

namespace {

constexpr double kClampTol = 1e-15;
constexpr double kSumTol = 1e-9;

std::vector<double> validate(std::vector<double> v, const char* what) {
    if (v.empty()) {
        throw InputError(std::string(what) + " vector is empty");
    }
    double sum = 0.0;
    for (double& x : v) {
        if (!std::isfinite(x)) {
            throw InputError(std::string(what) + " entry is not finite");
        }
        if (x < -kClampTol) {
            throw InputError(std::string(what) + " entry is negative");
        }
        if (x < 0.0) {
            x = 0.0;
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > kSumTol) {
        throw InputError(std::string(what) + " does not sum to 1 (got " +
                         std::to_string(sum) + ")");
    }
    for (double& x : v) {
        x /= sum;
    }
    return v;
}

}  // namespace

ProbVec::ProbVec(std::vector<double> probs)
    : probs_(validate(std::move(probs), "probability")) {}

ProbVec::ProbVec(std::vector<double> probs, std::vector<double> gibbs)
    : probs_(validate(std::move(probs), "probability")),
      gibbs_(validate(std::move(gibbs), "gibbs")) {
    if (gibbs_->size() != probs_.size()) {
        throw InputError("gibbs vector length differs from probability vector");
    }
    for (double g : *gibbs_) {
        if (g <= 0.0) {
            throw InputError("gibbs weights must be strictly positive");
        }
    }
}

const std::vector<double>& ProbVec::gibbs() const {
    if (!gibbs_) {
        throw InputError("distribution carries no gibbs reference");
    }
    return *gibbs_;
}

std::vector<double> ProbVec::uniform_reference() const {
    return std::vector<double>(size(), 1.0 / static_cast<double>(size()));
}

ProbVec ProbVec::tensor(const ProbVec& a, const ProbVec& b) {
    std::vector<double> p;
    p.reserve(a.size() * b.size());
    for (double x : a.probs()) {
        for (double y : b.probs()) {
            p.push_back(x * y);
        }
    }
    if (a.has_gibbs() && b.has_gibbs()) {
        std::vector<double> g;
        g.reserve(a.size() * b.size());
        for (double x : a.gibbs()) {
            for (double y : b.gibbs()) {
                g.push_back(x * y);
            }
        }
        return ProbVec(std::move(p), std::move(g));
    }
    return ProbVec(std::move(p));
}

ProbVec gibbs_qubit(double temperature, double gap) {
    if (temperature <= 0.0) {
        throw InputError("temperature must be positive");
    }
    if (gap < 0.0) {
        throw InputError("energy gap must be non-negative");
    }
    const double w = std::exp(-gap / temperature);
    return ProbVec({1.0 / (1.0 + w), w / (1.0 + w)});
}

}  // namespace rescon
