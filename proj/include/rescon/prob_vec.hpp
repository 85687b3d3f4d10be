#pragma once

#include <optional>
#include <vector>

#include "rescon/errors.hpp"

namespace rescon {

enum class ResourceTheory {
    Entanglement,
    Coherence,
    Thermodynamic,
};

// Finite probability distribution with an optional paired reference
// (Gibbs) weight vector. Entries are validated on construction: tiny
// negatives (above -1e-15) are clamped to zero, anything worse is
// rejected, and both vectors must sum to one within tolerance.
class ProbVec {
  public:
    explicit ProbVec(std::vector<double> probs);
    ProbVec(std::vector<double> probs, std::vector<double> gibbs);

    const std::vector<double>& probs() const { return probs_; }
    bool has_gibbs() const { return gibbs_.has_value(); }
    const std::vector<double>& gibbs() const;

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }

    // Uniform reference weights 1/d, used by the entanglement and
    // coherence theories.
    std::vector<double> uniform_reference() const;

    // Tensor product of two single-copy distributions; Gibbs vectors
    // combine multiplicatively when both factors carry one.
    static ProbVec tensor(const ProbVec& a, const ProbVec& b);

  private:
    std::vector<double> probs_;
    std::optional<std::vector<double>> gibbs_;
};

// Thermal two-level distribution [1, exp(-gap/T)] / Z at temperature T
// (k_B = 1).
ProbVec gibbs_qubit(double temperature, double gap);

}  // namespace rescon
