#pragma once

#include <cstdint>
#include <vector>

#include "rescon/prob_vec.hpp"

namespace rescon {

// One type class of an i.i.d. / product distribution: a group of
// outcomes sharing the same probability and reference weight.
// log_p and log_g are per-outcome logs (log_g normalized within the
// full system); log_mult is the log of the outcome count, kept as a
// real via log-gamma so that n = 200 multinomials never overflow.
struct Atom {
    double log_p;
    double log_g;
    double log_mult;
};

// How the reference axis of a distribution is measured. Counting
// references (entanglement, coherence) live on an outcome-count axis
// and may be zero-padded freely; Normalized references (thermodynamics)
// live on the fixed Gibbs axis [0, 1].
enum class RefKind {
    Counting,
    Normalized,
};

// Compact exact representation of tensor powers and products of small
// distributions. Atoms with equal (log_p, log_g), keyed at 1e-12
// absolute, are merged by log-sum of multiplicities. Immutable after
// construction.
class AtomDist {
  public:
    static constexpr double kDefaultAtomCap = 1e7;

    AtomDist(std::vector<Atom> atoms, double log_ref_scale,
             RefKind ref_kind = RefKind::Normalized);

    RefKind ref_kind() const { return ref_kind_; }

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t atom_count() const { return atoms_.size(); }

    // Log of the total reference mass spanned by the full outcome
    // space: 0 for a normalized Gibbs reference, n ln d for uniform
    // references (so curves of different dimensions share a common
    // counting axis).
    double log_ref_scale() const { return log_ref_scale_; }

    // exp-sums over atoms, for normalization checks.
    double total_probability() const;
    double total_reference_mass() const;  // normalized: ~1

    // Explicit expansion for small systems (guarded at 2^16 outcomes);
    // multiplicities must be near-integers.
    ProbVec expand() const;

  private:
    std::vector<Atom> atoms_;
    double log_ref_scale_;
    RefKind ref_kind_;
};

// n-fold i.i.d. power of a base distribution, one atom per composition
// of n over the support of the base. Throws OverflowGuardError if the
// projected composition count exceeds atom_cap.
AtomDist iid_power(const ProbVec& base, std::int64_t n,
                   double atom_cap = AtomDist::kDefaultAtomCap);

// Tensor product: log fields add, multiplicities multiply.
AtomDist product(const AtomDist& a, const AtomDist& b,
                 double atom_cap = AtomDist::kDefaultAtomCap);

// round(lambda n) copies of base1 and the rest of base2; ties round to
// even.
AtomDist mixed_power(const ProbVec& base1, const ProbVec& base2,
                     std::int64_t n, double lambda,
                     double atom_cap = AtomDist::kDefaultAtomCap);

// Stable log(sum(exp(x))) over a span of log values.
double log_sum_exp(const std::vector<double>& logs);

}  // namespace rescon
