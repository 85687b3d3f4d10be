#pragma once

#include "rescon/prob_vec.hpp"

namespace rescon {

// All entropic quantities use natural logarithms (nats).

// H(p) = -sum_i p_i ln p_i, with 0 ln 0 = 0.
double shannon_entropy(const ProbVec& p);

// V(p) = sum_i p_i (ln p_i + H(p))^2.
double entropy_variance(const ProbVec& p);

// D(p||g) = sum_i p_i ln(p_i / g_i); throws SupportError when p has
// mass outside the support of g.
double relative_entropy(const ProbVec& p, const ProbVec& g);

// V(p||g) = sum_i p_i (ln(p_i/g_i) - D(p||g))^2.
double relative_entropy_variance(const ProbVec& p, const ProbVec& g);

// Per-copy resource content and its fluctuation: (H, V) for the
// uniform-reference theories, (D(.||gamma), V(.||gamma)) for
// thermodynamics. The Gibbs reference is taken from the ProbVec.
struct ResourceStats {
    double mean = 0.0;
    double variance = 0.0;
};
ResourceStats resource_stats(const ProbVec& p, ResourceTheory theory);

// R_inf = H(p)/H(q), or D(p||gamma)/D(q||gamma) for thermodynamics.
double asymptotic_rate(const ProbVec& p, const ProbVec& q, ResourceTheory theory);

// nu = (V(p)/H(p)) / (V(q)/H(q)), relative-entropy version for
// thermodynamics.
double irreversibility_parameter(const ProbVec& p, const ProbVec& q,
                                 ResourceTheory theory);

// Squared Bhattacharyya overlap F = (sum_i sqrt(p_i q_i))^2; the
// shorter vector is padded with zeros.
double fidelity(const ProbVec& p, const ProbVec& q);

}  // namespace rescon
