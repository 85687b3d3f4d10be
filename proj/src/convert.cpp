#include "rescon/convert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "rescon/functionals.hpp"

namespace rescon {

namespace {

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

ConversionResult optimal_final_state(const AtomDist& initial,
                                     const AtomDist& target) {
    if (initial.ref_kind() != target.ref_kind()) {
        throw InputError("initial and target use different reference kinds");
    }
    const LorenzCurve curve = lorenz_curve(initial);

    // Target atoms ratio-sorted, with cumulative reference mass X and
    // cumulative probability Q.
    std::vector<Atom> tatoms = target.atoms();
    std::sort(tatoms.begin(), tatoms.end(), [](const Atom& a, const Atom& b) {
        const double ra = a.log_p - a.log_g;
        const double rb = b.log_p - b.log_g;
        if (ra != rb) {
            return ra > rb;
        }
        return a.log_p > b.log_p;
    });
    const std::size_t K = tatoms.size();
    std::vector<double> X(K + 1, 0.0);
    std::vector<double> Lx(K + 1, 0.0);
    {
        double lx = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < K; ++k) {
            lx = log_add(lx, tatoms[k].log_mult + tatoms[k].log_g +
                                 target.log_ref_scale());
            X[k + 1] = std::exp(lx);
        }
    }
    for (std::size_t k = 1; k <= K; ++k) {
        Lx[k] = curve.eval(X[k]);
    }
    // Per-atom probabilities in linear space; differencing the cumulative
    // Q loses all precision for the tiny trailing atoms, so block masses
    // are re-summed from these directly.
    std::vector<double> pa(K);
    for (std::size_t k = 0; k < K; ++k) {
        pa[k] = std::exp(tatoms[k].log_mult + tatoms[k].log_p);
    }

    // Block decomposition: repeatedly find the tightest prefix ratio
    // (L(X_k) - L_j) / (Q_k - Q_j); every atom of the block is scaled
    // by that factor. Factors are non-decreasing across blocks.
    std::vector<Atom> fatoms;
    fatoms.reserve(K + 1);
    double bhatta = 0.0;
    double bhatta_verify = 0.0;
    std::size_t j = 0;
    while (j < K) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_k = j + 1;
        double dq = 0.0;  // running block mass, summed atom by atom
        for (std::size_t k = j + 1; k <= K; ++k) {
            dq += pa[k - 1];
            if (dq <= 0.0) {
                continue;
            }
            const double r = (Lx[k] - Lx[j]) / dq;
            if (!std::isfinite(best)) {
                best = r;
                best_k = k;
                continue;
            }
            const double tie = 1e-15 * std::max(1.0, best);
            if (r < best - tie) {
                best = r;
                best_k = k;
            } else if (r <= best + tie) {
                best_k = k;  // tie: take the largest block
            }
        }
        if (!std::isfinite(best)) {
            break;  // remaining target atoms carry no probability
        }
        double dq_exact = 0.0;
        for (std::size_t k = j; k < best_k; ++k) {
            dq_exact += pa[k];
        }
        const double t =
            (dq_exact > 0.0)
                ? std::max(Lx[best_k] - Lx[j], 0.0) / dq_exact
                : 0.0;
        if (t > 0.0) {
            const double log_t = std::log(t);
            for (std::size_t k = j; k < best_k; ++k) {
                fatoms.push_back(Atom{tatoms[k].log_p + log_t, tatoms[k].log_g,
                                      tatoms[k].log_mult});
                bhatta_verify += std::exp(tatoms[k].log_mult +
                                          0.5 * (tatoms[k].log_p +
                                                 fatoms.back().log_p));
            }
            bhatta += std::sqrt(t) * dq_exact;
        }
        j = best_k;
    }

    // Mass the initial curve cannot deliver onto the target support is
    // placed outside that support by tracing the initial curve's own
    // tail beyond X[K]; the appended atoms then never rise above it.
    double leftover = std::max(0.0, 1.0 - Lx[K]);
    if (leftover <= 1e-15) {
        leftover = 0.0;
    } else {
        std::vector<Atom> iatoms = initial.atoms();
        std::sort(iatoms.begin(), iatoms.end(),
                  [](const Atom& a, const Atom& b) {
                      const double ra = a.log_p - a.log_g;
                      const double rb = b.log_p - b.log_g;
                      if (ra != rb) {
                          return ra > rb;
                      }
                      return a.log_p > b.log_p;
                  });
        const double shift = initial.log_ref_scale() - target.log_ref_scale();
        const double edge = X[K] * (1.0 + 1e-15) + 1e-300;
        double cum = 0.0;
        for (const Atom& a : iatoms) {
            const double extent =
                std::exp(a.log_mult + a.log_g + initial.log_ref_scale());
            const double next = cum + extent;
            if (next <= edge) {
                cum = next;
                continue;
            }
            // Fraction of the atom lying past X[K]; probability and
            // reference extent split proportionally within an atom.
            const double frac =
                std::clamp((next - std::max(cum, X[K])) / extent, 0.0, 1.0);
            if (frac > 1e-15) {
                fatoms.push_back(Atom{a.log_p, a.log_g + shift,
                                      a.log_mult + std::log(frac)});
            }
            cum = next;
        }
    }

    AtomDist final(std::move(fatoms), target.log_ref_scale(), target.ref_kind());

    double fidelity = std::clamp(bhatta * bhatta, 0.0, 1.0);
    const double fidelity_verify =
        std::clamp(bhatta_verify * bhatta_verify, 0.0, 1.0);
    if (std::abs(fidelity - fidelity_verify) > 1e-8) {
        throw ConvergenceError("construction and verification fidelity disagree");
    }
    double infidelity = 1.0 - fidelity;
    if (infidelity < 1e-15) {
        fidelity = 1.0;
        infidelity = 0.0;
    }

    if (!majorizes(initial, final, 1e-9)) {
        throw ConvergenceError("constructed final state escapes the initial curve");
    }

    ConversionResult res{std::move(final), fidelity, infidelity,
                         infidelity <= 1e-9, leftover};
    return res;
}

RateResult max_rate(const ProbVec& initial_base, const ProbVec& target_base,
                    std::int64_t n, double epsilon, double atom_cap) {
    if (epsilon <= 0.0 || epsilon >= 1.0) {
        throw InputError("epsilon must lie in (0, 1)");
    }
    const ResourceTheory theory = initial_base.has_gibbs()
                                      ? ResourceTheory::Thermodynamic
                                      : ResourceTheory::Entanglement;
    const double r_inf = asymptotic_rate(initial_base, target_base, theory);

    // Producing m target copies from n initial copies requires the
    // m-copy target state to dominate the n-copy initial state (up to
    // smoothing), so the target side enters the solver as the curve to
    // stay under; its infidelity grows with m.
    const AtomDist query = iid_power(initial_base, n, atom_cap);
    std::map<std::int64_t, double> infid_cache;
    auto infid = [&](std::int64_t m) {
        auto it = infid_cache.find(m);
        if (it != infid_cache.end()) {
            return it->second;
        }
        const double e =
            optimal_final_state(iid_power(target_base, m, atom_cap), query)
                .infidelity;
        infid_cache.emplace(m, e);
        return e;
    };
    auto feasible = [&](std::int64_t m) { return infid(m) < epsilon; };

    if (!feasible(1)) {
        return {0, 0.0};
    }
    auto hi = static_cast<std::int64_t>(
        std::ceil(1.5 * r_inf * static_cast<double>(n)));
    hi = std::max<std::int64_t>(hi, 2);
    while (feasible(hi)) {
        hi *= 2;
    }
    std::int64_t lo = 1;  // feasible
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (feasible(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // The bisection assumes infidelity grows with m; check it on the
    // evaluations made and fall back to a linear scan if violated.
    bool monotone = true;
    double prev = -1.0;
    for (const auto& [m, e] : infid_cache) {
        if (e < prev - 1e-12) {
            monotone = false;
            break;
        }
        prev = std::max(prev, e);
    }
    if (!monotone) {
        std::int64_t best = 0;
        for (std::int64_t m = 1; m <= hi; ++m) {
            if (feasible(m)) {
                best = m;
            }
        }
        lo = best;
    }
    return {lo, static_cast<double>(lo) / static_cast<double>(n)};
}

}  // namespace rescon
