#include "rescon/atom_dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace rescon {

namespace {

constexpr double kMergeQuantum = 1e-12;

std::int64_t quantize(double x) {
    return std::llround(x / kMergeQuantum);
}

double log_add(double a, double b) {
    if (a < b) {
        std::swap(a, b);
    }
    if (b == -std::numeric_limits<double>::infinity()) {
        return a;
    }
    return a + std::log1p(std::exp(b - a));
}

std::vector<Atom> canonical_merge(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
        return std::make_tuple(quantize(a.log_p), quantize(a.log_g)) <
               std::make_tuple(quantize(b.log_p), quantize(b.log_g));
    });
    std::vector<Atom> merged;
    merged.reserve(atoms.size());
    for (const Atom& a : atoms) {
        if (!merged.empty() &&
            quantize(merged.back().log_p) == quantize(a.log_p) &&
            quantize(merged.back().log_g) == quantize(a.log_g)) {
            merged.back().log_mult = log_add(merged.back().log_mult, a.log_mult);
        } else {
            merged.push_back(a);
        }
    }
    return merged;
}

// log C(n + s - 1, s - 1): projected composition count.
double log_composition_count(std::int64_t n, std::int64_t s) {
    return std::lgamma(static_cast<double>(n + s)) -
           std::lgamma(static_cast<double>(n + 1)) -
           std::lgamma(static_cast<double>(s));
}

}  // namespace

double log_sum_exp(const std::vector<double>& logs) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : logs) {
        m = std::max(m, x);
    }
    if (!std::isfinite(m)) {
        return m;
    }
    double s = 0.0;
    for (double x : logs) {
        s += std::exp(x - m);
    }
    return m + std::log(s);
}

AtomDist::AtomDist(std::vector<Atom> atoms, double log_ref_scale, RefKind ref_kind)
    : atoms_(canonical_merge(std::move(atoms))),
      log_ref_scale_(log_ref_scale),
      ref_kind_(ref_kind) {}

double AtomDist::total_probability() const {
    std::vector<double> logs;
    logs.reserve(atoms_.size());
    for (const Atom& a : atoms_) {
        logs.push_back(a.log_mult + a.log_p);
    }
    return std::exp(log_sum_exp(logs));
}

double AtomDist::total_reference_mass() const {
    std::vector<double> logs;
    logs.reserve(atoms_.size());
    for (const Atom& a : atoms_) {
        logs.push_back(a.log_mult + a.log_g);
    }
    return std::exp(log_sum_exp(logs));
}

ProbVec AtomDist::expand() const {
    constexpr double kMaxOutcomes = 65536.0;
    double total = 0.0;
    for (const Atom& a : atoms_) {
        total += std::exp(a.log_mult);
    }
    if (total > kMaxOutcomes + 0.5) {
        throw OverflowGuardError("expansion exceeds 2^16 outcomes");
    }
    std::vector<double> p;
    std::vector<double> g;
    p.reserve(static_cast<std::size_t>(total) + 1);
    for (const Atom& a : atoms_) {
        const double multf = std::exp(a.log_mult);
        const auto mult = static_cast<std::int64_t>(std::llround(multf));
        if (std::abs(multf - static_cast<double>(mult)) > 1e-6 * multf) {
            throw OverflowGuardError("multiplicity is not a near-integer");
        }
        for (std::int64_t k = 0; k < mult; ++k) {
            p.push_back(std::exp(a.log_p));
            g.push_back(std::exp(a.log_g));
        }
    }
    return ProbVec(std::move(p), std::move(g));
}

AtomDist iid_power(const ProbVec& base, std::int64_t n, double atom_cap) {
    if (n < 1) {
        throw InputError("copy count must be at least 1");
    }
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (base[i] > 0.0) {
            support.push_back(i);
        }
    }
    const auto s = static_cast<std::int64_t>(support.size());
    if (log_composition_count(n, s) > std::log(atom_cap)) {
        throw OverflowGuardError("projected atom count exceeds cap");
    }

    const bool thermo = base.has_gibbs();
    std::vector<double> log_p(support.size());
    std::vector<double> log_g(support.size());
    for (std::size_t j = 0; j < support.size(); ++j) {
        log_p[j] = std::log(base[support[j]]);
        log_g[j] = thermo ? std::log(base.gibbs()[support[j]])
                          : -std::log(static_cast<double>(base.size()));
    }

    const double log_n_fact = std::lgamma(static_cast<double>(n + 1));
    std::vector<Atom> atoms;
    std::vector<std::int64_t> counts(support.size(), 0);

    // Depth-first over compositions of n into |support| parts.
    auto recurse = [&](auto&& self, std::size_t j, std::int64_t left) -> void {
        if (j + 1 == support.size()) {
            counts[j] = left;
            Atom a{0.0, 0.0, log_n_fact};
            for (std::size_t k = 0; k < support.size(); ++k) {
                const auto c = static_cast<double>(counts[k]);
                a.log_p += c * log_p[k];
                a.log_g += c * log_g[k];
                a.log_mult -= std::lgamma(c + 1.0);
            }
            atoms.push_back(a);
            return;
        }
        for (std::int64_t c = 0; c <= left; ++c) {
            counts[j] = c;
            self(self, j + 1, left - c);
        }
    };
    recurse(recurse, 0, n);

    const double scale =
        thermo ? 0.0
               : static_cast<double>(n) * std::log(static_cast<double>(base.size()));
    return AtomDist(std::move(atoms), scale,
                    thermo ? RefKind::Normalized : RefKind::Counting);
}

AtomDist product(const AtomDist& a, const AtomDist& b, double atom_cap) {
    if (a.ref_kind() != b.ref_kind()) {
        throw InputError("cannot combine counting and normalized references");
    }
    const double projected = static_cast<double>(a.atom_count()) *
                             static_cast<double>(b.atom_count());
    if (projected > atom_cap) {
        throw OverflowGuardError("projected atom count exceeds cap");
    }
    std::vector<Atom> atoms;
    atoms.reserve(a.atom_count() * b.atom_count());
    for (const Atom& x : a.atoms()) {
        for (const Atom& y : b.atoms()) {
            atoms.push_back(Atom{x.log_p + y.log_p, x.log_g + y.log_g,
                                 x.log_mult + y.log_mult});
        }
    }
    return AtomDist(std::move(atoms), a.log_ref_scale() + b.log_ref_scale(),
                    a.ref_kind());
}

AtomDist mixed_power(const ProbVec& base1, const ProbVec& base2, std::int64_t n,
                     double lambda, double atom_cap) {
    if (lambda < 0.0 || lambda > 1.0) {
        throw InputError("mixing factor must lie in [0, 1]");
    }
    // nearbyint honours round-to-nearest-even for ties.
    const auto n1 = static_cast<std::int64_t>(
        std::nearbyint(lambda * static_cast<double>(n)));
    const std::int64_t n2 = n - n1;
    if (n1 == 0) {
        return iid_power(base2, n, atom_cap);
    }
    if (n2 == 0) {
        return iid_power(base1, n, atom_cap);
    }
    return product(iid_power(base1, n1, atom_cap), iid_power(base2, n2, atom_cap),
                   atom_cap);
}

}  // namespace rescon
