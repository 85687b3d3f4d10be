#pragma once

#include <cstddef>
#include <vector>

#include "rescon/atom_dist.hpp"

namespace rescon {

// Concave piecewise-linear majorization curve: cumulative reference
// mass (x) against cumulative probability (y). x is measured in
// absolute reference units, i.e. Gibbs mass for normalized references
// and outcome counts for counting references, so that curves of
// different systems share an axis. The origin (0, 0) is implicit;
// breakpoints are stored in ratio-descending order and the final y
// is 1.
class LorenzCurve {
  public:
    LorenzCurve(std::vector<double> x, std::vector<double> y, RefKind ref_kind);

    const std::vector<double>& xs() const { return x_; }
    const std::vector<double>& ys() const { return y_; }
    RefKind ref_kind() const { return ref_kind_; }
    std::size_t segments() const { return x_.size(); }

    // Linear interpolation, flat extension to y = 1 past the last
    // breakpoint, 0 for x <= 0.
    double eval(double x) const;

    // Right-hand slope at x (0 past the end of the curve).
    double slope_after(double x) const;

    // Segment slopes are non-increasing within tolerance.
    bool is_concave(double tol = 1e-9) const;

    // this >= other everywhere, allowing a deficit of up to tol.
    bool dominates(const LorenzCurve& other, double tol = 1e-9) const;

  private:
    std::vector<double> x_;
    std::vector<double> y_;
    RefKind ref_kind_;
};

// Canonical Lorenz curve of a distribution: atoms sorted by
// probability-to-reference ratio descending, equal ratios merged,
// cumulative sums accumulated in log space.
LorenzCurve lorenz_curve(const AtomDist& d);

// True iff a's curve dominates b's at every breakpoint of both curves
// (deficit tolerance 1e-9). For counting references the shorter
// support is implicitly zero-padded.
bool majorizes(const AtomDist& a, const AtomDist& b, double tol = 1e-9);

}  // namespace rescon
