#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rescon/functionals.hpp"

using namespace rescon;

namespace {

ProbVec random_dist(std::mt19937& rng, std::size_t dim) {
    std::uniform_real_distribution<double> u(0.01, 1.0);
    std::vector<double> p(dim);
    double s = 0.0;
    for (double& x : p) {
        x = u(rng);
        s += x;
    }
    for (double& x : p) {
        x /= s;
    }
    return ProbVec(p);
}

// Schmidt-coefficient fixtures used throughout the test suite.
const std::vector<double> kPsi1{0.4309, 0.4300, 0.1391};   // H=1, V=0.1529
const std::vector<double> kPsi2{0.5499, 0.2300, 0.2201};   // H=1, V=0.1977
const std::vector<double> kPhi{0.5121, 0.3300, 0.1579};    // H=1, V=0.1729
const std::vector<double> kLowPsi1{0.5436, 0.4264, 0.0300};  // H=0.8, V=0.2406

}  // namespace

TEST_CASE("probability vector validation") {
    CHECK_THROWS_AS(ProbVec({0.5, -0.1, 0.6}), Error);
    CHECK_THROWS_AS(ProbVec({0.5, 0.4}), Error);  // sums to 0.9
    CHECK_NOTHROW(ProbVec({1.0, -1e-16}));        // clamped
    CHECK_THROWS_AS(ProbVec({0.5, 0.5}, {0.7, 0.2, 0.1}), Error);
    const ProbVec p({0.5, 0.5}, {0.7, 0.3});
    CHECK(p.has_gibbs());
    CHECK(p.gibbs()[0] == doctest::Approx(0.7));
}

TEST_CASE("shannon entropy fixtures") {
    CHECK(shannon_entropy(ProbVec(kPsi1)) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(shannon_entropy(ProbVec({1.0, 0.0, 0.0})) == doctest::Approx(0.0));
    CHECK(shannon_entropy(ProbVec(kLowPsi1)) ==
          doctest::Approx(0.8).epsilon(1e-3));
    CHECK(shannon_entropy(ProbVec({1.0 / 3, 1.0 / 3, 1.0 / 3})) ==
          doctest::Approx(std::log(3.0)));
}

TEST_CASE("entropy variance fixtures") {
    CHECK(std::abs(entropy_variance(ProbVec(kPsi1)) - 0.1529) < 1e-3);
    CHECK(std::abs(entropy_variance(ProbVec(kPsi2)) - 0.1977) < 1e-3);
    CHECK(std::abs(entropy_variance(ProbVec(kPhi)) - 0.1729) < 1e-3);
    CHECK(std::abs(entropy_variance(ProbVec(kLowPsi1)) - 0.2406) < 1e-3);
    CHECK(std::abs(entropy_variance(ProbVec({0.6594, 0.2806, 0.0600})) - 0.4024) <
          1e-3);
    CHECK(std::abs(entropy_variance(ProbVec({0.7119, 0.1481, 0.1400})) - 0.5236) <
          1e-3);
    CHECK(std::abs(entropy_variance(ProbVec({0.4514, 0.4086, 0.1400})) - 0.1541) <
          1e-3);
    for (std::size_t d : {2, 3, 5, 8}) {
        const ProbVec uniform(
            std::vector<double>(d, 1.0 / static_cast<double>(d)));
        CHECK(entropy_variance(uniform) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("entropy variance is non-negative, zero only on flat support") {
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        const ProbVec p = random_dist(rng, 2 + i % 5);
        CHECK(entropy_variance(p) >= 0.0);
    }
    // Uniform on a sub-support still has V = 0.
    CHECK(entropy_variance(ProbVec({0.5, 0.5, 0.0})) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("relative entropy fixtures") {
    const ProbVec g({0.3, 0.7});
    CHECK(relative_entropy(g, g) == doctest::Approx(0.0));
    const ProbVec hot = gibbs_qubit(10.0, 1.0);
    CHECK(relative_entropy(ProbVec({1.0, 0.0}), hot) ==
          doctest::Approx(0.6444).epsilon(1e-4));
    CHECK(relative_entropy(ProbVec({0.9, 0.1}), ProbVec({0.5, 0.5})) ==
          doctest::Approx(0.3681).epsilon(1e-3));
    CHECK_THROWS_AS(relative_entropy(ProbVec({0.5, 0.5}), ProbVec({1.0, 0.0})),
                    SupportError);
}

TEST_CASE("relative entropy non-negative, zero iff equal") {
    std::mt19937 rng(12);
    for (int i = 0; i < 1000; ++i) {
        const ProbVec p = random_dist(rng, 3);
        const ProbVec g = random_dist(rng, 3);
        const double d = relative_entropy(p, g);
        CHECK(d >= -1e-12);
        CHECK(relative_entropy(p, p) < 1e-10);
    }
}

TEST_CASE("relative entropy variance") {
    const ProbVec g({0.4, 0.6});
    CHECK(relative_entropy_variance(g, g) == doctest::Approx(0.0));
    CHECK(relative_entropy_variance(ProbVec({1.0, 0.0}), g) ==
          doctest::Approx(0.0));
    const ProbVec hot = gibbs_qubit(10.0, 1.0);
    CHECK(relative_entropy_variance(gibbs_qubit(1.0, 1.0), hot) > 0.0);
    // Vanishes as the two temperatures meet.
    CHECK(relative_entropy_variance(gibbs_qubit(9.999, 1.0), hot) < 1e-6);
}

TEST_CASE("uniform reference identities") {
    std::mt19937 rng(13);
    for (int i = 0; i < 100; ++i) {
        const std::size_t d = 2 + i % 4;
        const ProbVec p = random_dist(rng, d);
        const ProbVec u(std::vector<double>(d, 1.0 / static_cast<double>(d)));
        CHECK(relative_entropy(p, u) ==
              doctest::Approx(std::log(static_cast<double>(d)) -
                              shannon_entropy(p))
                  .epsilon(1e-10));
        CHECK(relative_entropy_variance(p, u) ==
              doctest::Approx(entropy_variance(p)).epsilon(1e-10));
    }
}

TEST_CASE("asymptotic rate") {
    const ProbVec q3(std::vector<double>(3, 1.0 / 3));
    const ProbVec q2({0.5, 0.5});
    CHECK(asymptotic_rate(q3, q2, ResourceTheory::Entanglement) ==
          doctest::Approx(std::log(3.0) / std::log(2.0)));
    CHECK(asymptotic_rate(ProbVec(kPsi1), ProbVec(kPsi1),
                          ResourceTheory::Entanglement) == doctest::Approx(1.0));
    CHECK(asymptotic_rate(ProbVec(kLowPsi1), ProbVec({0.4514, 0.4086, 0.1400}),
                          ResourceTheory::Entanglement) ==
          doctest::Approx(0.8).epsilon(2e-3));
    CHECK_THROWS_AS(asymptotic_rate(q3, ProbVec({1.0, 0.0}),
                                    ResourceTheory::Entanglement),
                    DegenerateTargetError);
}

TEST_CASE("asymptotic rate and nu are reciprocal-symmetric") {
    std::mt19937 rng(14);
    for (int i = 0; i < 200; ++i) {
        const ProbVec p = random_dist(rng, 3);
        const ProbVec q = random_dist(rng, 4);
        const double r1 = asymptotic_rate(p, q, ResourceTheory::Entanglement);
        const double r2 = asymptotic_rate(q, p, ResourceTheory::Entanglement);
        CHECK(r1 * r2 == doctest::Approx(1.0).epsilon(1e-10));
        const double n1 =
            irreversibility_parameter(p, q, ResourceTheory::Entanglement);
        const double n2 =
            irreversibility_parameter(q, p, ResourceTheory::Entanglement);
        CHECK(n1 * n2 == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("irreversibility parameter fixtures") {
    CHECK(std::abs(irreversibility_parameter(ProbVec(kPsi1), ProbVec(kPhi),
                                             ResourceTheory::Entanglement) -
                   0.8843) < 2e-3);
    CHECK(std::abs(irreversibility_parameter(ProbVec(kPsi2), ProbVec(kPhi),
                                             ResourceTheory::Entanglement) -
                   1.1434) < 2e-3);
    CHECK(irreversibility_parameter(ProbVec(kPhi), ProbVec(kPhi),
                                    ResourceTheory::Entanglement) ==
          doctest::Approx(1.0));
}

TEST_CASE("fidelity") {
    const ProbVec p({0.5, 0.5});
    CHECK(fidelity(p, p) == doctest::Approx(1.0));
    CHECK(fidelity(ProbVec({1.0, 0.0}), ProbVec({0.0, 1.0})) ==
          doctest::Approx(0.0));
    CHECK(fidelity(p, ProbVec({1.0, 0.0})) == doctest::Approx(0.5));
    // Symmetry, permutation invariance, zero-padding.
    std::mt19937 rng(15);
    for (int i = 0; i < 100; ++i) {
        const ProbVec a = random_dist(rng, 4);
        const ProbVec b = random_dist(rng, 4);
        CHECK(fidelity(a, b) == doctest::Approx(fidelity(b, a)));
        CHECK(fidelity(a, b) <= 1.0 + 1e-12);
        const ProbVec a_perm({a[3], a[2], a[1], a[0]});
        const ProbVec b_perm({b[3], b[2], b[1], b[0]});
        CHECK(fidelity(a_perm, b_perm) == doctest::Approx(fidelity(a, b)));
    }
    CHECK(fidelity(ProbVec({1.0}), ProbVec({0.5, 0.5})) == doctest::Approx(0.5));
}

TEST_CASE("thermal qubit distribution") {
    const ProbVec g = gibbs_qubit(10.0, 1.0);
    CHECK(g[0] == doctest::Approx(0.52498).epsilon(1e-5));
    CHECK(g[1] == doctest::Approx(0.47502).epsilon(1e-5));
    const ProbVec flat = gibbs_qubit(3.0, 0.0);
    CHECK(flat[0] == doctest::Approx(0.5));
    const ProbVec cold = gibbs_qubit(0.01, 1.0);
    CHECK(cold[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cold[1] < 1e-12);
}

TEST_CASE("resource stats pick the right functionals") {
    const ProbVec p({0.9, 0.1}, gibbs_qubit(10.0, 1.0).probs());
    const ResourceStats thermo = resource_stats(p, ResourceTheory::Thermodynamic);
    CHECK(thermo.mean ==
          doctest::Approx(relative_entropy(p, ProbVec(p.gibbs()))));
    const ResourceStats ent = resource_stats(p, ResourceTheory::Entanglement);
    CHECK(ent.mean == doctest::Approx(shannon_entropy(p)));
    CHECK(ent.variance == doctest::Approx(entropy_variance(p)));
}
