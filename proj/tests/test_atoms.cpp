#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rescon/atom_dist.hpp"
#include "rescon/functionals.hpp"

using namespace rescon;

namespace {

ProbVec random_dist(std::mt19937& rng, std::size_t dim) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
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

}  // namespace

TEST_CASE("iid power of a fair coin merges into one atom") {
    const AtomDist d = iid_power(ProbVec({0.5, 0.5}), 2);
    REQUIRE(d.atom_count() == 1);
    CHECK(std::exp(d.atoms()[0].log_mult) == doctest::Approx(4.0));
    CHECK(std::exp(d.atoms()[0].log_p) == doctest::Approx(0.25));
    CHECK(d.total_probability() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d.total_reference_mass() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("single copy reproduces the base entries") {
    const ProbVec base({0.7, 0.2, 0.1});
    const AtomDist d = iid_power(base, 1);
    REQUIRE(d.atom_count() == 3);
    const ProbVec back = d.expand();
    double total = 0.0;
    for (std::size_t i = 0; i < back.size(); ++i) {
        total += back[i];
    }
    CHECK(total == doctest::Approx(1.0));
    CHECK(shannon_entropy(back) == doctest::Approx(shannon_entropy(base)));
}

TEST_CASE("qutrit power atom count equals the composition count") {
    const AtomDist d = iid_power(ProbVec({0.5121, 0.3300, 0.1579}), 30);
    CHECK(d.atom_count() == 496);  // C(32, 2)
    CHECK(d.total_probability() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("support restriction skips zero outcomes") {
    // A 4-outcome base with a point-mass factor behaves like a 2-outcome
    // enumeration: n + 1 atoms at any n.
    const ProbVec working = gibbs_qubit(1.0, 1.0);
    const ProbVec joint = ProbVec::tensor(working, ProbVec({1.0, 0.0}));
    const ProbVec gibbs = ProbVec::tensor(gibbs_qubit(10.0, 1.0),
                                          gibbs_qubit(10.0, 0.5));
    const ProbVec base(joint.probs(), gibbs.probs());
    const AtomDist d = iid_power(base, 200);
    CHECK(d.atom_count() == 201);
    CHECK(d.total_probability() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("atom cap raises an overflow guard") {
    CHECK_THROWS_AS(iid_power(ProbVec({0.25, 0.25, 0.25, 0.25}), 200, 1e4),
                    OverflowGuardError);
}

TEST_CASE("product with a point mass only shifts the reference") {
    const AtomDist x = iid_power(ProbVec({0.6, 0.4}, {0.3, 0.7}), 3);
    const AtomDist point = iid_power(ProbVec({1.0, 0.0}, {0.9, 0.1}), 1);
    const AtomDist prod = product(x, point);
    REQUIRE(prod.atom_count() == x.atom_count());
    for (std::size_t i = 0; i < prod.atom_count(); ++i) {
        CHECK(prod.atoms()[i].log_p ==
              doctest::Approx(x.atoms()[i].log_p).epsilon(1e-12));
        CHECK(prod.atoms()[i].log_g ==
              doctest::Approx(x.atoms()[i].log_g + std::log(0.9)));
    }
}

TEST_CASE("products stay normalized") {
    const ProbVec base({0.5121, 0.3300, 0.1579});
    const AtomDist prod = product(iid_power(base, 5), iid_power(base, 7));
    CHECK(prod.total_probability() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(prod.total_reference_mass() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("mixing factor endpoints") {
    const ProbVec a({0.8, 0.2});
    const ProbVec b({0.6, 0.4});
    const AtomDist d0 = mixed_power(a, b, 5, 0.0);
    const AtomDist d1 = mixed_power(a, b, 5, 1.0);
    const AtomDist ref0 = iid_power(b, 5);
    const AtomDist ref1 = iid_power(a, 5);
    REQUIRE(d0.atom_count() == ref0.atom_count());
    REQUIRE(d1.atom_count() == ref1.atom_count());
    for (std::size_t i = 0; i < d0.atom_count(); ++i) {
        CHECK(d0.atoms()[i].log_p == doctest::Approx(ref0.atoms()[i].log_p));
    }
    for (std::size_t i = 0; i < d1.atom_count(); ++i) {
        CHECK(d1.atoms()[i].log_p == doctest::Approx(ref1.atoms()[i].log_p));
    }
}

TEST_CASE("mixing identical bases is plain i.i.d.") {
    const ProbVec a({0.8, 0.2});
    const AtomDist mixed = mixed_power(a, a, 6, 0.5);
    const AtomDist plain = iid_power(a, 6);
    REQUIRE(mixed.atom_count() == plain.atom_count());
    for (std::size_t i = 0; i < mixed.atom_count(); ++i) {
        CHECK(mixed.atoms()[i].log_p ==
              doctest::Approx(plain.atoms()[i].log_p).epsilon(1e-12));
        CHECK(mixed.atoms()[i].log_mult ==
              doctest::Approx(plain.atoms()[i].log_mult).epsilon(1e-12));
    }
}

TEST_CASE("entropy additivity through expansion") {
    std::mt19937 rng(21);
    for (int i = 0; i < 20; ++i) {
        const ProbVec base = random_dist(rng, 2 + i % 3);
        const std::int64_t n = 2 + i % 4;
        const ProbVec expanded = iid_power(base, n).expand();
        CHECK(shannon_entropy(expanded) ==
              doctest::Approx(static_cast<double>(n) * shannon_entropy(base))
                  .epsilon(1e-8));
        CHECK(entropy_variance(expanded) ==
              doctest::Approx(static_cast<double>(n) * entropy_variance(base))
                  .epsilon(1e-8));
    }
}

TEST_CASE("relative entropy additivity through expansion") {
    const ProbVec base({0.9, 0.1}, gibbs_qubit(10.0, 1.0).probs());
    const ProbVec gamma(base.gibbs());
    for (std::int64_t n : {2, 3, 5}) {
        const ProbVec expanded = iid_power(base, n).expand();
        const ProbVec gamma_n(expanded.gibbs());
        CHECK(relative_entropy(expanded, gamma_n) ==
              doctest::Approx(static_cast<double>(n) *
                              relative_entropy(base, gamma))
                  .epsilon(1e-8));
    }
}

TEST_CASE("merging is idempotent") {
    const AtomDist d = iid_power(ProbVec({0.5, 0.3, 0.2}), 6);
    const AtomDist remerged(d.atoms(), d.log_ref_scale(), d.ref_kind());
    CHECK(remerged.atom_count() == d.atom_count());
    CHECK(remerged.total_probability() ==
          doctest::Approx(d.total_probability()).epsilon(1e-9));
    CHECK(remerged.total_reference_mass() ==
          doctest::Approx(d.total_reference_mass()).epsilon(1e-9));
}

TEST_CASE("log-sum-exp") {
    CHECK(log_sum_exp({std::log(0.25), std::log(0.75)}) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(log_sum_exp({-std::numeric_limits<double>::infinity()}) ==
          -std::numeric_limits<double>::infinity());
    CHECK(log_sum_exp({1000.0, 1000.0}) ==
          doctest::Approx(1000.0 + std::log(2.0)));
}
