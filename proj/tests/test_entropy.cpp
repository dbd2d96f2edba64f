#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sga/entropy.hpp"

using namespace sga;

TEST_CASE("binary entropy endpoints, peak, symmetry") {
    CHECK(h2_bernoulli(0.0) == 0.0);
    CHECK(h2_bernoulli(1.0) == 0.0);
    CHECK(h2_bernoulli(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    for (const double p : {0.01, 0.1, 0.3, 0.47})
        CHECK(h2_bernoulli(p) == doctest::Approx(h2_bernoulli(1.0 - p)).epsilon(1e-14));
    CHECK(h2_bernoulli(0.25) < h2_bernoulli(0.4));
    CHECK_THROWS_AS(h2_bernoulli(-0.01), std::invalid_argument);
    CHECK_THROWS_AS(h2_bernoulli(1.01), std::invalid_argument);
}

TEST_CASE("binomial entropy: frozen values and structure") {
    CHECK(h2_binomial(10, 0.5) == doctest::Approx(2.706428963227335).epsilon(1e-13));
    CHECK(h2_binomial(10, 0.3) == doctest::Approx(2.5666681391575037).epsilon(1e-13));
    // p <-> 1-p relabels the support
    CHECK(h2_binomial(10, 0.3) == doctest::Approx(h2_binomial(10, 0.7)).epsilon(1e-12));
    // a single trial reduces to the Bernoulli case
    CHECK(h2_binomial(1, 0.3) == doctest::Approx(h2_bernoulli(0.3)).epsilon(1e-14));
    // degenerate distributions carry no information
    CHECK(h2_binomial(50, 0.0) == 0.0);
    CHECK(h2_binomial(50, 1.0) == 0.0);
    // entropy grows with the number of trials at fixed p
    CHECK(h2_binomial(20, 0.5) > h2_binomial(10, 0.5));
    CHECK_THROWS_AS(h2_binomial(10, -0.5), std::invalid_argument);
}

TEST_CASE("log2 factorial") {
    CHECK(log2_factorial(0) == doctest::Approx(0.0));
    CHECK(log2_factorial(1) == doctest::Approx(0.0));
    CHECK(log2_factorial(5) == doctest::Approx(6.906890595608519).epsilon(1e-14));
    CHECK(std::exp2(log2_factorial(10)) == doctest::Approx(3628800.0).epsilon(1e-10));
}

TEST_CASE("unlabeled graph entropy") {
    const std::uint64_t m = 10'000;
    const double p = 0.01;
    CHECK(h2_unlabeled_gnp(m, p) == doctest::Approx(3920794.686113198).epsilon(1e-12));
    // definition: pair count times h2 minus the permutation correction
    const double expected =
        (static_cast<double>(m) * (m - 1) / 2.0) * h2_bernoulli(p) - log2_factorial(m);
    CHECK(h2_unlabeled_gnp(m, p) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(unlabeled_regime_ok(m, p)); // m p = 100 >> ln m = 9.2
    // far outside the regime the formula goes negative and says so
    CHECK(h2_unlabeled_gnp(100, 1e-8) < 0.0);
    CHECK_FALSE(unlabeled_regime_ok(100, 1e-8));
    CHECK_THROWS_AS(h2_unlabeled_gnp(0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(h2_unlabeled_gnp(10, 2.0), std::invalid_argument);
}

TEST_CASE("card entropy upper bound") {
    // n = 3: the card is Bin(2,1/2) root degree plus one possible edge between
    // the two neighbours, present in a quarter of the outcomes:
    // 1/4 * 1 + h2(Bin(2,1/2)) = 1/4 + 3/2
    CHECK(h2_card_upper(3, 0.5) == doctest::Approx(1.75).epsilon(1e-14));
    CHECK(h2_card_upper(3, 0.3) == doctest::Approx(1.4218979793921476).epsilon(1e-13));
    CHECK(h2_card_upper(4, 0.5) == doctest::Approx(2.561278124459133).epsilon(1e-13));

    // the binomial moment identity collapses the sum in closed form:
    // sum_k pmf(k) C(k,2) = C(n-1,2) p^2
    const std::pair<std::uint64_t, double> cases[] = {{4, 0.5}, {30, 0.2}, {101, 0.07}};
    for (const auto& [n, p] : cases) {
        const double closed =
            h2_bernoulli(p) * (static_cast<double>(n - 1) * (n - 2) / 2.0) * p * p +
            h2_binomial(n - 1, p);
        CHECK(h2_card_upper(n, p) == doctest::Approx(closed).epsilon(1e-11));
    }
    CHECK(h2_card_upper(1, 0.5) == 0.0); // no other vertices, nothing to encode
    CHECK_THROWS_AS(h2_card_upper(3, -1.0), std::invalid_argument);
}

TEST_CASE("entropy profile clamps and flags") {
    const EntropyProfile in_regime = entropy_profile(10'000, 0.01);
    CHECK(in_regime.regime_ok);
    CHECK(in_regime.h_graph_labeled ==
          doctest::Approx((10'000.0 * 9'999 / 2) * h2_bernoulli(0.01)).epsilon(1e-13));
    CHECK(in_regime.h_graph_unlabeled == doctest::Approx(3920794.686113198).epsilon(1e-12));
    CHECK(in_regime.ratio == doctest::Approx(1.0436787947148405).epsilon(1e-12));

    // outside the regime the unlabeled formula is negative; the profile
    // clamps it to zero and the flag says the formula is off-label
    const EntropyProfile off = entropy_profile(100, 1e-8);
    CHECK_FALSE(off.regime_ok);
    CHECK(off.h_graph_unlabeled == 0.0);
    CHECK(off.h_card_upper >= 0.0);

    // degenerate densities: everything is deterministic
    const EntropyProfile zero = entropy_profile(1000, 0.0);
    CHECK(zero.h_graph_labeled == 0.0);
    CHECK(zero.h_card_upper == 0.0);
    CHECK_FALSE(std::signbit(zero.ratio)); // 0/0 normalized, never -nan
    const EntropyProfile one = entropy_profile(1000, 1.0);
    CHECK(one.h_graph_labeled == 0.0);
}

TEST_CASE("entropy ratio and its crossover") {
    // the unclamped ratio agrees with its definition
    CHECK(entropy_ratio(10'000, 0.01) ==
          doctest::Approx(10'000 * h2_card_upper(10'000, 0.01) / h2_unlabeled_gnp(10'000, 0.01))
              .epsilon(1e-13));

    const double star = crossover_p(1000);
    CHECK(star == doctest::Approx(0.029426811478895115).epsilon(1e-9));
    // the located point is a genuine sign change of ratio - 1
    CHECK(entropy_ratio(1000, star * 1.01) > 1.0);
    CHECK(entropy_ratio(1000, star * 0.99) < 1.0);
    // and it sits near the inverse square root of n
    const double scale = star * std::sqrt(1000.0);
    CHECK(scale > 1.0 / 3.0);
    CHECK(scale < 3.0 * std::log(1000.0));

    CHECK_THROWS_AS(crossover_p(99), std::invalid_argument);
}
