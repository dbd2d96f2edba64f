#pragma once

#include <cstdint>

namespace sga {

// All entropies are in bits. The module computes the explicit finite
// expressions only — every asymptotic o(1)/O(1) term of the source formulas
// is dropped, so each claim here is about the implemented arithmetic, not a
// limit statement.

// -p log2 p - (1-p) log2(1-p), with 0 log 0 = 0. Pre: p in [0,1].
double h2_bernoulli(double p);

// Entropy of Binomial(n, p), exact summation with log-space pmf terms.
double h2_binomial(std::uint64_t n, double p);

// log2(m!) via log-gamma.
double log2_factorial(std::uint64_t m);

// Unlabeled-G(m,p) entropy: C(m,2) h2(p) - log2 m! (vertex-permutation
// correction). Valid as an entropy formula when min(mp, m(1-p)) >> log m;
// outside that regime the value is still computed (it can go negative).
double h2_unlabeled_gnp(std::uint64_t m, double p);

// Whether (m, p) is inside the unlabeled-formula validity regime,
// min(mp, m - mp) > ln m.
bool unlabeled_regime_ok(std::uint64_t m, double p);

// Chain-rule upper bound on the entropy of the rooted 1-neighbourhood card
// of a uniform vertex in G(n,p): sum_k P{Bin(n-1,p)=k} C(k,2) h2(p)
// + h2_binomial(n-1, p). Each conditional card entropy is bounded by the
// labeled-graph entropy on k vertices. Pre: p in [0,1].
double h2_card_upper(std::uint64_t n, double p);

struct EntropyProfile {
    std::uint64_t n = 0;
    double p = 0;
    double h_graph_labeled = 0;   // C(n,2) h2(p)
    double h_graph_unlabeled = 0; // permutation correction applied, clamped at 0
    double h_card_upper = 0;      // clamped at 0
    double ratio = 0;             // n * h_card_upper / h_graph_unlabeled
    bool regime_ok = false;       // unlabeled formula validity at (n, p)
};

// Entropies in the profile are clamped at zero (the asymptotic formulas can
// go negative far outside their regimes); the ratio uses the clamped values.
EntropyProfile entropy_profile(std::uint64_t n, double p);

// n * h2_card_upper(n,p) / h2_unlabeled_gnp(n,p), unclamped.
double entropy_ratio(std::uint64_t n, double p);

// The density where entropy_ratio(n, p) rises through 1: below it the
// whole-graph entropy exceeds what n cards can carry, the regime of deck
// collisions. The locator scans a log grid over [n^-0.9, n^-0.1] downward
// from the dense end and bisects the first sign change, because at the
// extreme sparse end the unlabeled formula leaves its validity regime and
// the ratio can spuriously exceed 1 before the genuine crossing. Throws
// std::runtime_error when no crossing exists in the bracket,
// std::invalid_argument for n < 100.
double crossover_p(std::uint64_t n);

} // namespace sga
