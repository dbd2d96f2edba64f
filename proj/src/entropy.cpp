#include "sga/entropy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sga {

namespace {

constexpr double kLn2 = 0.6931471805599453;

void require_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("entropy: p must lie in [0,1]");
}

// Kahan running sum.
struct Accumulator {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

} // namespace

double h2_bernoulli(double p) {
    require_probability(p);
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

double h2_binomial(std::uint64_t n, double p) {
    require_probability(p);
    if (n == 0 || p == 0.0 || p == 1.0) return 0.0;
    const double lg_n1 = std::lgamma(static_cast<double>(n) + 1.0);
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    Accumulator acc;
    for (std::uint64_t k = 0; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        const double ln_pmf = lg_n1 - std::lgamma(kd + 1.0) -
                              std::lgamma(static_cast<double>(n - k) + 1.0) + kd * lp +
                              (static_cast<double>(n) - kd) * lq;
        if (ln_pmf < -700.0) continue; // below double range; contributes nothing
        const double pmf = std::exp(ln_pmf);
        acc.add(-pmf * ln_pmf / kLn2);
    }
    return acc.sum;
}

double log2_factorial(std::uint64_t m) {
    return std::lgamma(static_cast<double>(m) + 1.0) / kLn2;
}

double h2_unlabeled_gnp(std::uint64_t m, double p) {
    require_probability(p);
    if (m < 1) throw std::invalid_argument("entropy: m must be >= 1");
    const double md = static_cast<double>(m);
    return md * (md - 1.0) / 2.0 * h2_bernoulli(p) - log2_factorial(m);
}

bool unlabeled_regime_ok(std::uint64_t m, double p) {
    const double md = static_cast<double>(m);
    return std::min(md * p, md - md * p) > std::log(md);
}

double h2_card_upper(std::uint64_t n, double p) {
    require_probability(p);
    if (n == 0) return 0.0;
    const std::uint64_t deg = n - 1;
    const double h2p = h2_bernoulli(p);
    double conditional = 0.0;
    if (deg >= 2 && p > 0.0 && p < 1.0 && h2p > 0.0) {
        const double lg_n1 = std::lgamma(static_cast<double>(deg) + 1.0);
        const double lp = std::log(p);
        const double lq = std::log1p(-p);
        Accumulator acc;
        for (std::uint64_t k = 2; k <= deg; ++k) {
            const double kd = static_cast<double>(k);
            const double ln_pmf = lg_n1 - std::lgamma(kd + 1.0) -
                                  std::lgamma(static_cast<double>(deg - k) + 1.0) + kd * lp +
                                  (static_cast<double>(deg) - kd) * lq;
            if (ln_pmf < -700.0) continue;
            acc.add(std::exp(ln_pmf) * kd * (kd - 1.0) / 2.0 * h2p);
        }
        conditional = acc.sum;
    }
    return conditional + h2_binomial(deg, p);
}

EntropyProfile entropy_profile(std::uint64_t n, double p) {
    EntropyProfile out;
    out.n = n;
    out.p = p;
    const double nd = static_cast<double>(n);
    out.h_graph_labeled = nd * (nd - 1.0) / 2.0 * h2_bernoulli(p);
    // Far outside its regime the unlabeled formula can dip below zero (the
    // permutation correction exceeds the labeled entropy); the profile clamps
    // at zero to keep entropies nonnegative. entropy_ratio stays unclamped so
    // the crossover locator sees the raw sign structure.
    out.h_graph_unlabeled = std::max(0.0, h2_unlabeled_gnp(n, p));
    out.h_card_upper = std::max(0.0, h2_card_upper(n, p));
    out.regime_ok = unlabeled_regime_ok(n, p);
    out.ratio = nd * out.h_card_upper / out.h_graph_unlabeled;
    if (out.ratio == 0.0) out.ratio = 0.0; // normalize -0
    if (std::isnan(out.ratio)) out.ratio = std::numeric_limits<double>::quiet_NaN();
    return out;
}

double entropy_ratio(std::uint64_t n, double p) {
    return static_cast<double>(n) * h2_card_upper(n, p) / h2_unlabeled_gnp(n, p);
}

double crossover_p(std::uint64_t n) {
    if (n < 100) throw std::invalid_argument("crossover: n must be >= 100");
    const double nd = static_cast<double>(n);
    // Search bracket [n^-0.9, n^-0.1] in log space. At the extreme sparse
    // end the unlabeled formula leaves its validity regime (mp <~ log m, the
    // permutation correction eats the whole entropy) and the ratio can
    // spuriously exceed 1 there, so the locator targets the upward crossing
    // adjacent to the dense side: scan down from n^-0.1 to the first point
    // with ratio < 1, then bisect that sign change.
    const double t_sparse = -0.9 * std::log(nd);
    const double t_dense = -0.1 * std::log(nd);
    if (!(entropy_ratio(n, std::exp(t_dense)) > 1.0))
        throw std::runtime_error("crossover: ratio not above 1 at the dense end of the bracket");
    constexpr int kGrid = 96;
    double above = t_dense;
    double below = 0.0;
    bool found = false;
    for (int i = 1; i <= kGrid; ++i) {
        const double t = t_dense + (t_sparse - t_dense) * i / kGrid;
        if (entropy_ratio(n, std::exp(t)) < 1.0) {
            below = t;
            found = true;
            break;
        }
        above = t;
    }
    if (!found) throw std::runtime_error("crossover: ratio does not cross 1 inside the bracket");
    for (int it = 0; it < 200 && above - below > 1e-14; ++it) {
        const double tm = 0.5 * (below + above);
        (entropy_ratio(n, std::exp(tm)) < 1.0 ? below : above) = tm;
    }
    return std::exp(0.5 * (below + above));
}

} // namespace sga
