#include "rrg/exactprob.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rrg/errors.hpp"

namespace rrg {

namespace {

Rational rat(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void check_ascending(const std::vector<int>& idx, long n, const char* what) {
    require(!idx.empty(), "slot tuple: empty tuple");
    require(idx.front() >= 2, "slot tuple: arrivals start at 2 (vertex 1 never attaches)");
    for (size_t i = 1; i < idx.size(); ++i)
        if (idx[i] <= idx[i - 1]) throw std::invalid_argument(std::string(what) + ": tuple must be strictly increasing");
    require(idx.back() <= n, "slot tuple: arrival beyond n");
}

}  // namespace

void validate_slot_tuple(const SlotTuple& st, bool need_second) {
    require(st.n >= 2, "slot tuple: n must be >= 2");
    check_ascending(st.indices, st.n, "slot tuple");
    if (need_second || !st.second.empty()) {
        require(!st.second.empty(), "slot tuple: second tuple required");
        check_ascending(st.second, st.n, "slot tuple (second)");
    }
    if (st.windowed) {
        require(st.window_base >= 1, "slot tuple: window base must be >= 1");
        require(st.window_width >= 1, "slot tuple: window width must be >= 1");
        require(st.window_offset >= 0 && st.window_offset < st.window_width,
                "slot tuple: window offset out of range");
        require(st.window_base + st.window_width < st.indices.front(),
                "slot tuple: root must arrive after the window");
        require(st.window_base + st.window_width + static_cast<int>(st.indices.size()) <= st.n,
                "slot tuple: window plus pattern does not fit below n");
    }
}

// ---- diamonds ---------------------------------------------------------------

Rational ua_diamond_term(long third_arrival, long fourth_arrival) {
    require(third_arrival >= 3, "ua_diamond_term: third arrival starts at 3");
    require(fourth_arrival > third_arrival, "ua_diamond_term: arrivals must increase");
    // 3(2a-5) ways to finish a diamond at the third arrival, over the two
    // pair choices C(a-1, 2), C(b-1, 2)
    Rational r(3 * (2 * third_arrival - 5));
    r /= binom(third_arrival - 1, 2);
    r /= binom(fourth_arrival - 1, 2);
    return r;
}

namespace {

// c(a) = sum over fourth arrivals of the pair factor: 12(2a-5)/((a-1)(a-2))
Rational diamond_row(long a) {
    return rat(12 * (2 * a - 5), (a - 1) * (a - 2));
}

}  // namespace

void ua_diamond_expectation_walk(long n_max,
                                 const std::function<void(long, const Rational&)>& emit) {
    require(n_max >= 4, "ua_diamond_expectation: n must be >= 4");
    // E X_n = sum_{a=3}^{n-1} c(a) (1/(a-1) - 1/(n-1)); keep the two partial
    // sums and the answer is O(1) rational work per n.
    Rational rows(0), rows_over(0);
    for (long n = 4; n <= n_max; ++n) {
        const long a = n - 1;
        Rational c = diamond_row(a);
        rows += c;
        rows_over += c / (a - 1);
        emit(n, rows_over - rows / (n - 1));
    }
}

Rational ua_diamond_expectation(long n) {
    Rational last(0);
    ua_diamond_expectation_walk(n, [&](long k, const Rational& v) {
        if (k == n) last = v;
    });
    return last;
}

LimitEstimate ua_diamond_limit(const Rational& eps) {
    require(sgn(eps) > 0, "ua_diamond_limit: eps must be positive");
    // Tail after row M: each row c(a)/(a-1) < 24/((a-1)(a-2)), telescoping to
    // 24/(M-1); choose M so that bound is <= eps.
    Rational inv = 24 / eps;
    long m_floor = static_cast<long>(mpz_get_si(BigInt(inv.get_num() / inv.get_den()).get_mpz_t()));
    long M = m_floor + 2;  // 24/(M-1) <= eps
    while (M - 1 < 3) ++M;
    Rational value(0);
    for (long a = 3; a <= M; ++a) value += diamond_row(a) / (a - 1);
    LimitEstimate est;
    est.value = value;
    est.tail_bound = rat(24, M - 1);
    est.target = "diamond-expectation-limit";
    return est;
}

// ---- cliques ----------------------------------------------------------------

namespace {

// binomial with the seed convention: contributes 1 while the top argument is
// still smaller than the bottom (arrival inside the seed clique)
BigInt seed_binom(long top, long bottom) {
    if (top < bottom) return 1;
    return binom(top, bottom);
}

// per-arrival factor of the clique probability for the j-th joining vertex
Rational clique_factor(long arrival, int j, int m) {
    Rational f(seed_binom(arrival - 1 - j, m - j));
    f /= seed_binom(arrival - 1, m);
    return f;
}

}  // namespace

Rational ua_clique_prob(const std::vector<int>& arrivals, int m) {
    require(m >= 1, "ua_clique_prob: m must be >= 1");
    require(static_cast<int>(arrivals.size()) == m + 1,
            "ua_clique_prob: need exactly m+1 arrivals");
    for (size_t i = 0; i < arrivals.size(); ++i) {
        require(arrivals[i] >= 1, "ua_clique_prob: arrivals start at 1");
        if (i) require(arrivals[i] > arrivals[i - 1], "ua_clique_prob: arrivals must increase");
    }
    Rational p(1);
    for (int j = 1; j <= m; ++j) p *= clique_factor(arrivals[static_cast<size_t>(j)], j, m);
    return p;
}

namespace {

// sum of prod_{j=level..m} clique_factor(u_{j+1}) over ascending tuples with
// u_{level+1} in [lo..n]
Rational clique_tail_sum(long lo, long n, int level, int m, const Rational& acc) {
    if (level > m) return acc;
    Rational total(0);
    for (long u = lo; u <= n - (m - level); ++u)
        total += clique_tail_sum(u + 1, n, level + 1, m, acc * clique_factor(u, level, m));
    return total;
}

Rational clique_expectation_impl(long n, int m, unsigned long long max_tuples, bool parallel) {
    require(m >= 1, "ua_clique_expectation: m must be >= 1");
    require(n >= m + 1, "ua_clique_expectation: n must be >= m+1");
    BigInt work = binom(n - 1, m);
    if (work > static_cast<unsigned long>(max_tuples) ||
        !work.fits_ulong_p()) {
        unsigned long long req = work.fits_ulong_p() ? mpz_get_ui(work.get_mpz_t()) : ~0ULL;
        throw BudgetExceeded("ua_clique_expectation: " + work.get_str() +
                                 " tuples exceed budget " + std::to_string(max_tuples),
                             req, max_tuples);
    }
    // the oldest clique vertex u_1 contributes no factor, only its count
    // (u_2 - 1 choices below u_2); partial sums per u_2 keep the parallel
    // reduction deterministic.
    const long lo = 2, hi = n - m + 1;
    std::vector<Rational> partial(static_cast<size_t>(std::max<long>(0, hi - lo + 1)));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (long u2 = lo; u2 <= hi; ++u2) {
        Rational head = Rational(u2 - 1) * clique_factor(u2, 1, m);
        partial[static_cast<size_t>(u2 - lo)] = clique_tail_sum(u2 + 1, n, 2, m, head);
    }
    Rational total(0);
    for (const Rational& p : partial) total += p;
    return total;
}

}  // namespace

Rational ua_clique_expectation(long n, int m, unsigned long long max_tuples) {
    return clique_expectation_impl(n, m, max_tuples, true);
}

Rational ua_clique_expectation_serial(long n, int m, unsigned long long max_tuples) {
    return clique_expectation_impl(n, m, max_tuples, false);
}

namespace {

// ascending tuples (u_{level+1} < ... < u_{m+1}) from [lo..n], multiplying
// m^j/(u_{j+1}-j)^j factors
Rational upper_tail_sum(long lo, long n, int level, int m, const Rational& acc) {
    if (level > m) return acc;
    Rational total(0);
    for (long u = lo; u <= n - (m - level); ++u) {
        Rational f = acc;
        BigInt num, den;
        mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(m),
                      static_cast<unsigned long>(level));
        mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(u - level),
                      static_cast<unsigned long>(level));
        f *= make_rational(num, den);
        total += upper_tail_sum(u + 1, n, level + 1, m, f);
    }
    return total;
}

}  // namespace

Rational ua_clique_upper(long n, int m, unsigned long long max_tuples) {
    require(m >= 1, "ua_clique_upper: m must be >= 1");
    require(n >= m + 1, "ua_clique_upper: n must be >= m+1");
    BigInt work(0);
    for (int k = 1; k <= m; ++k) work += binom(n - m, m + 1 - k);
    work += binom(n - m, m);
    if (!work.fits_ulong_p() || work > static_cast<unsigned long>(max_tuples)) {
        unsigned long long req = work.fits_ulong_p() ? mpz_get_ui(work.get_mpz_t()) : ~0ULL;
        throw BudgetExceeded("ua_clique_upper: " + work.get_str() + " tuples exceed budget " +
                                 std::to_string(max_tuples),
                             req, max_tuples);
    }
    Rational total(0);
    // tuples sharing k seed vertices
    for (int k = 1; k <= m; ++k)
        total += Rational(binom(m, k)) * upper_tail_sum(m + 1, n, k, m, Rational(1));
    // tuples fully past the seed: u_1 contributes only its count below u_2
    for (long u2 = m + 1; u2 <= n - m + 1; ++u2) {
        long count = u2 - (m + 1);
        if (count <= 0) continue;
        BigInt num, den;
        mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(m), 1);
        mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(u2 - 1), 1);
        Rational head = Rational(count) * make_rational(num, den);
        total += upper_tail_sum(u2 + 1, n, 2, m, head);
    }
    return total;
}

long markov_threshold(const Rational& beta_upper, const Rational& eps, TailStatistic stat,
                      int m) {
    require(sgn(beta_upper) > 0, "markov_threshold: expectation bound must be positive");
    require(sgn(eps) > 0, "markov_threshold: eps must be positive");
    const long start = stat == TailStatistic::Diamond ? 4 : m + 2;
    for (long k = start;; ++k) {
        long g = stat == TailStatistic::Diamond
                     ? static_cast<long>((k - 2) * (k - 3) / 2)
                     : k - m;
        // strict: Markov gives P(X >= g) <= beta/g < eps
        if (Rational(g) * eps > beta_upper) return k;
    }
}

// ---- uniform attachment pendants -------------------------------------------

Rational ua_pendant_prob_product(const SlotTuple& st) {
    validate_slot_tuple(st);
    const auto& idx = st.indices;
    const int v = static_cast<int>(idx.size());
    Rational p(1);
    for (int s = 1; s <= v; ++s) {
        p /= idx[static_cast<size_t>(s) - 1] - 1;
        const long next = (s == v) ? st.n + 1 : idx[static_cast<size_t>(s)];
        for (long t = idx[static_cast<size_t>(s) - 1] + 1; t < next; ++t)
            p *= rat(t - 1 - s, t - 1);
    }
    return p;
}

Rational ua_pendant_prob_closed(int order, long n) {
    require(order >= 1, "ua_pendant_prob_closed: order must be >= 1");
    require(n > order, "ua_pendant_prob_closed: need n > order");
    Rational p(1);
    for (long j = n - order; j <= n - 1; ++j) p /= j;
    return p;
}

Rational ua_windowed_expectation(int base, int width, int order, long n) {
    require(base >= 1 && width >= 1, "ua_windowed_expectation: base and width must be >= 1");
    require(order >= 1, "ua_windowed_expectation: order must be >= 1");
    require(n >= base + width + order, "ua_windowed_expectation: n too small for the window");
    return Rational(binom(n - base - width, order)) * width *
           ua_pendant_prob_closed(order, n);
}

Rational ua_windowed_limit(int width, int order) {
    require(width >= 1, "ua_windowed_limit: width must be >= 1");
    require(order >= 1, "ua_windowed_limit: order must be >= 1");
    return make_rational(width, factorial(static_cast<unsigned long>(order)));
}

Rational ua_joint_prob(int order, long n, int width) {
    require(order >= 1, "ua_joint_prob: order must be >= 1");
    require(width >= 1, "ua_joint_prob: width must be >= 1");
    require(n > 2 * order, "ua_joint_prob: need n > 2*order");
    Rational p(static_cast<long>(width) * width);
    for (long j = n - 2 * order; j <= n - 1; ++j) p /= j;
    return p;
}

// ---- preferential attachment pendants ---------------------------------------

namespace {

void check_pattern_tuple(const RootedPattern& pattern, const std::vector<int>& idx) {
    require(static_cast<int>(idx.size()) == pattern.order(),
            "pa pendant: tuple length must equal the pattern order");
}

// avoidance factors between consecutive tuple arrivals: the hanging component
// holds `load` degree units, each later outsider must miss it
Rational avoidance_run(long from, long to, long load) {
    Rational p(1);
    for (long t = from; t < to; ++t) p *= rat(2 * (t - 1) - load, 2 * (t - 1));
    return p;
}

}  // namespace

Rational pa_pendant_prob_product(const RootedPattern& pattern, const SlotTuple& st) {
    validate_slot_tuple(st);
    check_pattern_tuple(pattern, st.indices);
    const auto& idx = st.indices;
    const int v = static_cast<int>(idx.size());
    // root segment: component is {i_1} with its pending edge (one degree unit)
    Rational p = avoidance_run(idx[0] + 1, v == 1 ? st.n + 1 : idx[1], 1);
    for (int s = 2; s <= v; ++s) {
        p *= rat(pattern.weight[s], 2L * (idx[static_cast<size_t>(s) - 1] - 1));
        const long next = (s == v) ? st.n + 1 : idx[static_cast<size_t>(s)];
        p *= avoidance_run(idx[static_cast<size_t>(s) - 1] + 1, next, 2 * s - 1);
    }
    return p;
}

Rational pa_pendant_prob_closed(const RootedPattern& pattern, int root_arrival, long n) {
    const int v = pattern.order();
    require(root_arrival >= 2, "pa_pendant_prob_closed: root arrival starts at 2");
    require(root_arrival + v - 1 <= n, "pa_pendant_prob_closed: pattern does not fit");
    // D * (2(n-v)-1)!! / (2(i1-1)-1)!! / (2^(n-i1) (n-1)!/(i1-1)!)
    Rational p(pattern.weight_product);
    p *= odd_double_factorial(n - v - 1);
    p /= odd_double_factorial(root_arrival - 2);
    BigInt pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(n - root_arrival));
    p /= pow2;
    p *= factorial(static_cast<unsigned long>(root_arrival - 1));
    p /= factorial(static_cast<unsigned long>(n - 1));
    return p;
}

double pa_pendant_prob_asymptotic(const RootedPattern& pattern, int root_arrival, long n) {
    const int v = pattern.order();
    require(root_arrival >= 2, "pa_pendant_prob_asymptotic: root arrival starts at 2");
    require(n >= root_arrival, "pa_pendant_prob_asymptotic: n too small");
    const double logd = std::log(pattern.weight_product.get_d());
    const double lg = logd - (v - 1) * std::log(2.0) +
                      0.5 * (std::log(static_cast<double>(root_arrival)) -
                             (2.0 * v - 1.0) * std::log(static_cast<double>(n)));
    return std::exp(lg);
}

Rational pa_expectation_exact(const RootedPattern& pattern, long n,
                              unsigned long long max_tuples) {
    const int v = pattern.order();
    require(n >= v + 1, "pa_expectation_exact: n must exceed the pattern order");
    BigInt work = binom(n, v);
    if (!work.fits_ulong_p() || work > static_cast<unsigned long>(max_tuples)) {
        unsigned long long req = work.fits_ulong_p() ? mpz_get_ui(work.get_mpz_t()) : ~0ULL;
        throw BudgetExceeded("pa_expectation_exact: " + work.get_str() +
                                 " tuples exceed budget " + std::to_string(max_tuples),
                             req, max_tuples);
    }
    // the closed form depends only on i_1: the other v-1 arrivals collapse
    // to a binomial count
    Rational total(0);
    for (int i1 = 2; i1 <= n - v + 1; ++i1)
        total += Rational(binom(n - i1, v - 1)) * pa_pendant_prob_closed(pattern, i1, n);
    return total;
}

double pa_expectation_asymptotic(const RootedPattern& pattern, long n) {
    const int v = pattern.order();
    return 2.0 * pattern.weight_product.get_d() * static_cast<double>(n) /
           odd_double_factorial(v).get_d();
}

Rational pa_joint_prob(const RootedPattern& pattern, const SlotTuple& st) {
    validate_slot_tuple(st, /*need_second=*/true);
    check_pattern_tuple(pattern, st.indices);
    check_pattern_tuple(pattern, st.second);

    // overlapping tuples cannot both be the hanging component
    std::vector<int> merged = st.indices;
    merged.insert(merged.end(), st.second.begin(), st.second.end());
    std::sort(merged.begin(), merged.end());
    for (size_t i = 1; i < merged.size(); ++i)
        if (merged[i] == merged[i - 1]) return Rational(0);

    const int v = pattern.order();
    const std::vector<int>& a = st.indices[0] < st.second[0] ? st.indices : st.second;
    const std::vector<int>& b = st.indices[0] < st.second[0] ? st.second : st.indices;

    // mu = how many first-copy vertices precede the second root
    int mu = 0;
    while (mu < v && a[static_cast<size_t>(mu)] < b[0]) ++mu;

    Rational p(1);
    for (int s = 2; s <= v; ++s) {
        p *= rat(pattern.weight[s], 2L * (a[static_cast<size_t>(s) - 1] - 1));
        p *= rat(pattern.weight[s], 2L * (b[static_cast<size_t>(s) - 1] - 1));
    }
    for (int l = 1; l <= 2 * v; ++l) {
        const long from = merged[static_cast<size_t>(l) - 1] + 1;
        const long to = (l == 2 * v) ? st.n + 1 : merged[static_cast<size_t>(l)];
        p *= avoidance_run(from, to, l <= mu ? 2L * l - 1 : 2L * l - 2);
    }
    return p;
}

Rational beta_three_halves(int order) {
    require(order >= 1, "beta_three_halves: order must be >= 1");
    BigInt pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(order));
    return make_rational(pow2 * factorial(static_cast<unsigned long>(order - 1)),
                         odd_double_factorial(order));
}

}  // namespace rrg
