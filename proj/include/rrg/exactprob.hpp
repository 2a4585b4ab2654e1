#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rrg/graph.hpp"
#include "rrg/rational.hpp"

namespace rrg {

inline constexpr unsigned long long kDefaultMaxTuples = 10'000'000ULL;

// Arrival positions for the pendant-copy formulas: a strictly increasing
// tuple i_1 < ... < i_v of arrival times in a tree grown to n vertices;
// `second` optionally carries a disjoint tuple for joint events. The window
// fields describe which early vertex the copy hangs from: admissible roots
// satisfy i_1 > window_base + window_width.
struct SlotTuple {
    std::vector<int> indices;
    std::vector<int> second;
    long n = 0;
    bool windowed = false;
    int window_base = 0;
    int window_width = 0;
    int window_offset = 0;  // 0-based slot inside the window
};

// Throws std::invalid_argument when the tuple is not strictly increasing in
// [2, n], the second tuple overlaps the first, or the window is inadmissible.
void validate_slot_tuple(const SlotTuple& st, bool need_second = false);

struct LimitEstimate {
    Rational value;
    Rational tail_bound;  // the limit lies in [value, value + tail_bound]
    std::string target;
};

// ---- uniform attachment, m = 2: diamonds ----------------------------------
//
// A diamond is a 4-vertex subgraph with exactly five edges. In the m = 2
// process each diamond is determined by the arrival positions of its two
// youngest vertices; ua_diamond_term(a3, a4) is the expected number of
// diamonds whose third and fourth vertices arrive at positions a3 < a4.

Rational ua_diamond_term(long third_arrival, long fourth_arrival);

// Expected diamond count after n arrivals (n >= 4); exact, O(n).
Rational ua_diamond_expectation(long n);

// Calls emit(n, E[diamonds at n]) for every n in [4, n_max] with O(1)
// rational work per step; used for long trajectories where materializing
// all values would be wasteful.
void ua_diamond_expectation_walk(long n_max,
                                 const std::function<void(long, const Rational&)>& emit);

// Monotone limit of ua_diamond_expectation with a proven tail bound:
// the limit lies in [value, value + tail_bound] and tail_bound <= eps.
LimitEstimate ua_diamond_limit(const Rational& eps);

// ---- uniform attachment, general m: (m+1)-cliques --------------------------

// Probability that the m+1 vertices arriving at the given ascending
// positions form a clique; positions at most m+1 lie in the seed.
Rational ua_clique_prob(const std::vector<int>& arrivals, int m);

// Exact expected number of (m+1)-cliques after n arrivals. Cost is one
// m-tuple enumeration (the oldest clique vertex sums out); refuses with
// BudgetExceeded when that exceeds max_tuples. The default runs OpenMP
// chunks; the serial variant is the reference implementation and returns
// the identical rational.
Rational ua_clique_expectation(long n, int m,
                               unsigned long long max_tuples = kDefaultMaxTuples);
Rational ua_clique_expectation_serial(long n, int m,
                                      unsigned long long max_tuples = kDefaultMaxTuples);

// Closed-form majorant of the clique expectation (sum of the dominating
// per-tuple bound plus the seed-overlap split); exceeds the exact value
// everywhere and stays bounded in n.
Rational ua_clique_upper(long n, int m, unsigned long long max_tuples = kDefaultMaxTuples);

// Smallest k such that a Markov bound with the given expectation majorant
// pushes the tail under eps: g(k) * eps > beta_upper, with g the
// deterministic ceiling of the matching statistic at k vertices.
enum class TailStatistic { Diamond, Clique };
long markov_threshold(const Rational& beta_upper, const Rational& eps, TailStatistic stat,
                      int m = 2);

// ---- uniform attachment, m = 1: pendant copies ----------------------------
//
// The copy hangs from a window vertex: i_1 attaches to a fixed early vertex,
// i_s attaches to an earlier slot, and between arrivals nobody else may touch
// the growing component.

// Step-by-step product for one tuple; equals the closed form for every
// admissible tuple.
Rational ua_pendant_prob_product(const SlotTuple& st);

// 1 / ((n-v)(n-v+1)...(n-1)); depends only on the pattern order v.
Rational ua_pendant_prob_closed(int order, long n);

// Expected number of windowed pendant copies of an order-v pattern:
// C(n - base - width, v) * width * ua_pendant_prob_closed(v, n).
Rational ua_windowed_expectation(int base, int width, int order, long n);

// Limit of the windowed expectation as n grows: width / v!.
Rational ua_windowed_limit(int width, int order);

// Probability that two disjoint order-v copies hang in stacked windows of
// the given width: width^2 / ((n-2v)...(n-1)). At least the product of the
// marginals.
Rational ua_joint_prob(int order, long n, int width);

// ---- preferential attachment, m = 1: pendant copies ------------------------

// Step-by-step product for one tuple under the degree-weighted process;
// pattern weights supply the attachment degrees.
Rational pa_pendant_prob_product(const RootedPattern& pattern, const SlotTuple& st);

// Closed form; depends on the tuple only through the root arrival i_1.
Rational pa_pendant_prob_closed(const RootedPattern& pattern, int root_arrival, long n);

// (D / 2^(v-1)) * sqrt(i_1 / n^(2v-1)): the closed form's large-n shape.
double pa_pendant_prob_asymptotic(const RootedPattern& pattern, int root_arrival, long n);

// Exact expected number of pendant copies, summing the closed form over all
// tuples (the non-root positions collapse to a binomial); declares the
// nominal C(n, v) tuple budget and refuses beyond max_tuples.
Rational pa_expectation_exact(const RootedPattern& pattern, long n,
                              unsigned long long max_tuples = kDefaultMaxTuples);

// 2 * D * n / (2v+1)!!.
double pa_expectation_asymptotic(const RootedPattern& pattern, long n);

// Joint probability that two disjoint tuples each carry a pendant copy of
// the pattern; 0 when the tuples intersect. Product form over the merged
// arrival order (degree pressure switches once the second root arrives).
Rational pa_joint_prob(const RootedPattern& pattern, const SlotTuple& st);

// ---- integral normalizer ----------------------------------------------------

// 2^v (v-1)! / (2v+1)!!, the moment integral that normalizes the order-v
// copy counts; equals int_0^1 sqrt(x) (1-x)^(v-1) dx exactly.
Rational beta_three_halves(int order);

}  // namespace rrg
