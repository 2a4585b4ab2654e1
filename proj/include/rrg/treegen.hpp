#pragma once

#include <cstdint>
#include <functional>

#include "rrg/graph.hpp"
#include "rrg/rational.hpp"
#include "rrg/rng.hpp"

namespace rrg {

struct GrowthConfig {
    Model model = Model::UA;
    int n = 2;
    int m = 1;
    PaConvention convention = PaConvention::Normalized;
    std::uint64_t seed = 0;
};

// Throws std::invalid_argument on bad fields (n < m+1, m < 1, ...).
void validate(const GrowthConfig& cfg);

// One growth step at a time, so callers can read statistics off every prefix
// of a single run. The seed graph is the complete graph on 1..m+1; step t
// adds vertex t+1.
//
// Uniform attachment: the new vertex picks a uniform m-subset of the existing
// vertices. Preferential attachment (m=1 default): the new vertex picks one
// endpoint with probability proportional to degree. With m >= 2 the m draws
// are independent and weighted by the degrees *before* the step, counted with
// multiplicity (parallel picks collapse to one edge in the simple graph, but
// still add to the weight of later steps). Under PaConvention::
// PaperDenominator each draw uses denominator 2m(t) with t the current vertex
// count, and the missing mass becomes a self-loop: the new vertex then spends
// that draw on itself (for m=1 it arrives isolated).
class GrowthProcess {
  public:
    explicit GrowthProcess(const GrowthConfig& cfg);

    int size() const { return graph_.n; }
    int target() const { return cfg_.n; }
    const LabeledGraph& graph() const { return graph_; }

    // Adds one vertex using draws from rng; no-op guard if already at target.
    void step(Rng& rng);

    // Distinct real endpoints chosen by the last step, sorted ascending;
    // self-loop draws are recorded as the new vertex's own id.
    const std::vector<int>& last_targets() const { return last_targets_; }

  private:
    GrowthConfig cfg_;
    LabeledGraph graph_;
    std::vector<int> endpoint_bag_;  // degree-weighted endpoint multiset (PA)
    std::vector<int> last_targets_;
};

LabeledGraph generate_ua(const GrowthConfig& cfg);
LabeledGraph generate_pa(const GrowthConfig& cfg);
LabeledGraph generate(const GrowthConfig& cfg);  // dispatch on cfg.model

// ---- exhaustive enumeration ----------------------------------------------

// choices[k] holds the endpoints drawn by vertex m+2+k, sorted; a PA
// self-loop appears as the arriving vertex's own id.
struct GrowthHistory {
    std::vector<std::vector<int>> choices;
};

inline constexpr unsigned long long kDefaultMaxHistories = 10'000'000ULL;

// Number of distinct histories of the process, saturating at ULLONG_MAX.
unsigned long long count_histories(int n, int m, Model model, PaConvention conv);

using HistoryVisitor =
    std::function<void(const GrowthHistory&, const LabeledGraph&, const Rational&)>;

// Visits every history with its simple graph and exact probability; the
// probabilities sum to 1. Throws BudgetExceeded if the history count is over
// max_histories. PA enumeration treats the m draws of one step as unordered
// (each multiset carries its multinomial weight).
void enumerate_histories(int n, int m, Model model, PaConvention conv,
                         unsigned long long max_histories, const HistoryVisitor& visit);

}  // namespace rrg
