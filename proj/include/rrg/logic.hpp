#pragma once

#include <memory>
#include <string>

#include "rrg/graph.hpp"

namespace rrg {

inline constexpr unsigned long long kDefaultMaxAssignments = 1ULL << 22;

// First-order / monadic second-order sentences about a graph.
//
// Surface syntax (see README for the full grammar):
//   forall x (...)      exists x (...)       vertex variables: lowercase
//   forall X (...)      exists X (...)       set variables: Uppercase
//   x ~ y   x = y   X(x)   !a   a & b   a | b   a -> b   a <-> b
// existsSet / forallSet are accepted as explicit set quantifiers and print
// back as exists / forall (the capitalized variable carries the sort).
// Quantifiers bind the next unary unit; parenthesize larger bodies.
// Precedence, loosest first: <->, ->, |, &, !.

enum class NodeKind {
    Adjacent,   // name ~ name2
    Equal,      // name = name2
    InSet,      // name(name2): set membership
    Not,        // a
    And,        // a, b
    Or,         // a, b
    Implies,    // a, b
    Iff,        // a, b
    Exists,     // vertex quantifier, name, body a
    Forall,     // vertex quantifier
    ExistsSet,  // set quantifier
    ForallSet,  // set quantifier
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind;
    std::string name;   // variable of atoms and quantifiers; set name for InSet
    std::string name2;  // second atom argument
    NodePtr a, b;
};

struct Sentence {
    NodePtr root;
};

// Throws std::invalid_argument with a character position on syntax errors,
// unbound variables, or sort mismatches (quantified sentences only; every
// variable must be bound when used).
Sentence parse_sentence(const std::string& text);

// Canonical rendering; parse_sentence(to_string(s)) reproduces the same AST.
std::string to_string(const Sentence& s);

bool ast_equal(const Sentence& a, const Sentence& b);

// Model checking by exhaustive assignment search. Estimated cost is
// n^(FO quantifier depth) * 2^(n * MSO quantifier depth); if that exceeds
// max_assignments the call refuses with BudgetExceeded instead of hanging.
// Depth counts the deepest nesting, not the total number of quantifiers.
bool evaluate(const Sentence& s, const LabeledGraph& g,
              unsigned long long max_assignments = kDefaultMaxAssignments);

// The cost estimate used by evaluate, as a long double to survive overflow.
long double evaluation_cost(const Sentence& s, int n);

// Built-in sentences. build_at_least_diamonds(c) asserts c pairwise distinct
// 4-sets each inducing exactly five edges (the sets may share vertices, they
// must differ as sets).
Sentence build_complete();
Sentence build_disconnected();
Sentence build_at_least_diamonds(int copies);

}  // namespace rrg
