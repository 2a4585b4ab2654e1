#include "rrg/logic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rrg/errors.hpp"

namespace rrg {

namespace {

NodePtr mk(NodeKind k, std::string name = {}, std::string name2 = {}, NodePtr a = nullptr,
           NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->name = std::move(name);
    n->name2 = std::move(name2);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

bool is_set_name(const std::string& s) {
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

// ---- parsing ---------------------------------------------------------------

struct Token {
    enum Kind { Ident, Keyword, Punct, End } kind;
    std::string text;
    size_t pos;
};

struct Lexer {
    const std::string& src;
    size_t at = 0;
    std::vector<Token> tokens;

    explicit Lexer(const std::string& s) : src(s) { run(); }

    [[noreturn]] void fail(size_t pos, const std::string& msg) const {
        throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " +
                                    msg);
    }

    void run() {
        while (at < src.size()) {
            char c = src[at];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++at;
                continue;
            }
            size_t start = at;
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                while (at < src.size() && (std::isalnum(static_cast<unsigned char>(src[at])) ||
                                           src[at] == '_' || src[at] == '\''))
                    ++at;
                std::string word = src.substr(start, at - start);
                bool kw = word == "forall" || word == "exists" || word == "existsSet" ||
                          word == "forallSet";
                tokens.push_back({kw ? Token::Keyword : Token::Ident, word, start});
                continue;
            }
            if (c == '<' && src.compare(at, 3, "<->") == 0) {
                tokens.push_back({Token::Punct, "<->", start});
                at += 3;
                continue;
            }
            if (c == '-' && src.compare(at, 2, "->") == 0) {
                tokens.push_back({Token::Punct, "->", start});
                at += 2;
                continue;
            }
            if (std::string("()~=!&|").find(c) != std::string::npos) {
                tokens.push_back({Token::Punct, std::string(1, c), start});
                ++at;
                continue;
            }
            fail(start, std::string("unexpected character '") + c + "'");
        }
        tokens.push_back({Token::End, "", src.size()});
    }
};

struct Parser {
    const std::string& src;
    std::vector<Token> tokens;
    size_t at = 0;
    std::vector<std::string> vertex_scope;
    std::vector<std::string> set_scope;

    explicit Parser(const std::string& s) : src(s) {
        Lexer lex(s);
        tokens = std::move(lex.tokens);
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("parse error at position " +
                                    std::to_string(tokens[at].pos) + ": " + msg);
    }

    const Token& peek() const { return tokens[at]; }
    Token take() { return tokens[at++]; }

    bool eat_punct(const std::string& p) {
        if (peek().kind == Token::Punct && peek().text == p) {
            ++at;
            return true;
        }
        return false;
    }

    bool bound_vertex(const std::string& v) const {
        for (auto it = vertex_scope.rbegin(); it != vertex_scope.rend(); ++it)
            if (*it == v) return true;
        return false;
    }
    bool bound_set(const std::string& v) const {
        for (auto it = set_scope.rbegin(); it != set_scope.rend(); ++it)
            if (*it == v) return true;
        return false;
    }

    NodePtr parse() {
        NodePtr s = iff();
        if (peek().kind != Token::End) fail("trailing input");
        return s;
    }

    NodePtr iff() {
        NodePtr lhs = implies();
        while (peek().kind == Token::Punct && peek().text == "<->") {
            ++at;
            lhs = mk(NodeKind::Iff, {}, {}, lhs, implies());
        }
        return lhs;
    }

    NodePtr implies() {  // right-associative
        NodePtr lhs = disjunction();
        if (peek().kind == Token::Punct && peek().text == "->") {
            ++at;
            return mk(NodeKind::Implies, {}, {}, lhs, implies());
        }
        return lhs;
    }

    NodePtr disjunction() {
        NodePtr lhs = conjunction();
        while (peek().kind == Token::Punct && peek().text == "|") {
            ++at;
            lhs = mk(NodeKind::Or, {}, {}, lhs, conjunction());
        }
        return lhs;
    }

    NodePtr conjunction() {
        NodePtr lhs = unary();
        while (peek().kind == Token::Punct && peek().text == "&") {
            ++at;
            lhs = mk(NodeKind::And, {}, {}, lhs, unary());
        }
        return lhs;
    }

    NodePtr unary() {
        const Token& t = peek();
        if (t.kind == Token::Punct && t.text == "!") {
            ++at;
            return mk(NodeKind::Not, {}, {}, unary());
        }
        if (t.kind == Token::Punct && t.text == "(") {
            ++at;
            NodePtr inner = iff();
            if (!eat_punct(")")) fail("expected ')'");
            return inner;
        }
        if (t.kind == Token::Keyword) return quantifier();
        if (t.kind == Token::Ident) return atom();
        fail("expected a formula");
    }

    NodePtr quantifier() {
        Token kw = take();
        const Token& var = peek();
        if (var.kind != Token::Ident) fail("expected a variable after '" + kw.text + "'");
        std::string name = take().text;
        const bool set_kw = kw.text == "existsSet" || kw.text == "forallSet";
        const bool set_var = is_set_name(name);
        if (set_kw && !set_var)
            fail("set variable '" + name + "' must start with an uppercase letter");
        const bool is_set = set_kw || set_var;
        const bool is_exists = kw.text == "exists" || kw.text == "existsSet";
        NodeKind kind = is_set ? (is_exists ? NodeKind::ExistsSet : NodeKind::ForallSet)
                               : (is_exists ? NodeKind::Exists : NodeKind::Forall);
        auto& scope = is_set ? set_scope : vertex_scope;
        scope.push_back(name);
        NodePtr body = unary();  // quantifiers bind tightly
        scope.pop_back();
        return mk(kind, name, {}, body);
    }

    NodePtr atom() {
        Token first = take();
        if (is_set_name(first.text)) {
            // set membership X(x)
            if (!bound_set(first.text))
                fail("unbound set variable '" + first.text + "'");
            if (!eat_punct("(")) fail("expected '(' after set variable '" + first.text + "'");
            const Token& arg = peek();
            if (arg.kind != Token::Ident || is_set_name(arg.text))
                fail("expected a vertex variable inside '" + first.text + "(...)'");
            std::string v = take().text;
            if (!bound_vertex(v)) fail("unbound variable '" + v + "'");
            if (!eat_punct(")")) fail("expected ')'");
            return mk(NodeKind::InSet, first.text, v);
        }
        if (!bound_vertex(first.text)) fail("unbound variable '" + first.text + "'");
        if (eat_punct("~")) return vertex_pair(NodeKind::Adjacent, first.text);
        if (eat_punct("=")) return vertex_pair(NodeKind::Equal, first.text);
        fail("expected '~', '=' or set membership after '" + first.text + "'");
    }

    NodePtr vertex_pair(NodeKind kind, const std::string& lhs) {
        const Token& rhs = peek();
        if (rhs.kind != Token::Ident || is_set_name(rhs.text))
            fail("expected a vertex variable");
        std::string v = take().text;
        if (!bound_vertex(v)) fail("unbound variable '" + v + "'");
        return mk(kind, lhs, v);
    }
};

// ---- printing ---------------------------------------------------------------

void print(const NodePtr& n, std::string& out) {
    switch (n->kind) {
        case NodeKind::Adjacent:
            out += n->name + " ~ " + n->name2;
            return;
        case NodeKind::Equal:
            out += n->name + " = " + n->name2;
            return;
        case NodeKind::InSet:
            out += n->name + "(" + n->name2 + ")";
            return;
        case NodeKind::Not:
            out += "!";
            if (n->a->kind == NodeKind::Adjacent || n->a->kind == NodeKind::Equal) {
                out += "(";
                print(n->a, out);
                out += ")";
            } else if (n->a->kind == NodeKind::InSet || n->a->kind == NodeKind::Not) {
                print(n->a, out);
            } else {
                out += "(";
                print(n->a, out);
                out += ")";
            }
            return;
        case NodeKind::And:
        case NodeKind::Or:
        case NodeKind::Implies:
        case NodeKind::Iff: {
            const char* op = n->kind == NodeKind::And      ? " & "
                             : n->kind == NodeKind::Or     ? " | "
                             : n->kind == NodeKind::Implies ? " -> "
                                                            : " <-> ";
            out += "(";
            print(n->a, out);
            out += op;
            print(n->b, out);
            out += ")";
            return;
        }
        case NodeKind::Exists:
        case NodeKind::ExistsSet:
            out += "exists " + n->name + " ";
            break;
        case NodeKind::Forall:
        case NodeKind::ForallSet:
            out += "forall " + n->name + " ";
            break;
    }
    // quantifier body: keep it a unary unit so reparsing binds the same way
    const NodeKind bk = n->a->kind;
    const bool unit = bk == NodeKind::Not || bk == NodeKind::Exists || bk == NodeKind::Forall ||
                      bk == NodeKind::ExistsSet || bk == NodeKind::ForallSet;
    if (unit) {
        print(n->a, out);
    } else {
        out += "(";
        print(n->a, out);
        out += ")";
    }
}

// ---- evaluation -------------------------------------------------------------

struct QuantDepth {
    int fo = 0;
    int mso = 0;
};

QuantDepth depth(const NodePtr& n) {
    if (!n) return {};
    QuantDepth da = depth(n->a), db = depth(n->b);
    QuantDepth d{std::max(da.fo, db.fo), std::max(da.mso, db.mso)};
    if (n->kind == NodeKind::Exists || n->kind == NodeKind::Forall) ++d.fo;
    if (n->kind == NodeKind::ExistsSet || n->kind == NodeKind::ForallSet) ++d.mso;
    return d;
}

struct Env {
    const LabeledGraph& g;
    std::vector<std::pair<std::string, int>> verts;
    std::vector<std::pair<std::string, std::uint64_t>> sets;

    int vertex(const std::string& v) const {
        for (auto it = verts.rbegin(); it != verts.rend(); ++it)
            if (it->first == v) return it->second;
        throw std::invalid_argument("evaluate: unbound variable '" + v + "'");
    }
    std::uint64_t set(const std::string& v) const {
        for (auto it = sets.rbegin(); it != sets.rend(); ++it)
            if (it->first == v) return it->second;
        throw std::invalid_argument("evaluate: unbound set variable '" + v + "'");
    }
};

bool eval_node(const NodePtr& n, Env& env) {
    switch (n->kind) {
        case NodeKind::Adjacent:
            return env.g.has_edge(env.vertex(n->name), env.vertex(n->name2));
        case NodeKind::Equal:
            return env.vertex(n->name) == env.vertex(n->name2);
        case NodeKind::InSet:
            return (env.set(n->name) >> (env.vertex(n->name2) - 1)) & 1ULL;
        case NodeKind::Not:
            return !eval_node(n->a, env);
        case NodeKind::And:
            return eval_node(n->a, env) && eval_node(n->b, env);
        case NodeKind::Or:
            return eval_node(n->a, env) || eval_node(n->b, env);
        case NodeKind::Implies:
            return !eval_node(n->a, env) || eval_node(n->b, env);
        case NodeKind::Iff:
            return eval_node(n->a, env) == eval_node(n->b, env);
        case NodeKind::Exists:
        case NodeKind::Forall: {
            const bool want = n->kind == NodeKind::Exists;
            env.verts.emplace_back(n->name, 0);
            for (int v = 1; v <= env.g.n; ++v) {
                env.verts.back().second = v;
                if (eval_node(n->a, env) == want) {
                    env.verts.pop_back();
                    return want;
                }
            }
            env.verts.pop_back();
            return !want;
        }
        case NodeKind::ExistsSet:
        case NodeKind::ForallSet: {
            const bool want = n->kind == NodeKind::ExistsSet;
            env.sets.emplace_back(n->name, 0);
            const std::uint64_t subsets = 1ULL << env.g.n;
            for (std::uint64_t s = 0; s < subsets; ++s) {
                env.sets.back().second = s;
                if (eval_node(n->a, env) == want) {
                    env.sets.pop_back();
                    return want;
                }
            }
            env.sets.pop_back();
            return !want;
        }
    }
    throw std::logic_error("evaluate: bad node kind");
}

}  // namespace

Sentence parse_sentence(const std::string& text) {
    Parser p(text);
    return Sentence{p.parse()};
}

std::string to_string(const Sentence& s) {
    if (!s.root) throw std::invalid_argument("to_string: empty sentence");
    std::string out;
    print(s.root, out);
    return out;
}

bool ast_equal(const Sentence& a, const Sentence& b) {
    std::function<bool(const NodePtr&, const NodePtr&)> eq = [&](const NodePtr& x,
                                                                 const NodePtr& y) -> bool {
        if (!x || !y) return x == y;
        return x->kind == y->kind && x->name == y->name && x->name2 == y->name2 &&
               eq(x->a, y->a) && eq(x->b, y->b);
    };
    return eq(a.root, b.root);
}

long double evaluation_cost(const Sentence& s, int n) {
    QuantDepth d = depth(s.root);
    long double cost = std::pow(static_cast<long double>(n), static_cast<long double>(d.fo));
    cost *= std::pow(2.0L, static_cast<long double>(n) * static_cast<long double>(d.mso));
    return cost;
}

bool evaluate(const Sentence& s, const LabeledGraph& g, unsigned long long max_assignments) {
    if (!s.root) throw std::invalid_argument("evaluate: empty sentence");
    QuantDepth d = depth(s.root);
    const long double cost = evaluation_cost(s, g.n);
    if (cost > static_cast<long double>(max_assignments)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3Lg", cost);
        throw BudgetExceeded(std::string("evaluate: estimated ") + buf +
                                 " assignments exceed budget " + std::to_string(max_assignments),
                             cost > 1e18L ? ~0ULL : static_cast<unsigned long long>(cost),
                             max_assignments);
    }
    if (d.mso > 0 && g.n > 62)
        throw BudgetExceeded("evaluate: set quantifier over more than 62 vertices", ~0ULL,
                             max_assignments);
    Env env{g, {}, {}};
    return eval_node(s.root, env);
}

// ---- built-ins ----------------------------------------------------------------

Sentence build_complete() {
    NodePtr body = mk(NodeKind::Implies, {}, {},
                      mk(NodeKind::Not, {}, {}, mk(NodeKind::Equal, "x", "y")),
                      mk(NodeKind::Adjacent, "x", "y"));
    return Sentence{
        mk(NodeKind::Forall, "x", {}, mk(NodeKind::Forall, "y", {}, body))};
}

Sentence build_disconnected() {
    // exists X ((exists x X(x)) & (exists x !X(x)) &
    //           forall x forall y ((X(x) & !X(y)) -> !(x ~ y)))
    NodePtr some_in = mk(NodeKind::Exists, "x", {}, mk(NodeKind::InSet, "X", "x"));
    NodePtr some_out =
        mk(NodeKind::Exists, "x", {}, mk(NodeKind::Not, {}, {}, mk(NodeKind::InSet, "X", "x")));
    NodePtr no_cross = mk(
        NodeKind::Forall, "x", {},
        mk(NodeKind::Forall, "y", {},
           mk(NodeKind::Implies, {}, {},
              mk(NodeKind::And, {}, {}, mk(NodeKind::InSet, "X", "x"),
                 mk(NodeKind::Not, {}, {}, mk(NodeKind::InSet, "X", "y"))),
              mk(NodeKind::Not, {}, {}, mk(NodeKind::Adjacent, "x", "y")))));
    NodePtr body = mk(NodeKind::And, {}, {},
                      mk(NodeKind::And, {}, {}, some_in, some_out), no_cross);
    return Sentence{mk(NodeKind::ExistsSet, "X", {}, body)};
}

Sentence build_at_least_diamonds(int copies) {
    if (copies < 1) throw std::invalid_argument("build_at_least_diamonds: copies must be >= 1");

    auto var = [](int block, int slot) {
        return "d" + std::to_string(block) + "_" + std::to_string(slot);
    };
    auto conj = [](std::vector<NodePtr> parts) {
        NodePtr acc = parts.front();
        for (size_t i = 1; i < parts.size(); ++i)
            acc = mk(NodeKind::And, {}, {}, acc, parts[i]);
        return acc;
    };
    auto disj = [](std::vector<NodePtr> parts) {
        NodePtr acc = parts.front();
        for (size_t i = 1; i < parts.size(); ++i)
            acc = mk(NodeKind::Or, {}, {}, acc, parts[i]);
        return acc;
    };

    std::vector<NodePtr> clauses;
    for (int b = 0; b < copies; ++b) {
        // the four vertices are pairwise distinct
        std::vector<NodePtr> distinct;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                distinct.push_back(
                    mk(NodeKind::Not, {}, {}, mk(NodeKind::Equal, var(b, i), var(b, j))));
        clauses.push_back(conj(distinct));

        // exactly one of the six pairs is non-adjacent
        std::vector<NodePtr> shapes;
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) pairs.emplace_back(i, j);
        for (size_t miss = 0; miss < pairs.size(); ++miss) {
            std::vector<NodePtr> shape;
            for (size_t p = 0; p < pairs.size(); ++p) {
                NodePtr adj =
                    mk(NodeKind::Adjacent, var(b, pairs[p].first), var(b, pairs[p].second));
                shape.push_back(p == miss ? mk(NodeKind::Not, {}, {}, adj) : adj);
            }
            shapes.push_back(conj(shape));
        }
        clauses.push_back(disj(shapes));
    }

    // blocks differ as vertex sets: some vertex of one misses the other
    for (int b1 = 0; b1 < copies; ++b1)
        for (int b2 = b1 + 1; b2 < copies; ++b2) {
            std::vector<NodePtr> somewhere;
            for (int i = 0; i < 4; ++i) {
                std::vector<NodePtr> off;
                for (int j = 0; j < 4; ++j)
                    off.push_back(mk(NodeKind::Not, {}, {},
                                     mk(NodeKind::Equal, var(b1, i), var(b2, j))));
                somewhere.push_back(conj(off));
            }
            clauses.push_back(disj(somewhere));
        }

    NodePtr body = conj(clauses);
    for (int b = copies - 1; b >= 0; --b)
        for (int i = 3; i >= 0; --i) body = mk(NodeKind::Exists, var(b, i), {}, body);
    return Sentence{body};
}

}  // namespace rrg
