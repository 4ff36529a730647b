#include "modalpres/formula.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

namespace modalpres {

Formula Formula::truth() { return Formula(std::make_shared<const FormulaNode>(FormulaNode{Op::True, {}, 0, {}})); }

Formula Formula::falsity() { return Formula(std::make_shared<const FormulaNode>(FormulaNode{Op::False, {}, 0, {}})); }

Formula Formula::prop(std::string name) {
    return Formula(std::make_shared<const FormulaNode>(FormulaNode{Op::Prop, std::move(name), 0, {}}));
}

Formula Formula::negation(Formula f) {
    return Formula(std::make_shared<const FormulaNode>(FormulaNode{Op::Not, {}, 0, {std::move(f)}}));
}

Formula Formula::conjunction(Formula a, Formula b) {
    return Formula(std::make_shared<const FormulaNode>(FormulaNode{Op::And, {}, 0, {std::move(a), std::move(b)}}));
}

Formula Formula::disjunction(Formula a, Formula b) {
    return Formula(std::make_shared<const FormulaNode>(FormulaNode{Op::Or, {}, 0, {std::move(a), std::move(b)}}));
}

Formula Formula::diamond(unsigned k, Formula f) {
    if (k == 0) throw ParseError("diamond grade must be at least 1");
    return Formula(std::make_shared<const FormulaNode>(FormulaNode{Op::Diamond, {}, k, {std::move(f)}}));
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
unsigned Formula::grade() const { return node_->grade; }
const Formula& Formula::child() const { return node_->kids.at(0); }
const Formula& Formula::left() const { return node_->kids.at(0); }
const Formula& Formula::right() const { return node_->kids.at(1); }

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    const auto& a = *node_;
    const auto& b = *other.node_;
    if (a.op != b.op || a.name != b.name || a.grade != b.grade || a.kids.size() != b.kids.size()) return false;
    for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (!(a.kids[i] == b.kids[i])) return false;
    return true;
}

bool Formula::operator<(const Formula& other) const {
    if (node_ == other.node_) return false;
    const auto& a = *node_;
    const auto& b = *other.node_;
    if (a.op != b.op) return a.op < b.op;
    if (a.name != b.name) return a.name < b.name;
    if (a.grade != b.grade) return a.grade < b.grade;
    for (std::size_t i = 0; i < std::min(a.kids.size(), b.kids.size()); ++i) {
        if (a.kids[i] < b.kids[i]) return true;
        if (b.kids[i] < a.kids[i]) return false;
    }
    return a.kids.size() < b.kids.size();
}

Formula conjoin(const std::vector<Formula>& parts) {
    if (parts.empty()) return Formula::truth();
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conjunction(acc, parts[i]);
    return acc;
}

Formula disjoin(const std::vector<Formula>& parts) {
    if (parts.empty()) return Formula::falsity();
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::disjunction(acc, parts[i]);
    return acc;
}

// ---- parser ----

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Formula run() {
        Formula f = disj();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
            ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Formula disj() {
        Formula f = conj();
        while (accept('|')) f = Formula::disjunction(f, conj());
        return f;
    }

    Formula conj() {
        Formula f = unary();
        while (accept('&')) f = Formula::conjunction(f, unary());
        return f;
    }

    Formula unary() {
        skip_ws();
        if (accept('~')) return Formula::negation(unary());
        if (accept('<')) {
            skip_ws();
            if (accept('>')) return Formula::diamond(1, unary());
            std::size_t start = pos_;
            while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
            if (start == pos_) fail("expected grade or '>'");
            unsigned k = 0;
            auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, k);
            if (ec != std::errc{}) {
                pos_ = start;
                fail("grade out of range");
            }
            if (k == 0) {
                pos_ = start;
                fail("grade must be at least 1");
            }
            if (!accept('>')) fail("expected '>'");
            return Formula::diamond(k, unary());
        }
        return atom();
    }

    Formula atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        if (accept('(')) {
            Formula f = disj();
            if (!accept(')')) fail("expected ')'");
            return f;
        }
        std::size_t start = pos_;
        auto ident_char = [](char c) {
            return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
        };
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        std::string_view word = text_.substr(start, pos_ - start);
        if (word.empty()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        if (!is_identifier(word)) {
            pos_ = start;
            fail("invalid identifier '" + std::string(word) + "'");
        }
        if (word == "true") return Formula::truth();
        if (word == "false") return Formula::falsity();
        return Formula::prop(std::string(word));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// Binding strength used by the printer: Or < And < unary.
int precedence(Op op) {
    switch (op) {
    case Op::Or: return 1;
    case Op::And: return 2;
    default: return 3;
    }
}

void print_into(const Formula& f, std::string& out) {
    auto wrapped = [&](const Formula& g, bool paren) {
        if (paren) out += '(';
        print_into(g, out);
        if (paren) out += ')';
    };
    switch (f.op()) {
    case Op::True: out += "true"; break;
    case Op::False: out += "false"; break;
    case Op::Prop: out += f.name(); break;
    case Op::Not:
        out += '~';
        wrapped(f.child(), precedence(f.child().op()) < 3);
        break;
    case Op::Diamond:
        out += f.grade() == 1 ? "<>" : "<" + std::to_string(f.grade()) + ">";
        wrapped(f.child(), precedence(f.child().op()) < 3);
        break;
    case Op::And:
    case Op::Or: {
        const int p = precedence(f.op());
        // Left-associative: the right operand needs parentheses at equal precedence.
        wrapped(f.left(), precedence(f.left().op()) < p);
        out += f.op() == Op::And ? " & " : " | ";
        wrapped(f.right(), precedence(f.right().op()) <= p);
        break;
    }
    }
}

void collect_props(const Formula& f, std::set<std::string>& out) {
    switch (f.op()) {
    case Op::Prop: out.insert(f.name()); break;
    case Op::Not:
    case Op::Diamond: collect_props(f.child(), out); break;
    case Op::And:
    case Op::Or:
        collect_props(f.left(), out);
        collect_props(f.right(), out);
        break;
    default: break;
    }
}

struct Flags {
    bool neg_only_on_props = true;
    bool negation_free = true;
    bool grades_one = true;
};

void scan(const Formula& f, Flags& flags) {
    switch (f.op()) {
    case Op::Not:
        flags.negation_free = false;
        if (f.child().op() != Op::Prop) flags.neg_only_on_props = false;
        scan(f.child(), flags);
        break;
    case Op::Diamond:
        if (f.grade() > 1) flags.grades_one = false;
        scan(f.child(), flags);
        break;
    case Op::And:
    case Op::Or:
        scan(f.left(), flags);
        scan(f.right(), flags);
        break;
    default: break;
    }
}

class Evaluator {
public:
    explicit Evaluator(const PointedModel& m) : m_(m) {}

    const std::vector<bool>& eval(const Formula& f) {
        auto it = memo_.find(f);
        if (it != memo_.end()) return it->second;
        const std::size_t n = m_.world_count();
        std::vector<bool> out(n, false);
        switch (f.op()) {
        case Op::True: out.assign(n, true); break;
        case Op::False: break;
        case Op::Prop: {
            auto p = m_.signature().index_of(f.name());
            if (!p) throw UnknownProposition("unknown proposition '" + f.name() + "'");
            for (WorldIndex w : m_.extension(*p)) out[w] = true;
            break;
        }
        case Op::Not: {
            const auto& c = eval(f.child());
            for (std::size_t w = 0; w < n; ++w) out[w] = !c[w];
            break;
        }
        case Op::And:
        case Op::Or: {
            std::vector<bool> a = eval(f.left());
            const auto& b = eval(f.right());
            for (std::size_t w = 0; w < n; ++w) out[w] = f.op() == Op::And ? (a[w] && b[w]) : (a[w] || b[w]);
            break;
        }
        case Op::Diamond: {
            const auto& c = eval(f.child());
            for (std::size_t w = 0; w < n; ++w) {
                unsigned count = 0;
                for (WorldIndex v : m_.successors(w))
                    if (c[v]) ++count;
                out[w] = count >= f.grade();
            }
            break;
        }
        }
        return memo_.emplace(f, std::move(out)).first->second;
    }

private:
    const PointedModel& m_;
    std::map<Formula, std::vector<bool>> memo_;
};

} // namespace

Formula parse_formula(std::string_view text) { return Parser(text).run(); }

std::string print_formula(const Formula& f) {
    std::string out;
    print_into(f, out);
    return out;
}

std::size_t depth(const Formula& f) {
    switch (f.op()) {
    case Op::Not: return depth(f.child());
    case Op::Diamond: return 1 + depth(f.child());
    case Op::And:
    case Op::Or: return std::max(depth(f.left()), depth(f.right()));
    default: return 0;
    }
}

std::size_t formula_size(const Formula& f) {
    switch (f.op()) {
    case Op::Not:
    case Op::Diamond: return 1 + formula_size(f.child());
    case Op::And:
    case Op::Or: return 1 + formula_size(f.left()) + formula_size(f.right());
    default: return 1;
    }
}

std::vector<std::string> propositions(const Formula& f) {
    std::set<std::string> s;
    collect_props(f, s);
    return {s.begin(), s.end()};
}

FragmentReport classify(const Formula& f) {
    Flags flags;
    scan(f, flags);
    FragmentReport r;
    r.in_ML = flags.grades_one;
    r.in_exists_GML = flags.neg_only_on_props;
    r.in_exists_pos_GML = flags.negation_free;
    r.in_exists_ML = flags.neg_only_on_props && flags.grades_one;
    r.in_exists_pos_ML = flags.negation_free && flags.grades_one;
    r.depth = depth(f);
    return r;
}

std::vector<bool> evaluate(const Formula& f, const PointedModel& m) { return Evaluator(m).eval(f); }

bool check(const Formula& f, const PointedModel& m) { return evaluate(f, m)[m.point()]; }

} // namespace modalpres
