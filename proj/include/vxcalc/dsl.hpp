#pragma once

// Expression language for states and products:
//   expr    := term ('+' term)*
//   term    := prod
//   prod    := chain ('_(' int ')' chain)*      (left associative)
//   chain   := factor chain | factor
//   factor  := 'd' '(' expr ')' | mode | '|0>' | scalar | var | '(' expr ')'
//   mode    := ('a'|'b'|'h') '[' int ']' '(' int ')'
// Scalars are integer or rational literals p/q. Errors carry 1-based
// column positions.

#include "vxcalc/fock.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace vxcalc {

struct ParseError : std::runtime_error {
    int column;
    ParseError(const std::string& what, int col)
        : std::runtime_error(what + " at column " + std::to_string(col)), column(col) {}
};

struct ExprAst {
    enum class Kind { Sum, Product, Mode, D, Vacuum, ScalarLit, Var };
    Kind kind;
    std::vector<ExprAst> kids;  // Sum: summands; Product: [lhs, rhs]; Mode/D: operand
    Scalar value;               // ScalarLit
    std::string name;           // Var
    Gen gen = Gen::A;           // Mode
    int idx = 0;                // Mode
    int n = 0;                  // Mode index / Product index

    friend bool operator==(const ExprAst& a, const ExprAst& b) {
        return a.kind == b.kind && a.kids == b.kids && a.value == b.value &&
               a.name == b.name && a.gen == b.gen && a.idx == b.idx && a.n == b.n;
    }
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string text) : text_(std::move(text)) {}

    ExprAst parse() {
        ExprAst e = expr();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    std::string text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, static_cast<int>(std::min(pos_ + 1, text_.size())));
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool peek_str(const std::string& s) {
        skip_ws();
        return text_.compare(pos_, s.size(), s) == 0;
    }
    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    ExprAst expr() {
        ExprAst out;
        out.kind = ExprAst::Kind::Sum;
        out.kids.push_back(prod());
        while (peek('+')) {
            ++pos_;
            out.kids.push_back(prod());
        }
        if (out.kids.size() == 1) return std::move(out.kids.front());
        return out;
    }

    ExprAst prod() {
        ExprAst lhs = chain();
        while (peek_str("_(")) {
            pos_ += 2;
            int k = integer();
            expect(')');
            ExprAst p;
            p.kind = ExprAst::Kind::Product;
            p.n = k;
            p.kids.push_back(std::move(lhs));
            p.kids.push_back(chain());
            lhs = std::move(p);
        }
        return lhs;
    }

    // A chain of prefix factors; modes and d(...) wrap everything that
    // follows them in the chain.
    ExprAst chain() {
        ExprAst head = factor();
        if (head.kind == ExprAst::Kind::Mode || head.kind == ExprAst::Kind::ScalarLit ||
            head.kind == ExprAst::Kind::Var) {
            if (more_factor()) {
                head.kids.push_back(chain());
                return head;
            }
            if (head.kind == ExprAst::Kind::Mode) fail("mode needs an operand");
        }
        return head;
    }

    bool more_factor() {
        skip_ws();
        if (pos_ >= text_.size()) return false;
        char c = text_[pos_];
        if (c == '+' || c == ')') return false;
        if (text_.compare(pos_, 2, "_(") == 0) return false;
        return true;
    }

    ExprAst factor() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected expression");
        char c = text_[pos_];
        if (peek_str("|0>")) {
            pos_ += 3;
            ExprAst v;
            v.kind = ExprAst::Kind::Vacuum;
            return v;
        }
        if (c == '(') {
            ++pos_;
            ExprAst e = expr();
            expect(')');
            return e;
        }
        if (c == 'd' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '(') {
            pos_ += 2;
            ExprAst e;
            e.kind = ExprAst::Kind::D;
            e.kids.push_back(expr());
            expect(')');
            return e;
        }
        if ((c == 'a' || c == 'b' || c == 'h') && pos_ + 1 < text_.size() &&
            text_[pos_ + 1] == '[') {
            ExprAst m;
            m.kind = ExprAst::Kind::Mode;
            m.gen = c == 'a' ? Gen::A : c == 'b' ? Gen::B : Gen::H;
            pos_ += 2;
            m.idx = integer();
            expect(']');
            expect('(');
            m.n = integer();
            expect(')');
            return m;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') return scalar_lit();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            ExprAst v;
            v.kind = ExprAst::Kind::Var;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                v.name += text_[pos_++];
            return v;
        }
        fail("unexpected character");
    }

    int integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start || (text_[start] == '-' && pos_ == start + 1)) fail("expected integer");
        return std::stoi(text_.substr(start, pos_ - start));
    }

    ExprAst scalar_lit() {
        long p = integer();
        long q = 1;
        if (peek('/')) {
            ++pos_;
            q = integer();
            if (q == 0) fail("zero denominator");
        }
        ExprAst s;
        s.kind = ExprAst::Kind::ScalarLit;
        s.value = Scalar(p) / Scalar(q);
        return s;
    }
};

}  // namespace detail

inline ExprAst parse_expr(const std::string& text) { return detail::Parser(text).parse(); }

inline std::string print_expr(const ExprAst& e) {
    auto paren_if = [](bool cond, const std::string& s) {
        return cond ? "(" + s + ")" : s;
    };
    switch (e.kind) {
        case ExprAst::Kind::Sum: {
            std::string out;
            for (const auto& k : e.kids) {
                if (!out.empty()) out += " + ";
                out += print_expr(k);
            }
            return out;
        }
        case ExprAst::Kind::Product: {
            bool lp = e.kids[0].kind == ExprAst::Kind::Sum;
            bool rp = e.kids[1].kind == ExprAst::Kind::Sum ||
                      e.kids[1].kind == ExprAst::Kind::Product;
            return paren_if(lp, print_expr(e.kids[0])) + " _(" + std::to_string(e.n) + ") " +
                   paren_if(rp, print_expr(e.kids[1]));
        }
        case ExprAst::Kind::Mode: {
            char g = e.gen == Gen::A ? 'a' : e.gen == Gen::B ? 'b' : 'h';
            std::string out = std::string(1, g) + "[" + std::to_string(e.idx) + "](" +
                              std::to_string(e.n) + ")";
            if (!e.kids.empty()) {
                const ExprAst& k = e.kids[0];
                bool p = k.kind == ExprAst::Kind::Sum || k.kind == ExprAst::Kind::Product;
                out += " " + paren_if(p, print_expr(k));
            }
            return out;
        }
        case ExprAst::Kind::D:
            return "d(" + print_expr(e.kids[0]) + ")";
        case ExprAst::Kind::Vacuum:
            return "|0>";
        case ExprAst::Kind::ScalarLit: {
            std::string out = e.value.str();
            if (!e.kids.empty()) {
                const ExprAst& k = e.kids[0];
                bool p = k.kind == ExprAst::Kind::Sum || k.kind == ExprAst::Kind::Product;
                out += " " + paren_if(p, print_expr(k));
            }
            return out;
        }
        case ExprAst::Kind::Var: {
            std::string out = e.name;
            if (!e.kids.empty()) {
                const ExprAst& k = e.kids[0];
                bool p = k.kind == ExprAst::Kind::Sum || k.kind == ExprAst::Kind::Product;
                out += " " + paren_if(p, print_expr(k));
            }
            return out;
        }
    }
    throw std::logic_error("print_expr: bad node");
}

// Evaluate to a state; bare scalars and variables act on an implicit vacuum.
inline State evaluate_expr(const FockOps& ops, const ExprAst& e) {
    switch (e.kind) {
        case ExprAst::Kind::Sum: {
            State s;
            for (const auto& k : e.kids) s += evaluate_expr(ops, k);
            return s;
        }
        case ExprAst::Kind::Product:
            return ops.nth_product(evaluate_expr(ops, e.kids[0]), e.n,
                                   evaluate_expr(ops, e.kids[1]));
        case ExprAst::Kind::Mode: {
            if (e.kids.empty()) throw std::invalid_argument("mode without operand");
            if (e.idx < 1 || (e.gen == Gen::H ? e.idx > ops.table().H : e.idx > ops.table().N))
                throw std::invalid_argument("generator index out of range");
            return ops.apply_mode(e.gen, e.idx, e.n, evaluate_expr(ops, e.kids[0]));
        }
        case ExprAst::Kind::D:
            return ops.translate(evaluate_expr(ops, e.kids[0]));
        case ExprAst::Kind::Vacuum: {
            State s;
            s.add(CreationMonomial{}, RingElement(1));
            return s;
        }
        case ExprAst::Kind::ScalarLit: {
            State s = e.kids.empty() ? evaluate_expr(ops, ExprAst{ExprAst::Kind::Vacuum})
                                     : evaluate_expr(ops, e.kids[0]);
            return e.value * s;
        }
        case ExprAst::Kind::Var: {
            const auto& vars = ops.table().vars;
            if (std::find(vars.begin(), vars.end(), e.name) == vars.end())
                throw std::invalid_argument("unknown variable " + e.name);
            State s = e.kids.empty() ? evaluate_expr(ops, ExprAst{ExprAst::Kind::Vacuum})
                                     : evaluate_expr(ops, e.kids[0]);
            return s.mul_coeff(RingElement::variable(e.name));
        }
    }
    throw std::logic_error("evaluate_expr: bad node");
}

}  // namespace vxcalc
