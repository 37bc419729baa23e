#include <elpq/parser.hpp>

#include <elpq/error.hpp>

#include <algorithm>
#include <cctype>
#include <map>

namespace elpq {

void Query::add(QueryItem item) {
    auto it = std::lower_bound(items.begin(), items.end(), item);
    if (it == items.end() || *it != item) items.insert(it, std::move(item));
}

std::string Query::str() const {
    std::string out;
    for (std::size_t i = 0; i != items.size(); ++i) {
        if (i) out += ", ";
        out += items[i].str();
    }
    return out;
}

namespace {

enum class Tok { Ident, Number, Variable, LParen, RParen, Comma, Dot, If, Minus, End };

struct Token {
    Tok              kind;
    std::string_view text;
    SourceSpan       span;
};

bool isLower(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }
bool isUpper(char c) { return c >= 'A' && c <= 'Z'; }
bool isDigit(char c) { return c >= '0' && c <= '9'; }
bool isIdentChar(char c) { return isLower(c) || isUpper(c) || isDigit(c); }

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skipBlanks();
        SourceSpan span{pos_, pos_, line_, col_};
        if (pos_ >= src_.size()) return {Tok::End, {}, span};
        char c     = src_[pos_];
        auto start = pos_;
        auto make  = [&](Tok k, std::size_t len) {
            advance(len);
            span.end = pos_;
            return Token{k, src_.substr(start, len), span};
        };
        switch (c) {
            case '(': return make(Tok::LParen, 1);
            case ')': return make(Tok::RParen, 1);
            case ',': return make(Tok::Comma, 1);
            case '.': return make(Tok::Dot, 1);
            case '-': return make(Tok::Minus, 1);
            case ':':
                if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') return make(Tok::If, 2);
                break;
            default: break;
        }
        std::size_t len = 0;
        if (isLower(c) || isUpper(c)) {
            while (pos_ + len < src_.size() && isIdentChar(src_[pos_ + len])) ++len;
            return make(isUpper(c) ? Tok::Variable : Tok::Ident, len);
        }
        if (isDigit(c)) {
            while (pos_ + len < src_.size() && isDigit(src_[pos_ + len])) ++len;
            return make(Tok::Number, len);
        }
        span.end = pos_ + 1;
        throw SyntaxError("unexpected character", span);
    }

private:
    void advance(std::size_t n) {
        for (std::size_t i = 0; i != n; ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }
    void skipBlanks() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance(1);
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t      pos_  = 0;
    std::size_t      line_ = 1;
    std::size_t      col_  = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) {
        cur_  = lex_.next();
        peek_ = lex_.next();
    }

    Program program() {
        Program p;
        while (cur_.kind != Tok::End) p.add(rule());
        return p;
    }

    Query query() {
        Query q;
        if (cur_.kind == Tok::End) return q;
        for (;;) {
            if (cur_.kind != Tok::Variable || (cur_.text != "K" && cur_.text != "M"))
                fail("expected 'K' or 'M'");
            Modality op = cur_.text == "K" ? Modality::K : Modality::M;
            shift();
            Literal l = literal();
            if (!l.atom.isGround()) fail("query literals must be ground", lastSpan_);
            q.add({op, std::move(l)});
            if (cur_.kind == Tok::End) break;
            expect(Tok::Comma, "expected ',' between query items");
        }
        return q;
    }

private:
    [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(msg, cur_.span); }
    [[noreturn]] void fail(const std::string& msg, SourceSpan span) { throw SyntaxError(msg, span); }

    void shift() {
        lastSpan_ = cur_.span;
        cur_      = peek_;
        peek_     = lex_.next();
    }
    void expect(Tok k, const char* msg) {
        if (cur_.kind != k) fail(msg);
        shift();
    }
    bool startsAtom(const Token& t) const { return t.kind == Tok::Ident; }

    Rule rule() {
        Rule r;
        if (cur_.kind == Tok::Minus) throw ClassicalNegationOutsideEpistemicError("classical negation outside an epistemic literal", cur_.span);
        if (cur_.kind != Tok::If && cur_.kind != Tok::Dot) {
            r.head.push_back(atom());
            while (cur_.kind == Tok::Ident && cur_.text == "v") {
                shift();
                if (cur_.kind == Tok::Minus) throw ClassicalNegationOutsideEpistemicError("classical negation outside an epistemic literal", cur_.span);
                r.head.push_back(atom());
            }
        }
        if (cur_.kind == Tok::If) {
            shift();
            if (cur_.kind != Tok::Dot) {
                element(r);
                while (cur_.kind == Tok::Comma) {
                    shift();
                    element(r);
                }
            }
        }
        expect(Tok::Dot, "expected '.'");
        return r;
    }

    void element(Rule& r) {
        if (cur_.kind == Tok::Minus) throw ClassicalNegationOutsideEpistemicError("classical negation outside an epistemic literal", cur_.span);
        if (cur_.kind == Tok::Variable) {
            if (cur_.text == "K" || cur_.text == "M") {
                bool k = cur_.text == "K";
                shift();
                Literal l = literal();
                r.bodyEpi.push_back(k ? EpiElement::K(std::move(l)) : EpiElement::M(std::move(l)));
                return;
            }
            fail("expected body element");
        }
        if (cur_.kind == Tok::Ident && (cur_.text == "not" || cur_.text == "knot") && (peek_.kind == Tok::Ident || peek_.kind == Tok::Minus)) {
            bool knot = cur_.text == "knot";
            shift();
            if (knot) {
                r.bodyEpi.push_back(EpiElement::knot(literal()));
            } else {
                if (cur_.kind == Tok::Minus) throw ClassicalNegationOutsideEpistemicError("classical negation outside an epistemic literal", cur_.span);
                r.bodyNeg.push_back(atom());
            }
            return;
        }
        r.bodyPos.push_back(atom());
    }

    Literal literal() {
        bool positive = true;
        if (cur_.kind == Tok::Minus) {
            positive = false;
            shift();
        }
        return {atom(), positive};
    }

    Atom atom() {
        if (!startsAtom(cur_)) fail("expected atom");
        if (cur_.text == "not" || cur_.text == "knot") fail("keyword used as predicate name");
        SourceSpan span = cur_.span;
        Atom       a{std::string(cur_.text)};
        shift();
        if (cur_.kind == Tok::LParen) {
            shift();
            a.args.push_back(term());
            while (cur_.kind == Tok::Comma) {
                shift();
                a.args.push_back(term());
            }
            expect(Tok::RParen, "expected ')'");
        }
        span.end = lastSpan_.end;
        checkArity(a, span);
        lastSpan_ = span;
        return a;
    }

    Term term() {
        switch (cur_.kind) {
            case Tok::Ident:
            case Tok::Number: {
                Term t = Term::constant(std::string(cur_.text));
                shift();
                return t;
            }
            case Tok::Variable: {
                Term t = Term::variable(std::string(cur_.text));
                shift();
                return t;
            }
            default: fail("expected term");
        }
    }

    void checkArity(const Atom& a, SourceSpan span) {
        auto [it, inserted] = arity_.emplace(a.predicate, a.arity());
        if (!inserted && it->second != a.arity())
            throw ArityMismatchError("predicate '" + a.predicate + "' used with arity " + std::to_string(a.arity()) +
                                         ", previously " + std::to_string(it->second),
                                     span);
    }

    Lexer                              lex_;
    Token                              cur_{};
    Token                              peek_{};
    SourceSpan                         lastSpan_{};
    std::map<std::string, std::size_t> arity_;
};

void appendBody(std::string& out, const Rule& r) {
    const char* sep = "";
    auto        put = [&](const std::string& s) {
        out += sep;
        out += s;
        sep = ", ";
    };
    for (const auto& a : r.bodyPos) put(a.str());
    for (const auto& a : r.bodyNeg) put("not " + a.str());
    for (const auto& e : r.bodyEpi) put(e.str());
}

} // namespace

Program parse_program(std::string_view text) { return Parser(text).program(); }

Query parse_query(std::string_view text) { return Parser(text).query(); }

std::string serialize_rule(const Rule& r) {
    std::string out;
    for (std::size_t i = 0; i != r.head.size(); ++i) {
        if (i) out += " v ";
        out += r.head[i].str();
    }
    bool hasBody = !r.bodyPos.empty() || !r.bodyNeg.empty() || !r.bodyEpi.empty();
    if (hasBody || r.head.empty()) {
        out += r.head.empty() ? ":-" : " :-";
        if (hasBody) out += ' ';
        appendBody(out, r);
    }
    out += '.';
    return out;
}

std::string serialize_program(const Program& program) {
    std::string out;
    for (const auto& r : program.rules) {
        out += serialize_rule(r);
        out += '\n';
    }
    return out;
}

} // namespace elpq
