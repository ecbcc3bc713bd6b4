#include "crjet/parse.hpp"

#include <cctype>

namespace crjet {

namespace {

class Parser {
public:
    Parser(const std::string& text, std::shared_ptr<Tower> tower)
        : text_(text), tw_(std::move(tower)) {}

    Expr parse() {
        Expr e = sum();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Expr sum() {
        Expr e = product();
        while (true) {
            if (eat('+')) {
                e = e + product();
            } else if (eat('-')) {
                e = e - product();
            } else {
                return e;
            }
        }
    }

    Expr product() {
        Expr e = factor();
        while (true) {
            if (eat('*')) {
                e = e * factor();
            } else if (eat('/')) {
                size_t at = pos_;
                Expr d = factor();
                if (d.is_zero()) throw ParseError("division by zero", at);
                e = e / d;
            } else {
                return e;
            }
        }
    }

    Expr factor() {
        if (eat('-')) return -factor();
        Expr base = primary();
        if (eat('^')) {
            bool neg = eat('-');
            skip_ws();
            if (pos_ >= text_.size() || !std::isdigit((unsigned char)text_[pos_]))
                fail("non-integer exponent");
            long k = integer();
            if (neg && base.is_zero()) fail("zero to a negative power");
            return base.pow(neg ? -k : k);
        }
        return base;
    }

    long integer() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stol(text_.substr(start, pos_ - start));
    }

    Expr primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = sum();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) ++pos_;
            mpz_class n(text_.substr(start, pos_ - start));
            return Expr::constant(tw_, GaussRat(mpq_class(n)));
        }
        if (std::isalpha((unsigned char)c)) {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
                ++pos_;
            std::string id = text_.substr(start, pos_ - start);
            if (id == "i") return Expr::constant(tw_, GaussRat::i());
            AtomKind kind;
            bool is_func = true;
            if (id == "atan") {
                kind = AtomKind::Atan;
            } else if (id == "exp") {
                kind = AtomKind::Exp;
            } else if (id == "log") {
                kind = AtomKind::Log;
            } else if (id == "sqrt") {
                kind = AtomKind::Sqrt;
            } else {
                is_func = false;
            }
            if (is_func) {
                if (!eat('(')) fail("expected '(' after function name");
                Expr arg = sum();
                if (!eat(')')) fail("expected ')'");
                if (kind == AtomKind::Log && arg.is_zero()) throw ParseError("log(0)", start);
                return Expr::apply(kind, arg);
            }
            if (tw_->find_variable(id) < 0) throw ParseError("unknown identifier '" + id + "'", start);
            return Expr::variable(tw_, id);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& text_;
    std::shared_ptr<Tower> tw_;
    size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(const std::string& text, const std::shared_ptr<Tower>& tower) {
    return Parser(text, tower).parse();
}

}  // namespace crjet
