#include "pforge/parser.hpp"

#include <cctype>
#include <sstream>

namespace pforge {

namespace {

class Parser {
public:
    Parser(const std::string& text, const Chart& chart) : text_(text), chart_(chart) {}

    RatFn run() {
        RatFn value = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
        return value;
    }

private:
    const std::string& text_;
    const Chart& chart_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    RatFn expr() {
        RatFn acc = term();
        while (true) {
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else return acc;
        }
    }

    RatFn term() {
        RatFn acc = factor();
        while (true) {
            if (eat('*')) acc *= factor();
            else if (eat('/')) {
                std::size_t at = pos_ - 1;
                RatFn d = factor();
                if (d.is_zero()) throw ParseError("division by zero", at);
                acc /= d;
            } else
                return acc;
        }
    }

    RatFn factor() {
        if (eat('-')) return -factor();
        return power();
    }

    RatFn power() {
        RatFn base = primary();
        while (eat('^')) {
            skip_ws();
            std::size_t at = pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("exponent must be a nonnegative integer", at);
            long e = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                e = e * 10 + (text_[pos_] - '0');
                if (e > 1000000) throw ParseError("exponent too large", at);
                ++pos_;
            }
            base = base.pow(e);
        }
        return base;
    }

    RatFn primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            RatFn inner = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return RatFn::constant(chart_, rat_from_string(text_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            if (!chart_.find(name))
                throw ParseError("unknown identifier '" + name + "'", start);
            return RatFn::var(chart_, name);
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }
};

std::string format_coeff(const Rat& c) {
    return c.get_str();
}

} // namespace

RatFn parse(const std::string& text, const Chart& chart) {
    return Parser(text, chart).run();
}

std::string format(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    // descending graded-lex order
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const Mono& m = it->first;
        const Rat& c = it->second;
        Rat mag = abs(c);
        if (first) {
            if (sgn(c) < 0) out << "-";
            first = false;
        } else {
            out << (sgn(c) < 0 ? " - " : " + ");
        }
        if (m.is_one()) {
            out << format_coeff(mag);
            continue;
        }
        if (!is_one(mag)) {
            if (is_integer(mag)) out << format_coeff(mag) << "*";
            else out << "(" << format_coeff(mag) << ")*";
        }
        bool first_factor = true;
        for (const auto& [idx, e] : m.factors()) {
            if (!first_factor) out << "*";
            first_factor = false;
            out << p.chart().symbols()[idx];
            if (e > 1) out << "^" << e;
        }
    }
    return out.str();
}

std::string format(const RatFn& f) {
    if (f.is_polynomial()) return format(f.as_poly());
    return "(" + format(f.num()) + ")/(" + format(f.den()) + ")";
}

} // namespace pforge
