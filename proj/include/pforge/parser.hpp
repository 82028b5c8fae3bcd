#ifndef PFORGE_PARSER_HPP
#define PFORGE_PARSER_HPP

#include "pforge/ratfn.hpp"

#include <string>

namespace pforge {

// Expression grammar: identifiers, integer literals, + - * / ^ with
// nonnegative integer exponents, parentheses, unary minus. Whitespace
// insensitive. parse(format(f)) == f on canonical forms.
RatFn parse(const std::string& text, const Chart& chart);

std::string format(const RatFn& f);
std::string format(const Poly& p);

struct ParseError : Error {
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " at position " + std::to_string(position)),
          position(position) {}
    std::size_t position;
};

} // namespace pforge

#endif
