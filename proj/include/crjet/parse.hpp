#pragma once

#include <stdexcept>
#include <string>

#include "crjet/expr.hpp"

namespace crjet {

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

/// Parse an expression over the tower's variables.
/// Grammar: identifiers, integer and rational constants, "i", operators
/// + - * / ^ (integer exponents), unary minus, atan/exp/log/sqrt, parentheses.
Expr parse_expr(const std::string& text, const std::shared_ptr<Tower>& tower);

}  // namespace crjet
