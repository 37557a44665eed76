#pragma once

#include "warpqm/operator_expr.hpp"

#include <set>
#include <string>

namespace warpqm {

/// Constants every parser accepts: e, m, G, M, I, r_hs, phi_M, Omega, B, omega, hbar, pi.
const std::set<std::string>& builtin_constants();

struct ParseOptions {
    /// Additional constant names accepted next to the built-in ones.
    std::set<std::string> constants;
};

/// Parses the expression grammar documented in docs/grammar.md and returns the normal-ordered result.
/// Throws ParseError (with a 0-based character position) or UnknownSymbolError.
OperatorExpr parse(const std::string& text, const ParseOptions& options = {});

/// Same grammar, but the result must be free of momentum operators.
CoordFunction parse_function(const std::string& text, const ParseOptions& options = {});

/// Parseable text. parse(to_string(a)) reproduces a term for term.
std::string to_string(const OperatorExpr& a);
std::string to_string(const CoordFunction& f);
std::string to_string(const Monomial& m);

}  // namespace warpqm
