#pragma once

#include <string>

#include "gvc0/ast.hpp"

namespace gvc0 {

/// Parses a whole source buffer. Throws ParseError on the first syntax error.
/// Requires/ensures clauses are conjoined left-to-right; a `?` in any clause
/// marks the whole condition imprecise, normalized to `? && (precise parts)`.
Program parse(const std::string& source);

}  // namespace gvc0
