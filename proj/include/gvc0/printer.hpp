#pragma once

#include <string>

#include "gvc0/ast.hpp"

namespace gvc0 {

/// Source renderings. printExpr/printFormula produce single-line C0 syntax
/// (used in reports and check conditions); printProgram re-emits a whole
/// program that reparses to a structurally identical AST.
std::string printExpr(const Expr& e);
std::string printFormula(const Formula& f);
std::string printGradualFormula(const GradualFormula& f);
std::string printStmt(const Stmt& s, int indent = 0);
std::string printProgram(const Program& p);

}  // namespace gvc0
