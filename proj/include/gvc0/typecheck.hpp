#pragma once

#include <map>
#include <string>
#include <vector>

#include "gvc0/ast.hpp"

namespace gvc0 {

/// Name-resolved, typed program. Lookup tables point into `program`.
struct TypedProgram {
  Program program;
  std::map<std::string, const StructDecl*> structs;
  std::map<std::string, const PredicateDecl*> predicates;
  std::map<std::string, const FunctionDecl*> functions;
  std::map<std::string, const MethodDecl*> methods;

  const StructDecl* structOf(const std::string& name) const {
    auto it = structs.find(name);
    return it == structs.end() ? nullptr : it->second;
  }
  /// Declared type of a struct field; throws InternalError if unknown.
  Type fieldType(const std::string& structName, const std::string& field) const;
};

struct TypecheckResult {
  TypedProgram typed;
  std::vector<Diagnostic> diagnostics;  // empty iff the program is well-typed
  bool ok() const { return diagnostics.empty(); }
};

/// Resolve names, assign types, normalize formulas (split `&&` spines into
/// formula conjunctions, turn predicate applications into predicate atoms),
/// enforce specification placement (`\result`, methods-in-specs, acc shape),
/// run the purity check on every function, and run the syntactic self-framing
/// audit on precise specification formulas.
TypecheckResult typecheck(Program p);

}  // namespace gvc0
