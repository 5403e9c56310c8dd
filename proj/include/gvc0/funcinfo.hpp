#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gvc0/ast.hpp"
#include "gvc0/smt.hpp"
#include "gvc0/snapshot.hpp"
#include "gvc0/state.hpp"

namespace gvc0 {

/// One component of a function snapshot: which access it stands for, where it
/// lives in the tree, and under which branch conditions it was recorded.
struct SnapshotMapEntry {
  std::string access;            // canonical source text, e.g. "x->val" or "cell(c)"
  ExprPtr accessLval;            // Acc: the field l-value over parameters
  std::string predName;          // Pred entries
  std::vector<ExprPtr> predArgs;
  SnapPath path;
  TermPtr leaf;                  // leaf symbol bound during well-definedness
  std::vector<ExprPtr> guards;   // branch conditions (source terms over params)
  enum class Origin { Declared, Extended } origin = Origin::Declared;
};

struct SnapshotMap {
  std::vector<SnapshotMapEntry> entries;

  const SnapshotMapEntry* find(const std::string& access,
                               const std::vector<std::string>& guardStrs) const;
};

struct ExtensionEvent {
  std::string function;
  std::string access;  // e.g. "x->val"
  std::string guard;   // e.g. "b"; conjunction text when nested
  SnapPath snapshotPath;
};

/// Per-function verification artifact.
struct FunctionInfo {
  const FunctionDecl* decl = nullptr;
  SnapshotMap snapshotMap;
  GradualFormula extendedPre;   // declared precise part plus guarded extension clauses
  ShapePtr snapshotShape;       // conjunct-tree shape of extendedPre
  FunctionSymbols symbols;      // declarations + axioms A1..A3
  std::vector<ExtensionEvent> extensions;
  std::vector<RuntimeCheck> checks;  // residual checks found during well-definedness
  std::optional<Diagnostic> rejected;
  std::optional<Diagnostic> failed;

  bool usable() const { return !rejected && !failed; }
};

using FunctionTable = std::map<std::string, FunctionInfo>;

}  // namespace gvc0
