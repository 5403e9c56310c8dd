#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gvc0/ast.hpp"
#include "gvc0/snapshot.hpp"
#include "gvc0/term.hpp"

namespace gvc0 {

struct FieldChunk {
  TermPtr receiver;  // sort Ref
  std::string field;
  TermPtr value;
  ExprPtr receiverSrc;  // source expression of the receiver, when known
};

struct PredChunk {
  std::string pred;
  std::vector<TermPtr> args;
  SnapPtr snapshot;
  std::vector<ExprPtr> argSrcs;
};

struct HeapChunk {
  // exactly one engaged
  std::optional<FieldChunk> field;
  std::optional<PredChunk> pred;
  long id = 0;  // engine-assigned, unique per verification run

  static HeapChunk ofField(FieldChunk c) { return HeapChunk{std::move(c), std::nullopt, 0}; }
  static HeapChunk ofPred(PredChunk c) { return HeapChunk{std::nullopt, std::move(c), 0}; }
};

using Heap = std::vector<HeapChunk>;

enum class CheckKind { FieldAccess, Assert, Pre, Post, Invariant, Predicate };

const char* checkKindStr(CheckKind k);

struct CheckOrigin {
  std::string callee;
  Pos callSite;
  std::vector<std::pair<std::string, ExprPtr>> bindings;  // formal -> actual source expr
};

/// Residual run-time check: a source-level condition to evaluate at
/// `location` whenever all `guards` hold concretely.
struct RuntimeCheck {
  FormulaPtr condition;  // Bool / Acc / Pred atom in caller-visible terms
  Pos location;
  std::vector<ExprPtr> guards;
  std::optional<CheckOrigin> origin;
  CheckKind kind = CheckKind::Assert;
};

/// Renders for reports; two checks are duplicates iff these match.
std::string checkFingerprint(const RuntimeCheck& c);

struct BranchCond {
  TermPtr cond;
  ExprPtr source;  // null when not expressible in source terms
};

/// The gradual symbolic state: (isImprecise, h?, h, gamma, pi, R) plus the
/// branch-condition stack (part of pi, tracked separately) and the current
/// check-origin context. States are values; engine steps copy them.
struct SymbolicState {
  bool isImprecise = false;
  Heap optimisticHeap;  // h?
  Heap heap;            // h
  std::map<std::string, TermPtr> store;  // gamma
  std::vector<TermPtr> pathCond;         // pi (without branch conds)
  std::vector<BranchCond> branchStack;
  std::vector<RuntimeCheck> checks;      // R
  std::optional<CheckOrigin> originContext;

  // consume bookkeeping: chunks removed so far (reads still see them);
  // stripped when the outermost consume finishes
  std::set<long> consumedIds;
  // boolean constraints added by produce, read by the function verifier
  std::vector<TermPtr> produced;
  // method execution: this path has executed `return`
  bool returned = false;
  Pos returnPos;

  /// pi for the solver: path conditions plus branch conditions, in order.
  std::vector<TermPtr> solverPi() const {
    std::vector<TermPtr> out = pathCond;
    for (const auto& b : branchStack) out.push_back(b.cond);
    return out;
  }

  void assume(TermPtr t) { pathCond.push_back(std::move(t)); }

  TermPtr lookupVar(const std::string& name) const {
    auto it = store.find(name);
    if (it == store.end()) throw InternalError("store has no binding for " + name);
    return it->second;
  }
};

/// Chunk-multiset equality (order-insensitive, structural terms).
bool heapsEqual(const Heap& a, const Heap& b);

/// Purely syntactic probe: a chunk whose receiver is structurally equal.
/// Alias-aware lookup (solver-backed) lives in the engine.
const FieldChunk* findFieldChunkSyntactic(const Heap& h, const Term& receiver,
                                          const std::string& field);

std::string heapStr(const Heap& h);

}  // namespace gvc0
