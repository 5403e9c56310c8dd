#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gvc0/funcinfo.hpp"
#include "gvc0/smt.hpp"
#include "gvc0/snapshot.hpp"
#include "gvc0/state.hpp"
#include "gvc0/typecheck.hpp"

namespace gvc0 {

struct EvalOutcome {
  SymbolicState state;
  TermPtr value;
};

struct ConsumeOutcome {
  SymbolicState state;
  SnapPtr snapshot;
};

Sort sortOfType(const Type& t);

/// Conjunct-tree shape of a formula (Unit for pure conjuncts, a leaf per
/// acc/predicate, pairs for && and conditional arms).
ShapePtr shapeOfFormula(const Formula& f, const TypedProgram& prog);

/// Zero/false/null/unit filler tree for the untaken arm of a conditional.
SnapPtr defaultSnapshot(const SnapShape& shape);

/// Snapshot adapted to a shape: pass-through when it matches, projection
/// destructuring when it is an opaque Snap-sorted leaf.
SnapPtr adaptSnapshot(const SnapPtr& s, const SnapShape& shape);

/// Handler installed by the function verifier: called when a heap access has
/// no chunk. Returns the value term to use (after growing the snapshot), or
/// throws. `receiverSrc` is the receiver in source terms when known.
using MissingAccessHandler = std::function<TermPtr(
    SymbolicState& state, const TermPtr& receiver, const ExprPtr& receiverSrc,
    const std::string& field, Pos pos)>;

/// The gradual symbolic-execution primitives: eval, produce, consume, and
/// branch, over value-semantic states. One engine serves one verification
/// run; it owns the fresh-symbol counter, chunk ids, and the solver session.
class Engine {
public:
  Engine(const TypedProgram& prog, SolverSession& solver, FreshCounter& fresh,
         FunctionTable& functions)
      : prog_(prog), solver_(solver), fresh_(fresh), functions_(functions) {}

  const TypedProgram& program() const { return prog_; }
  SolverSession& solver() { return solver_; }
  FreshCounter& freshCounter() { return fresh_; }
  FunctionTable& functions() { return functions_; }

  // --- eval ------------------------------------------------------------------

  std::vector<EvalOutcome> eval(const SymbolicState& state, const ExprPtr& e);

  // --- produce ---------------------------------------------------------------

  /// Adds permissions and constraints from `gf` valued by snapshot `delta`
  /// (whose shape must match the conjunct tree). A leading `?` makes the
  /// state imprecise. `intoOptimistic` targets h? instead of h.
  std::vector<SymbolicState> produce(const SymbolicState& state, const GradualFormula& gf,
                                     const SnapPtr& delta, bool intoOptimistic = false);

  // --- consume ---------------------------------------------------------------

  /// Asserts constraints and removes permissions; expressions are evaluated
  /// against the heap as it was when the outermost consume started. In an
  /// imprecise state unprovable conjuncts become run-time checks recorded at
  /// `site`; in a precise state they are static failures.
  std::vector<ConsumeOutcome> consume(const SymbolicState& state, const GradualFormula& gf,
                                      CheckKind kind, Pos site);

  // --- branch ----------------------------------------------------------------

  struct BranchOut {
    std::optional<SymbolicState> then, els;
  };
  /// Successor states for cond/!cond; infeasible sides are pruned. On solver
  /// unknown both sides are explored.
  BranchOut branch(const SymbolicState& state, const TermPtr& cond, const ExprPtr& src);

  // --- symstate operations -----------------------------------------------------

  enum class LookupMode {
    Frozen,       // reads: include chunks marked consumed (consume-entry view)
    SkipConsumed  // removal/conflict checks: exclude consumed chunks
  };
  struct LookupResult {
    const FieldChunk* chunk = nullptr;
    long id = 0;
  };
  /// Chunk for (receiver, field) in h then h?, syntactic receiver match first
  /// and solver-validated equality under pi second.
  LookupResult heapLookup(const SymbolicState& state, const TermPtr& receiver,
                          const std::string& field, LookupMode mode = LookupMode::Frozen);

  /// New optimistic chunk with a fresh value; pi gains receiver != null.
  /// Caller state must be imprecise.
  TermPtr addOptimisticChunk(SymbolicState& state, const TermPtr& receiver,
                             const ExprPtr& receiverSrc, const std::string& field);

  void recordCheck(SymbolicState& state, CheckKind kind, FormulaPtr condition, Pos site);

  /// PredicateChunk for (name, args) with solver-validated argument equality.
  std::optional<std::pair<PredChunk, long>> findPredChunk(const SymbolicState& state,
                                                          const std::string& name,
                                                          const std::vector<TermPtr>& args,
                                                          LookupMode mode = LookupMode::Frozen);

  // --- hooks for the function verifier ----------------------------------------

  MissingAccessHandler missingAccessHandler;
  int recursiveUnfoldDepth() const { return recursiveUnfoldDepth_; }

  long nextChunkId() { return ++chunkIds_; }

  /// Is the predicate (directly or mutually) recursive?
  bool predicateIsRecursive(const std::string& name) const;

private:
  std::vector<EvalOutcome> evalFieldRead(const SymbolicState& state, const ExprPtr& e);
  std::vector<EvalOutcome> evalUnfolding(const SymbolicState& state, const ExprPtr& e);
  std::vector<SymbolicState> produceFormula(const SymbolicState& state, const Formula& f,
                                            const SnapPtr& delta, bool intoOptimistic);
  struct ConsumeStep {
    SymbolicState state;
    SnapPtr snapshot;
  };
  std::vector<ConsumeStep> consumeFormula(const SymbolicState& state, const Formula& f,
                                          CheckKind kind, Pos site);

  TermPtr valueForMissingAccess(SymbolicState& state, const TermPtr& receiver,
                                const ExprPtr& receiverSrc, const std::string& field, Pos pos,
                                CheckKind kind);

  friend std::vector<EvalOutcome> evalFunctionApplication(Engine&, const SymbolicState&,
                                                          const ExprPtr&);

  const TypedProgram& prog_;
  SolverSession& solver_;
  FreshCounter& fresh_;
  FunctionTable& functions_;
  long chunkIds_ = 0;
  int consumeDepth_ = 0;
  int recursiveUnfoldDepth_ = 0;
};

/// Fig.-5-style evaluation of a pure-function application: evaluate the
/// arguments, consume the extended precondition collecting run-time checks
/// tagged with the call's origin, restore both heaps, make the state
/// imprecise when the callee's postcondition is, and return the application
/// term carrying the consumed snapshot. Lives with the function verifier.
std::vector<EvalOutcome> evalFunctionApplication(Engine& eng, const SymbolicState& state,
                                                 const ExprPtr& call);

}  // namespace gvc0
