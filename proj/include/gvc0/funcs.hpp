#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gvc0/engine.hpp"
#include "gvc0/funcinfo.hpp"

namespace gvc0 {

/// Verifies the pure functions of a program, in declaration order: rejects
/// inadmissible preconditions (equi-recursive check), runs well-definedness
/// with snapshot extension for imprecise preconditions, and emits the A1-A3
/// axioms to the solver on success.
class FunctionVerifier {
public:
  FunctionVerifier(const TypedProgram& prog, SolverSession& solver, FreshCounter& fresh,
                   FunctionTable& table)
      : prog_(prog), solver_(solver), fresh_(fresh), table_(table) {}

  /// Verify one function; the result is also stored in the table. Axioms are
  /// declared to the session only when verification succeeds.
  const FunctionInfo& verifyFunction(const FunctionDecl& f);

  /// Admissibility of the precondition: rejects when (a) it is imprecise and
  /// reaches a recursive predicate, (b) it reaches a recursive predicate
  /// whose body is imprecise, or (c) it transitively contains an application
  /// of the function itself (through predicate bodies and the preconditions
  /// of applied functions). Postconditions are framed by preconditions and
  /// are not checked.
  std::optional<Diagnostic> rejectInadmissiblePre(const FunctionDecl& f) const;

private:
  struct WellDefArtifacts;

  WellDefArtifacts runWellDefinedness(const FunctionDecl& f, const GradualFormula& pre,
                                      bool extensionArmed, FunctionInfo& info);
  void axiomatise(const FunctionDecl& f, FunctionInfo& info, const WellDefArtifacts& art);

  const TypedProgram& prog_;
  SolverSession& solver_;
  FreshCounter& fresh_;
  FunctionTable& table_;
};

/// Fig.-4 well-formedness for assertions: produce twice, the second pass over
/// the original state with the first pass's path condition. Returns the
/// continuation states. Used for function preconditions and predicate bodies.
std::vector<SymbolicState> wellFormedFormula(Engine& eng, const SymbolicState& base,
                                             const GradualFormula& gf, const SnapPtr& delta);

}  // namespace gvc0
