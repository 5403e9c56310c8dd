#pragma once

#include <string>
#include <vector>

#include "gvc0/engine.hpp"
#include "gvc0/funcs.hpp"

namespace gvc0 {

enum class Verdict { Verified, VerifiedWithChecks, StaticFailed, Rejected };

const char* verdictStr(Verdict v);
Verdict worseVerdict(Verdict a, Verdict b);

struct DeclReport {
  std::string name;
  std::string declKind;  // "predicate" | "function" | "method"
  Verdict verdict = Verdict::Verified;
  std::vector<RuntimeCheck> checks;
  std::vector<ExtensionEvent> extensions;
  std::vector<std::string> diagnostics;
};

struct VerificationReport {
  std::string file;
  Verdict verdict = Verdict::Verified;
  std::vector<DeclReport> declarations;  // source declaration order
};

struct VerifyResult {
  VerificationReport report;
  FunctionTable functions;  // axioms and snapshot maps of verified functions
};

/// Whole-program verification: predicate well-formedness, then functions
/// (axioms accumulate in the session), then methods. Declarations are
/// processed and reported in source order; the process verdict is the worst
/// declaration verdict.
VerifyResult verifyProgram(const TypedProgram& prog, SolverSession& solver,
                           const std::string& filename);

/// Symbolically executes one method against its contract. Exposed for tests.
class MethodVerifier {
public:
  MethodVerifier(const TypedProgram& prog, Engine& eng) : prog_(prog), eng_(eng) {}

  DeclReport verify(const MethodDecl& m);

private:
  std::vector<SymbolicState> execStmt(const SymbolicState& state, const Stmt& s);
  std::vector<SymbolicState> execSeq(std::vector<SymbolicState> states,
                                     const std::vector<StmtPtr>& stmts);
  std::vector<SymbolicState> execWhile(const SymbolicState& state, const Stmt& s);
  std::vector<SymbolicState> execMethodCall(const SymbolicState& state, const Expr& call,
                                            const std::string& assignTo, Pos site);

  void collectChecks(const SymbolicState& s);

  const TypedProgram& prog_;
  Engine& eng_;
  std::vector<RuntimeCheck> pending_;
};

}  // namespace gvc0
