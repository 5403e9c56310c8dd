#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gvc0/term.hpp"

namespace gvc0 {

/// Deterministic S-expression for a well-sorted term.
std::string encodeTerm(const Term& t);
std::string encodeSort(Sort s);

/// Closed, universally quantified assertion with an instantiation pattern.
struct Axiom {
  std::string name;
  std::string smtText;  // full (assert ...) form
};

/// Solver-facing summary of a verified pure function.
struct FunctionSymbols {
  std::string name;
  std::vector<Sort> paramSorts;
  Sort retSort = Sort::Int;
  std::vector<Axiom> axioms;  // A1 (limited-equality), A2 (definitional), A3 (postcondition)
};

/// Solver command string from the environment (GVC0_SOLVER) or the default
/// `z3 -in`.
std::string defaultSolverCommand();

class SmtProcess;

enum class Validity { Valid, Invalid, Unknown };

/// One external SMT solver over SMT-LIB 2 text. The preamble (print-success,
/// per-query timeout, Ref/Snap sorts, cdiv/cmod) is sent on construction;
/// check_valid queries are push/pop bracketed so the assertion stack is
/// restored on return.
class SolverSession {
public:
  explicit SolverSession(const std::string& command, int timeoutSeconds = 10);
  ~SolverSession();

  SolverSession(const SolverSession&) = delete;
  SolverSession& operator=(const SolverSession&) = delete;

  /// push; assert pi; assert (not phi); check-sat; pop.
  /// unsat -> Valid, sat -> Invalid, unknown/timeout/crash -> Unknown.
  Validity checkValid(const std::vector<TermPtr>& pi, const TermPtr& phi);

  /// Satisfiability of pi alone (branch feasibility).
  Validity checkValidNegated(const std::vector<TermPtr>& pi);

  void declareFunctionSymbols(const FunctionSymbols& f);

  /// Raw command round-trip; returns the response line. Used by tests.
  std::string command(const std::string& text);

  int stackDepth() const { return depth_; }
  const std::vector<std::string>& transcript() const { return transcript_; }
  bool alive() const;
  /// Diagnostic from the last Unknown result, if any.
  const std::string& lastDiagnostic() const { return lastDiagnostic_; }

  /// The four mandated preamble commands (exact text).
  static const std::vector<std::string>& specPreamble();

private:
  void ensureDeclared(const TermPtr& t);
  std::string roundTrip(const std::string& text, int deadlineMs);

  std::unique_ptr<SmtProcess> proc_;
  std::string commandLine_;
  int timeoutSec_;
  int depth_ = 0;
  std::set<std::string> declaredSyms_;
  std::set<std::string> declaredFuncs_;
  std::vector<std::string> transcript_;
  std::string lastDiagnostic_;
};

}  // namespace gvc0
