#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gvc0/methods.hpp"
#include "gvc0/typecheck.hpp"

namespace gvc0 {

/// Concrete run-time value: int, bool, or reference (address 0 is NULL).
struct Value {
  enum class K { Int, Bool, Ref } kind = K::Int;
  std::int64_t i = 0;
  bool b = false;
  long addr = 0;

  static Value ofInt(std::int64_t v) { return {K::Int, v, false, 0}; }
  static Value ofBool(bool v) { return {K::Bool, 0, v, 0}; }
  static Value ofRef(long a) { return {K::Ref, 0, false, a}; }
  static Value null() { return ofRef(0); }

  bool operator==(const Value&) const = default;
  std::string str() const;
};

struct ConcreteHeap {
  std::map<long, std::map<std::string, Value>> objects;
  long nextAddr = 1;

  bool allocated(long addr) const { return objects.count(addr) > 0; }
};

struct RunOutcome {
  enum class Kind { Done, CheckFailed, RuntimeError, BudgetExceeded } kind = Kind::Done;
  std::optional<Value> value;             // Done, non-void entry
  std::string message;
  std::optional<RuntimeCheck> failedCheck;  // CheckFailed
};

struct InterpLimits {
  long long stepBudget = 10'000'000;  // interpreter steps
  int depthBudget = 10'000;           // predicate unrolling / pure recursion
};

/// Reference interpreter: executes a program under C0-style semantics with
/// the report's residual run-time checks enforced at their recorded
/// locations (guards first). Dynamic acc checks test non-nullness and
/// allocation, not ownership accounting.
class Interpreter {
public:
  Interpreter(const TypedProgram& prog, const VerificationReport& report,
              InterpLimits limits = {});

  /// Runs `entry` with the given arguments. The entry method's own
  /// precondition is evaluated concretely first.
  RunOutcome run(const std::string& entry, const std::vector<Value>& args);

  /// Direct recursive evaluation of a pure function body against a concrete
  /// heap; the precondition's boolean part is checked. Serves as the oracle
  /// for the axiom-equivalence properties.
  Value evalPureFunction(const FunctionDecl& f, const std::vector<Value>& args,
                         ConcreteHeap& heap);

private:
  struct Frame;
  friend struct InterpImpl;

  const TypedProgram& prog_;
  const VerificationReport& report_;
  InterpLimits limits_;
  // (line, col, kind) -> checks recorded there
  std::map<std::tuple<int, int, int>, std::vector<const RuntimeCheck*>> checkIndex_;
};

}  // namespace gvc0
