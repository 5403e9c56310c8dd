#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gvc0/source.hpp"

namespace gvc0 {

enum class Sort { Int, Bool, Ref, Snap };

const char* sortName(Sort s);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

enum class TermKind {
  IntLit,
  BoolLit,
  NullRef,
  Symbol,   // fresh symbol, e.g. n@0
  App,      // built-in operator application
  FuncApp,  // pure-function application term f(snapshot, args...)
};

/// Immutable, sorted first-order term.
struct Term {
  TermKind kind;
  Sort sort;
  std::int64_t intVal = 0;
  bool boolVal = false;
  std::string name;  // Symbol name, App operator, or FuncApp function name
  bool limited = false;  // FuncApp: the %limited companion symbol
  std::vector<TermPtr> args;
};

// Builders. Operator spellings follow SMT-LIB where one exists.
TermPtr tInt(std::int64_t v);
TermPtr tBool(bool v);
TermPtr tNull();
TermPtr tSym(std::string name, Sort s);
TermPtr tApp(std::string op, Sort s, std::vector<TermPtr> args);
TermPtr tFuncApp(std::string func, bool limited, Sort retSort, TermPtr snap,
                 std::vector<TermPtr> args);

TermPtr tAdd(TermPtr a, TermPtr b);
TermPtr tSub(TermPtr a, TermPtr b);
TermPtr tMul(TermPtr a, TermPtr b);
TermPtr tDiv(TermPtr a, TermPtr b);  // C truncation semantics (cdiv)
TermPtr tMod(TermPtr a, TermPtr b);  // C truncation semantics (cmod)
TermPtr tNeg(TermPtr a);
TermPtr tEq(TermPtr a, TermPtr b);
TermPtr tNot(TermPtr a);
TermPtr tAnd(TermPtr a, TermPtr b);
TermPtr tOr(TermPtr a, TermPtr b);
TermPtr tImplies(TermPtr a, TermPtr b);
TermPtr tIte(TermPtr c, TermPtr a, TermPtr b);
TermPtr tLt(TermPtr a, TermPtr b);
TermPtr tLe(TermPtr a, TermPtr b);
TermPtr tGt(TermPtr a, TermPtr b);
TermPtr tGe(TermPtr a, TermPtr b);

// Snapshot datatype constructors/selectors.
TermPtr tUnit();
TermPtr tCombine(TermPtr a, TermPtr b);
TermPtr tFirst(TermPtr s);
TermPtr tSecond(TermPtr s);
TermPtr tSnapWrap(TermPtr v);    // snapInt / snapBool / snapRef by sort
TermPtr tSnapUnwrap(TermPtr s, Sort target);  // getInt / getBool / getRef

bool termEquals(const Term& a, const Term& b);

/// Replace symbols by terms (capture is impossible: terms are closed).
TermPtr termSubstitute(const TermPtr& t, const std::map<std::string, TermPtr>& bySymbol);

/// Rewrite applications of `func` to the %limited companion (for axiom bodies).
TermPtr termLimitCalls(const TermPtr& t, const std::string& func);

/// Human-readable rendering for diagnostics and transcripts.
std::string termStr(const Term& t);

/// Deterministic fresh-symbol source: hint → hint@0, hint@1, ...
class FreshCounter {
public:
  TermPtr fresh(Sort sort, const std::string& hint);

private:
  std::map<std::string, int> next_;
};

}  // namespace gvc0
