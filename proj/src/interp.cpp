#include "gvc0/interp.hpp"

#include <functional>
#include <sstream>

#include "gvc0/printer.hpp"

namespace gvc0 {

std::string Value::str() const {
  switch (kind) {
    case K::Int: return std::to_string(i);
    case K::Bool: return b ? "true" : "false";
    case K::Ref: return addr == 0 ? "NULL" : "ref@" + std::to_string(addr);
  }
  return "?";
}

namespace {

struct DynCheckFailed {
  RuntimeCheck check;
  std::string summary;
};
struct DynRuntimeError {
  Pos pos;
  std::string msg;
};
struct DynBudget {
  std::string what;
};

struct Env {
  std::map<std::string, Value> vars;
};

}  // namespace

struct InterpImpl {
  const TypedProgram& prog;
  const Interpreter& owner;
  const InterpLimits& limits;
  ConcreteHeap heap;
  long long steps = 0;
  std::vector<std::string> callStack;

  explicit InterpImpl(const Interpreter& o)
      : prog(o.prog_), owner(o), limits(o.limits_) {}

  void tick(Pos pos) {
    if (++steps > limits.stepBudget)
      throw DynBudget{"step budget exceeded at " + pos.str()};
  }

  // --- checks ---------------------------------------------------------------

  const std::vector<const RuntimeCheck*>* checksAt(Pos pos, CheckKind kind) const {
    auto it = owner.checkIndex_.find({pos.line, pos.col, static_cast<int>(kind)});
    return it == owner.checkIndex_.end() ? nullptr : &it->second;
  }

  std::string envSummary(const Env& env) const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : env.vars) {
      if (!first) os << ", ";
      first = false;
      os << k << " = " << v.str();
    }
    return os.str();
  }

  void runChecks(Pos pos, CheckKind kind, Env& env) {
    const auto* cs = checksAt(pos, kind);
    if (!cs) return;
    for (const RuntimeCheck* c : *cs) {
      bool guarded = true;
      for (const auto& g : c->guards) {
        Value gv = evalExpr(*g, env);
        if (!gv.b) {
          guarded = false;
          break;
        }
      }
      if (!guarded) continue;
      if (!evalFormula(*c->condition, env, limits.depthBudget))
        throw DynCheckFailed{*c, envSummary(env)};
    }
  }

  bool evalFormula(const Formula& f, Env& env, int depth) {
    if (depth <= 0) throw DynBudget{"predicate evaluation depth exceeded"};
    switch (f.kind) {
      case FormulaKind::Bool:
        return evalExpr(*f.expr, env).b;
      case FormulaKind::Acc: {
        Value r = evalExpr(*f.expr->a, env);
        return r.addr != 0 && heap.allocated(r.addr) &&
               heap.objects.at(r.addr).count(f.expr->name) > 0;
      }
      case FormulaKind::Pred: {
        const PredicateDecl* pd = prog.predicates.at(f.pred);
        Env inner;
        for (std::size_t i = 0; i < pd->params.size(); ++i)
          inner.vars[pd->params[i].name] = evalExpr(*f.args[i], env);
        return evalFormula(*pd->body.body, inner, depth - 1);
      }
      case FormulaKind::And:
        return evalFormula(*f.left, env, depth) && evalFormula(*f.right, env, depth);
      case FormulaKind::Cond:
        return evalExpr(*f.expr, env).b ? evalFormula(*f.left, env, depth)
                                        : evalFormula(*f.right, env, depth);
    }
    throw DynRuntimeError{f.pos, "bad formula"};
  }

  // --- expressions ------------------------------------------------------------

  std::int64_t checkedArith(BinOp op, std::int64_t a, std::int64_t b, Pos pos) {
    std::int64_t r = 0;
    bool ovf = false;
    switch (op) {
      case BinOp::Add: ovf = __builtin_add_overflow(a, b, &r); break;
      case BinOp::Sub: ovf = __builtin_sub_overflow(a, b, &r); break;
      case BinOp::Mul: ovf = __builtin_mul_overflow(a, b, &r); break;
      case BinOp::Div:
      case BinOp::Mod:
        if (b == 0) throw DynRuntimeError{pos, "division by zero"};
        if (a == INT64_MIN && b == -1)
          throw DynRuntimeError{pos, "interpreter integer range exceeded"};
        r = op == BinOp::Div ? a / b : a % b;
        break;
      default:
        throw DynRuntimeError{pos, "bad arithmetic operator"};
    }
    if (ovf) throw DynRuntimeError{pos, "interpreter integer range exceeded"};
    return r;
  }

  Value evalExpr(const Expr& e, Env& env) {
    tick(e.pos);
    switch (e.kind) {
      case ExprKind::IntLit: return Value::ofInt(e.intVal);
      case ExprKind::BoolLit: return Value::ofBool(e.boolVal);
      case ExprKind::NullLit: return Value::null();
      case ExprKind::Var: {
        auto it = env.vars.find(e.name);
        if (it == env.vars.end()) throw DynRuntimeError{e.pos, "unbound variable " + e.name};
        return it->second;
      }
      case ExprKind::Result: {
        auto it = env.vars.find("\\result");
        if (it == env.vars.end()) throw DynRuntimeError{e.pos, "\\result unbound"};
        return it->second;
      }
      case ExprKind::FieldRead: {
        runChecks(e.pos, CheckKind::FieldAccess, env);
        Value r = evalExpr(*e.a, env);
        if (r.addr == 0) throw DynRuntimeError{e.pos, "null dereference"};
        if (!heap.allocated(r.addr))
          throw DynRuntimeError{e.pos, "access to unallocated reference"};
        return heap.objects.at(r.addr).at(e.name);
      }
      case ExprKind::Unary: {
        Value v = evalExpr(*e.a, env);
        if (e.unOp == UnOp::Not) return Value::ofBool(!v.b);
        if (v.i == INT64_MIN)
          throw DynRuntimeError{e.pos, "interpreter integer range exceeded"};
        return Value::ofInt(-v.i);
      }
      case ExprKind::Binary: {
        if (e.binOp == BinOp::And) {
          Value l = evalExpr(*e.a, env);
          if (!l.b) return Value::ofBool(false);
          return Value::ofBool(evalExpr(*e.b, env).b);
        }
        if (e.binOp == BinOp::Or) {
          Value l = evalExpr(*e.a, env);
          if (l.b) return Value::ofBool(true);
          return Value::ofBool(evalExpr(*e.b, env).b);
        }
        Value l = evalExpr(*e.a, env);
        Value r = evalExpr(*e.b, env);
        switch (e.binOp) {
          case BinOp::Eq: return Value::ofBool(l == r);
          case BinOp::Ne: return Value::ofBool(!(l == r));
          case BinOp::Lt: return Value::ofBool(l.i < r.i);
          case BinOp::Le: return Value::ofBool(l.i <= r.i);
          case BinOp::Gt: return Value::ofBool(l.i > r.i);
          case BinOp::Ge: return Value::ofBool(l.i >= r.i);
          default: return Value::ofInt(checkedArith(e.binOp, l.i, r.i, e.pos));
        }
      }
      case ExprKind::Ternary:
        return evalExpr(*e.a, env).b ? evalExpr(*e.b, env) : evalExpr(*e.c, env);
      case ExprKind::Call: {
        runChecks(e.pos, CheckKind::Pre, env);
        auto it = prog.functions.find(e.name);
        if (it == prog.functions.end())
          throw DynRuntimeError{e.pos, "call to non-function " + e.name};
        std::vector<Value> args;
        for (const auto& a : e.args) args.push_back(evalExpr(*a, env));
        return callPure(*it->second, args, e.pos);
      }
      case ExprKind::Unfolding:
        // dynamically transparent
        return evalExpr(*e.a, env);
      case ExprKind::Alloc: {
        long addr = heap.nextAddr++;
        const StructDecl* sd = prog.structOf(e.name);
        auto& obj = heap.objects[addr];
        for (const auto& f : sd->fields) {
          switch (f.type.kind) {
            case TypeKind::Int: obj[f.name] = Value::ofInt(0); break;
            case TypeKind::Bool: obj[f.name] = Value::ofBool(false); break;
            default: obj[f.name] = Value::null(); break;
          }
        }
        return Value::ofRef(addr);
      }
    }
    throw DynRuntimeError{e.pos, "bad expression"};
  }

  Value callPure(const FunctionDecl& f, const std::vector<Value>& args, Pos pos) {
    if (static_cast<int>(callStack.size()) > limits.depthBudget)
      throw DynBudget{"recursion depth exceeded in " + f.name};
    Env env;
    for (std::size_t i = 0; i < f.params.size(); ++i) env.vars[f.params[i].name] = args[i];
    callStack.push_back(f.name + " at " + pos.str());
    // the precondition's boolean part must hold concretely
    if (!preBooleanHolds(*f.pre.body, env))
      throw DynCheckFailed{
          RuntimeCheck{f.pre.body, f.pre.pos, {}, CheckOrigin{f.name, pos, {}}, CheckKind::Pre},
          envSummary(env)};
    Value v = evalExpr(*f.body, env);
    callStack.pop_back();
    return v;
  }

  /// Boolean part of a precondition (acc and predicate conjuncts are
  /// evaluated too, as reachability, to keep heap-dependent bodies safe).
  bool preBooleanHolds(const Formula& f, Env& env) {
    return evalFormula(f, env, limits.depthBudget);
  }

  // --- statements ---------------------------------------------------------------

  struct ReturnSignal {
    std::optional<Value> value;
  };

  std::optional<ReturnSignal> execSeq(const std::vector<StmtPtr>& stmts, Env& env) {
    for (const auto& s : stmts)
      if (auto r = execStmt(*s, env)) return r;
    return std::nullopt;
  }

  std::optional<ReturnSignal> execStmt(const Stmt& s, Env& env) {
    tick(s.pos);
    switch (s.kind) {
      case StmtKind::Block:
        return execSeq(s.body, env);
      case StmtKind::LocalDecl: {
        Value v;
        if (s.rhs) {
          runChecks(s.pos, CheckKind::Pre, env);
          v = evalRhs(*s.rhs, env);
        } else {
          v = defaultValue(s.declType);
        }
        env.vars[s.name] = v;
        return std::nullopt;
      }
      case StmtKind::Assign: {
        runChecks(s.pos, CheckKind::Pre, env);
        runChecks(s.pos, CheckKind::FieldAccess, env);
        Value v = evalRhs(*s.rhs, env);
        if (s.lhs->kind == ExprKind::Var) {
          env.vars[s.lhs->name] = v;
        } else {
          Value r = evalExpr(*s.lhs->a, env);
          if (r.addr == 0) throw DynRuntimeError{s.pos, "null dereference on write"};
          if (!heap.allocated(r.addr))
            throw DynRuntimeError{s.pos, "write to unallocated reference"};
          heap.objects[r.addr][s.lhs->name] = v;
        }
        return std::nullopt;
      }
      case StmtKind::CallStmt: {
        runChecks(s.pos, CheckKind::Pre, env);
        const Expr& call = *s.callExpr;
        if (call.calleeIsMethod) {
          callMethod(*prog.methods.at(call.name), call, env);
        } else {
          evalExpr(*s.callExpr, env);
        }
        return std::nullopt;
      }
      case StmtKind::If:
        if (evalExpr(*s.cond, env).b) return execSeq(s.body, env);
        return execSeq(s.elseBody, env);
      case StmtKind::While: {
        runChecks(s.pos, CheckKind::Invariant, env);
        while (evalExpr(*s.cond, env).b) {
          if (auto r = execSeq(s.body, env)) return r;
          runChecks(s.pos, CheckKind::Invariant, env);
        }
        return std::nullopt;
      }
      case StmtKind::Return: {
        std::optional<Value> v;
        if (s.retVal) v = evalExpr(*s.retVal, env);
        if (v) {
          env.vars["\\result"] = *v;
          runChecks(s.pos, CheckKind::Post, env);
          env.vars.erase("\\result");
        } else {
          runChecks(s.pos, CheckKind::Post, env);
        }
        return ReturnSignal{v};
      }
      case StmtKind::Assert:
        runChecks(s.pos, CheckKind::Assert, env);
        runChecks(s.pos, CheckKind::Predicate, env);
        runChecks(s.pos, CheckKind::FieldAccess, env);
        return std::nullopt;
      case StmtKind::Fold:
      case StmtKind::Unfold:
        runChecks(s.pos, CheckKind::Predicate, env);
        return std::nullopt;
    }
    throw DynRuntimeError{s.pos, "bad statement"};
  }

  Value evalRhs(const Expr& rhs, Env& env) {
    if (rhs.kind == ExprKind::Call && rhs.calleeIsMethod) {
      auto r = callMethod(*prog.methods.at(rhs.name), rhs, env);
      if (!r) throw DynRuntimeError{rhs.pos, "void method used as a value"};
      return *r;
    }
    return evalExpr(rhs, env);
  }

  std::optional<Value> callMethod(const MethodDecl& m, const Expr& call, Env& env) {
    if (static_cast<int>(callStack.size()) > limits.depthBudget)
      throw DynBudget{"recursion depth exceeded in " + m.name};
    Env inner;
    for (std::size_t i = 0; i < m.params.size(); ++i)
      inner.vars[m.params[i].name] = evalExpr(*call.args[i], env);
    callStack.push_back(m.name + " at " + call.pos.str());
    auto r = execSeq(m.body, inner);
    // post checks for a fall-off-the-end path live at the method position
    if (!r) runChecks(m.pos, CheckKind::Post, inner);
    callStack.pop_back();
    return r ? r->value : std::nullopt;
  }

  Value defaultValue(const Type& t) {
    switch (t.kind) {
      case TypeKind::Int: return Value::ofInt(0);
      case TypeKind::Bool: return Value::ofBool(false);
      default: return Value::null();
    }
  }
};

Interpreter::Interpreter(const TypedProgram& prog, const VerificationReport& report,
                         InterpLimits limits)
    : prog_(prog), report_(report), limits_(limits) {
  for (const auto& d : report.declarations)
    for (const auto& c : d.checks)
      checkIndex_[{c.location.line, c.location.col, static_cast<int>(c.kind)}].push_back(&c);
}

RunOutcome Interpreter::run(const std::string& entry, const std::vector<Value>& args) {
  auto it = prog_.methods.find(entry);
  if (it == prog_.methods.end())
    return {RunOutcome::Kind::RuntimeError, std::nullopt, "no method named " + entry,
            std::nullopt};
  const MethodDecl& m = *it->second;
  if (args.size() != m.params.size())
    return {RunOutcome::Kind::RuntimeError, std::nullopt,
            "entry expects " + std::to_string(m.params.size()) + " argument(s)", std::nullopt};

  InterpImpl impl(*this);
  Env env;
  for (std::size_t i = 0; i < args.size(); ++i) env.vars[m.params[i].name] = args[i];
  try {
    // the entry method's own precondition, evaluated concretely
    if (!impl.evalFormula(*m.pre.body, env, limits_.depthBudget))
      return {RunOutcome::Kind::CheckFailed, std::nullopt,
              "entry precondition does not hold: " + printGradualFormula(m.pre),
              RuntimeCheck{m.pre.body, m.pre.pos, {}, std::nullopt, CheckKind::Pre}};
    impl.callStack.push_back(entry + " (entry)");
    auto r = impl.execSeq(m.body, env);
    if (!r) impl.runChecks(m.pos, CheckKind::Post, env);
    RunOutcome out;
    out.kind = RunOutcome::Kind::Done;
    if (r && r->value) out.value = r->value;
    return out;
  } catch (const DynCheckFailed& f) {
    RunOutcome out;
    out.kind = RunOutcome::Kind::CheckFailed;
    std::ostringstream os;
    os << "run-time check failed at " << f.check.location.str() << ": "
       << printFormula(*f.check.condition) << " [" << checkKindStr(f.check.kind) << "]";
    if (f.check.origin) os << " (from " << f.check.origin->callee << ")";
    os << "\n  environment: " << f.summary;
    os << "\n  call stack:";
    for (auto rit = impl.callStack.rbegin(); rit != impl.callStack.rend(); ++rit)
      os << "\n    " << *rit;
    out.message = os.str();
    out.failedCheck = f.check;
    return out;
  } catch (const DynRuntimeError& e) {
    return {RunOutcome::Kind::RuntimeError, std::nullopt, e.pos.str() + ": " + e.msg,
            std::nullopt};
  } catch (const DynBudget& b) {
    return {RunOutcome::Kind::BudgetExceeded, std::nullopt, b.what, std::nullopt};
  }
}

Value Interpreter::evalPureFunction(const FunctionDecl& f, const std::vector<Value>& args,
                                    ConcreteHeap& heap) {
  InterpImpl impl(*this);
  impl.heap = heap;
  try {
    Value v = impl.callPure(f, args, f.pos);
    heap = impl.heap;
    return v;
  } catch (const DynCheckFailed& c) {
    throw InternalError("pure oracle: precondition violated for " + f.name + " (" + c.summary +
                        ")");
  } catch (const DynRuntimeError& e) {
    throw InternalError("pure oracle: runtime error in " + f.name + ": " + e.msg);
  } catch (const DynBudget& b) {
    throw InternalError("pure oracle: " + b.what);
  }
}

}  // namespace gvc0
