#include "gvc0/typecheck.hpp"

#include <functional>
#include <set>

#include "gvc0/printer.hpp"

namespace gvc0 {

Type TypedProgram::fieldType(const std::string& structName, const std::string& field) const {
  const StructDecl* s = structOf(structName);
  if (!s) throw InternalError("unknown struct " + structName);
  for (const auto& f : s->fields)
    if (f.name == field) return f.type;
  throw InternalError("unknown field " + structName + "." + field);
}

namespace {

enum class SpecCtx {
  None,        // plain statement expression
  Pre,         // requires
  Post,        // ensures (\result allowed)
  Invariant,
  PredBody,
  FuncBody,    // pure function body (calls must be pure, self-call allowed)
};

class Checker {
public:
  explicit Checker(Program p) { typed_.program = std::move(p); }

  TypecheckResult run() {
    buildTables();
    if (diags_.empty()) {
      for (auto& pd : typed_.program.predicates) checkPredicate(pd);
      for (std::size_t i = 0; i < typed_.program.functions.size(); ++i) checkFunction(i);
      for (auto& m : typed_.program.methods) checkMethod(m);
    }
    return TypecheckResult{std::move(typed_), std::move(diags_)};
  }

private:
  void error(Pos pos, std::string msg) { diags_.push_back({pos, std::move(msg)}); }

  // --- tables ---------------------------------------------------------------

  void buildTables() {
    auto& prog = typed_.program;
    for (const auto& s : prog.structs) {
      if (!typed_.structs.emplace(s.name, &s).second)
        error(s.pos, "duplicate struct '" + s.name + "'");
      std::set<std::string> fields;
      for (const auto& f : s.fields) {
        if (!fields.insert(f.name).second)
          error(f.pos, "duplicate field '" + f.name + "' in struct " + s.name);
        if (f.type.kind == TypeKind::Ref && !lookupStructLater(prog, f.type.structName))
          error(f.pos, "unknown struct '" + f.type.structName + "'");
      }
    }
    // predicates, functions, and methods share the call namespace
    auto claim = [&](const std::string& name, Pos pos) {
      if (!callables_.insert(name).second)
        error(pos, "duplicate declaration '" + name + "'");
    };
    for (const auto& d : prog.predicates) {
      claim(d.name, d.pos);
      typed_.predicates.emplace(d.name, &d);
    }
    for (const auto& f : prog.functions) {
      claim(f.name, f.pos);
      typed_.functions.emplace(f.name, &f);
    }
    for (const auto& m : prog.methods) {
      claim(m.name, m.pos);
      typed_.methods.emplace(m.name, &m);
    }
    // functions must only apply earlier functions or themselves
    std::set<std::string> seen;
    for (const auto& f : prog.functions) {
      seen.insert(f.name);
      funcDeclaredBy_.emplace(f.name, seen);
    }
  }

  static bool lookupStructLater(const Program& p, const std::string& name) {
    for (const auto& s : p.structs)
      if (s.name == name) return true;
    return false;
  }

  bool validType(const Type& t, Pos pos) {
    if (t.kind == TypeKind::Ref && !typed_.structOf(t.structName)) {
      error(pos, "unknown struct '" + t.structName + "'");
      return false;
    }
    return true;
  }

  // --- environments ---------------------------------------------------------

  using Env = std::map<std::string, Type>;

  Env paramEnv(const std::vector<Param>& params) {
    Env env;
    for (const auto& p : params) {
      validType(p.type, p.pos);
      if (p.type.kind == TypeKind::Void) error(p.pos, "parameter cannot be void");
      if (!env.emplace(p.name, p.type).second)
        error(p.pos, "duplicate parameter '" + p.name + "'");
    }
    return env;
  }

  // --- declarations ---------------------------------------------------------

  void checkPredicate(PredicateDecl& pd) {
    Env env = paramEnv(pd.params);
    checkGradualFormula(pd.body, env, SpecCtx::PredBody, Type::voidTy(), "");
    auditSelfFraming(pd.body, {}, "predicate " + pd.name);
  }

  void checkFunction(std::size_t idx) {
    FunctionDecl& f = typed_.program.functions[idx];
    if (f.returnType.kind == TypeKind::Void) {
      error(f.pos, "pure function '" + f.name + "' cannot return void");
      return;
    }
    validType(f.returnType, f.pos);
    Env env = paramEnv(f.params);
    currentFunction_ = f.name;
    checkGradualFormula(f.pre, env, SpecCtx::Pre, Type::voidTy(), f.name);
    checkGradualFormula(f.post, env, SpecCtx::Post, f.returnType, f.name);
    // A function postcondition is an expression: permissions come from the pre.
    forbidHeapAtoms(*f.post.body, f.name);
    Type bodyTy = checkExpr(f.body, env, SpecCtx::FuncBody, Type::voidTy(), f.name);
    if (!bodyTy.compatible(f.returnType))
      error(f.body->pos, "function body has type " + bodyTy.str() + ", declared " +
                             f.returnType.str());
    checkPurity(f);
    auditSelfFraming(f.pre, {}, "precondition of " + f.name);
    if (!f.pre.imprecise)
      auditSelfFraming(f.post, collectAccSet(*f.pre.body), "postcondition of " + f.name);
    currentFunction_.clear();
  }

  void checkMethod(MethodDecl& m) {
    validType(m.returnType, m.pos);
    Env env = paramEnv(m.params);
    checkGradualFormula(m.pre, env, SpecCtx::Pre, Type::voidTy(), "");
    checkGradualFormula(m.post, env, SpecCtx::Post, m.returnType, "");
    auditSelfFraming(m.pre, {}, "precondition of " + m.name);
    auditSelfFraming(m.post, {}, "postcondition of " + m.name);
    Env body = env;
    bool returns = checkStmts(m.body, body, m.returnType);
    if (m.returnType.kind != TypeKind::Void && !returns)
      error(m.pos, "method '" + m.name + "' may fall off the end without returning");
  }

  // --- purity ----------------------------------------------------------------

  /// Body is a single expression by construction; the impure constructs that
  /// can still appear are alloc and method calls.
  void checkPurity(const FunctionDecl& f) {
    std::function<void(const ExprPtr&)> walk = [&](const ExprPtr& e) {
      if (!e) return;
      if (e->kind == ExprKind::Alloc)
        error(e->pos, "impure construct in pure function '" + f.name + "': alloc");
      if (e->kind == ExprKind::Call && typed_.methods.count(e->name))
        error(e->pos, "impure construct in pure function '" + f.name + "': call to method '" +
                          e->name + "'");
      walk(e->a);
      walk(e->b);
      walk(e->c);
      for (const auto& a : e->args) walk(a);
    };
    walk(f.body);
  }

  // --- formulas ---------------------------------------------------------------

  void checkGradualFormula(GradualFormula& gf, const Env& env, SpecCtx ctx, Type resultTy,
                           const std::string& selfFunc) {
    gf.body = normalizeFormula(gf.body);
    checkFormula(*gf.body, env, ctx, resultTy, selfFunc);
  }

  /// Split boolean `&&` spines into formula conjunctions and rewrite
  /// predicate applications into predicate atoms.
  FormulaPtr normalizeFormula(const FormulaPtr& f) {
    switch (f->kind) {
      case FormulaKind::Bool: {
        const ExprPtr& e = f->expr;
        if (e->kind == ExprKind::Binary && e->binOp == BinOp::And) {
          FormulaPtr l = normalizeFormula(mkBoolFormula(e->a));
          FormulaPtr r = normalizeFormula(mkBoolFormula(e->b));
          return mkAndFormula(l, r);
        }
        if (e->kind == ExprKind::Call && typed_.predicates.count(e->name))
          return mkPredFormula(e->pos, e->name, e->args);
        return f;
      }
      case FormulaKind::And:
        f->left = normalizeFormula(f->left);
        f->right = normalizeFormula(f->right);
        return f;
      case FormulaKind::Cond:
        f->left = normalizeFormula(f->left);
        f->right = normalizeFormula(f->right);
        return f;
      default:
        return f;
    }
  }

  void checkFormula(Formula& f, const Env& env, SpecCtx ctx, Type resultTy,
                    const std::string& selfFunc) {
    switch (f.kind) {
      case FormulaKind::Bool: {
        Type t = checkExpr(f.expr, env, ctx, resultTy, selfFunc);
        if (t.kind != TypeKind::Bool)
          error(f.expr->pos, "formula conjunct must be bool, found " + t.str());
        break;
      }
      case FormulaKind::Acc: {
        if (f.expr->kind != ExprKind::FieldRead) {
          error(f.pos, "acc requires a field l-value");
          break;
        }
        checkExpr(f.expr, env, ctx, resultTy, selfFunc);
        break;
      }
      case FormulaKind::Pred: {
        auto it = typed_.predicates.find(f.pred);
        if (it == typed_.predicates.end()) {
          error(f.pos, "unknown predicate '" + f.pred + "'");
          break;
        }
        const auto& params = it->second->params;
        if (params.size() != f.args.size()) {
          error(f.pos, "predicate '" + f.pred + "' expects " + std::to_string(params.size()) +
                           " arguments");
          break;
        }
        for (std::size_t i = 0; i < f.args.size(); ++i) {
          Type t = checkExpr(f.args[i], env, ctx, resultTy, selfFunc);
          if (!t.compatible(params[i].type))
            error(f.args[i]->pos, "argument " + std::to_string(i + 1) + " of '" + f.pred +
                                      "' has type " + t.str() + ", expected " +
                                      params[i].type.str());
        }
        break;
      }
      case FormulaKind::And:
        checkFormula(*f.left, env, ctx, resultTy, selfFunc);
        checkFormula(*f.right, env, ctx, resultTy, selfFunc);
        break;
      case FormulaKind::Cond: {
        Type t = checkExpr(f.expr, env, ctx, resultTy, selfFunc);
        if (t.kind != TypeKind::Bool)
          error(f.expr->pos, "formula condition must be bool, found " + t.str());
        checkFormula(*f.left, env, ctx, resultTy, selfFunc);
        checkFormula(*f.right, env, ctx, resultTy, selfFunc);
        break;
      }
    }
  }

  void forbidHeapAtoms(const Formula& f, const std::string& func) {
    switch (f.kind) {
      case FormulaKind::Acc:
        error(f.pos, "postcondition of pure function '" + func +
                         "' cannot contain acc (it is framed by the precondition)");
        break;
      case FormulaKind::Pred:
        error(f.pos, "postcondition of pure function '" + func +
                         "' cannot contain a predicate instance");
        break;
      case FormulaKind::And:
      case FormulaKind::Cond:
        forbidHeapAtoms(*f.left, func);
        forbidHeapAtoms(*f.right, func);
        break;
      default:
        break;
    }
  }

  // --- expressions -------------------------------------------------------------

  Type checkExpr(const ExprPtr& e, const Env& env, SpecCtx ctx, Type resultTy,
                 const std::string& selfFunc) {
    Type t = checkExprInner(e, env, ctx, resultTy, selfFunc);
    e->type = t;
    return t;
  }

  Type checkExprInner(const ExprPtr& e, const Env& env, SpecCtx ctx, Type resultTy,
                      const std::string& selfFunc) {
    switch (e->kind) {
      case ExprKind::IntLit: return Type::intTy();
      case ExprKind::BoolLit: return Type::boolTy();
      case ExprKind::NullLit: return Type::nullTy();
      case ExprKind::Var: {
        auto it = env.find(e->name);
        if (it == env.end()) {
          error(e->pos, "unbound name '" + e->name + "'");
          return Type::intTy();
        }
        return it->second;
      }
      case ExprKind::Result:
        if (ctx != SpecCtx::Post) {
          error(e->pos, "\\result is only valid in ensures clauses");
          return Type::intTy();
        }
        return resultTy;
      case ExprKind::FieldRead: {
        Type base = checkExpr(e->a, env, ctx, resultTy, selfFunc);
        if (base.kind != TypeKind::Ref) {
          error(e->pos, "field access on non-reference type " + base.str());
          return Type::intTy();
        }
        const StructDecl* s = typed_.structOf(base.structName);
        if (!s) return Type::intTy();
        for (const auto& fld : s->fields)
          if (fld.name == e->name) return fld.type;
        error(e->pos, "struct " + base.structName + " has no field '" + e->name + "'");
        return Type::intTy();
      }
      case ExprKind::Unary: {
        Type t = checkExpr(e->a, env, ctx, resultTy, selfFunc);
        if (e->unOp == UnOp::Not) {
          if (t.kind != TypeKind::Bool) error(e->pos, "'!' needs a bool operand");
          return Type::boolTy();
        }
        if (t.kind != TypeKind::Int) error(e->pos, "unary '-' needs an int operand");
        return Type::intTy();
      }
      case ExprKind::Binary: {
        Type l = checkExpr(e->a, env, ctx, resultTy, selfFunc);
        Type r = checkExpr(e->b, env, ctx, resultTy, selfFunc);
        switch (e->binOp) {
          case BinOp::Add: case BinOp::Sub: case BinOp::Mul:
          case BinOp::Div: case BinOp::Mod:
            if (l.kind != TypeKind::Int || r.kind != TypeKind::Int)
              error(e->pos, "arithmetic needs int operands");
            return Type::intTy();
          case BinOp::Lt: case BinOp::Le: case BinOp::Gt: case BinOp::Ge:
            if (l.kind != TypeKind::Int || r.kind != TypeKind::Int)
              error(e->pos, "comparison needs int operands");
            return Type::boolTy();
          case BinOp::Eq: case BinOp::Ne:
            if (!l.compatible(r))
              error(e->pos, "cannot compare " + l.str() + " with " + r.str());
            if (l.kind == TypeKind::Void)
              error(e->pos, "cannot compare void values");
            return Type::boolTy();
          case BinOp::And: case BinOp::Or:
            if (l.kind != TypeKind::Bool || r.kind != TypeKind::Bool)
              error(e->pos, "logical operator needs bool operands");
            return Type::boolTy();
        }
        return Type::intTy();
      }
      case ExprKind::Ternary: {
        Type c = checkExpr(e->a, env, ctx, resultTy, selfFunc);
        if (c.kind != TypeKind::Bool) error(e->a->pos, "ternary condition must be bool");
        Type l = checkExpr(e->b, env, ctx, resultTy, selfFunc);
        Type r = checkExpr(e->c, env, ctx, resultTy, selfFunc);
        if (!l.compatible(r))
          error(e->pos, "ternary arms have incompatible types " + l.str() + " / " + r.str());
        return l.kind == TypeKind::Null ? r : l;
      }
      case ExprKind::Call: {
        // In expressions only pure functions are callable; methods are
        // handled at statement positions by checkStmts.
        if (typed_.methods.count(e->name)) {
          error(e->pos, "method '" + e->name + "' cannot be used in " +
                            (ctx == SpecCtx::None ? "an expression" : "a specification"));
          return Type::intTy();
        }
        if (typed_.predicates.count(e->name)) {
          error(e->pos, "predicate '" + e->name + "' used as an expression");
          return Type::boolTy();
        }
        auto it = typed_.functions.find(e->name);
        if (it == typed_.functions.end()) {
          error(e->pos, "unbound function '" + e->name + "'");
          return Type::intTy();
        }
        const FunctionDecl* f = it->second;
        if (ctx == SpecCtx::FuncBody || !selfFunc.empty()) {
          // inside function declarations: only earlier functions or self
          auto seen = funcDeclaredBy_.find(selfFunc);
          if (seen != funcDeclaredBy_.end() && !seen->second.count(e->name))
            error(e->pos, "function '" + e->name + "' used before its declaration in '" +
                              selfFunc + "' (forward and mutual references are not supported)");
        }
        if (f->params.size() != e->args.size()) {
          error(e->pos, "function '" + e->name + "' expects " +
                            std::to_string(f->params.size()) + " arguments");
          return f->returnType;
        }
        for (std::size_t i = 0; i < e->args.size(); ++i) {
          Type t = checkExpr(e->args[i], env, ctx, resultTy, selfFunc);
          if (!t.compatible(f->params[i].type))
            error(e->args[i]->pos, "argument " + std::to_string(i + 1) + " of '" + e->name +
                                       "' has type " + t.str() + ", expected " +
                                       f->params[i].type.str());
        }
        return f->returnType;
      }
      case ExprKind::Unfolding: {
        auto it = typed_.predicates.find(e->name);
        if (it == typed_.predicates.end()) {
          error(e->pos, "unknown predicate '" + e->name + "'");
        } else if (it->second->params.size() != e->args.size()) {
          error(e->pos, "predicate '" + e->name + "' expects " +
                            std::to_string(it->second->params.size()) + " arguments");
        } else {
          for (std::size_t i = 0; i < e->args.size(); ++i) {
            Type t = checkExpr(e->args[i], env, ctx, resultTy, selfFunc);
            if (!t.compatible(it->second->params[i].type))
              error(e->args[i]->pos, "argument " + std::to_string(i + 1) + " of '" + e->name +
                                         "' has wrong type " + t.str());
          }
        }
        return checkExpr(e->a, env, ctx, resultTy, selfFunc);
      }
      case ExprKind::Alloc: {
        error(e->pos, "alloc(...) is only valid as the right-hand side of an assignment");
        return Type::refTy(e->name);
      }
    }
    return Type::intTy();
  }

  // --- statements ----------------------------------------------------------------

  /// Returns true if every path through the statements returns.
  bool checkStmts(const std::vector<StmtPtr>& body, Env& env, Type retTy) {
    bool returned = false;
    for (const auto& s : body) {
      if (returned) error(s->pos, "unreachable statement after return");
      returned = checkStmt(*s, env, retTy) || returned;
    }
    return returned;
  }

  bool checkStmt(Stmt& s, Env& env, Type retTy) {
    switch (s.kind) {
      case StmtKind::LocalDecl: {
        validType(s.declType, s.pos);
        if (s.declType.kind == TypeKind::Void) error(s.pos, "variable cannot be void");
        if (env.count(s.name)) {
          error(s.pos, "redeclaration of '" + s.name + "'");
        }
        if (s.rhs) {
          Type t = checkRhs(s.rhs, env, s.declType);
          if (!t.compatible(s.declType))
            error(s.pos, "initializer has type " + t.str() + ", expected " + s.declType.str());
        }
        env[s.name] = s.declType;
        return false;
      }
      case StmtKind::Assign: {
        Type lt;
        if (s.lhs->kind == ExprKind::Var) {
          auto it = env.find(s.lhs->name);
          if (it == env.end()) {
            error(s.lhs->pos, "unbound name '" + s.lhs->name + "'");
            return false;
          }
          lt = it->second;
          s.lhs->type = lt;
        } else if (s.lhs->kind == ExprKind::FieldRead) {
          lt = checkExpr(s.lhs, env, SpecCtx::None, Type::voidTy(), "");
        } else {
          error(s.lhs->pos, "assignment target must be a variable or field");
          return false;
        }
        Type rt = checkRhs(s.rhs, env, lt);
        if (!rt.compatible(lt))
          error(s.pos, "cannot assign " + rt.str() + " to " + lt.str());
        return false;
      }
      case StmtKind::CallStmt: {
        Expr& call = *s.callExpr;
        if (auto it = typed_.methods.find(call.name); it != typed_.methods.end()) {
          call.calleeIsMethod = true;
          checkMethodCall(call, env, *it->second);
        } else {
          checkExpr(s.callExpr, env, SpecCtx::None, Type::voidTy(), "");
        }
        return false;
      }
      case StmtKind::If: {
        Type c = checkExpr(s.cond, env, SpecCtx::None, Type::voidTy(), "");
        if (c.kind != TypeKind::Bool) error(s.cond->pos, "if condition must be bool");
        Env thenEnv = env, elseEnv = env;
        bool t = checkStmts(s.body, thenEnv, retTy);
        bool e = !s.elseBody.empty() && checkStmts(s.elseBody, elseEnv, retTy);
        return t && e;
      }
      case StmtKind::While: {
        Type c = checkExpr(s.cond, env, SpecCtx::None, Type::voidTy(), "");
        if (c.kind != TypeKind::Bool) error(s.cond->pos, "while condition must be bool");
        for (auto& inv : s.invariants)
          checkGradualFormula(inv, env, SpecCtx::Invariant, Type::voidTy(), "");
        for (auto& inv : s.invariants) auditSelfFraming(inv, {}, "loop invariant");
        Env bodyEnv = env;
        checkStmts(s.body, bodyEnv, retTy);
        return false;
      }
      case StmtKind::Return: {
        if (retTy.kind == TypeKind::Void) {
          if (s.retVal) error(s.pos, "void method cannot return a value");
        } else {
          if (!s.retVal) {
            error(s.pos, "non-void method must return a value");
          } else {
            Type t = checkExpr(s.retVal, env, SpecCtx::None, Type::voidTy(), "");
            if (!t.compatible(retTy))
              error(s.pos, "returning " + t.str() + " from a " + retTy.str() + " method");
          }
        }
        return true;
      }
      case StmtKind::Assert:
        checkGradualFormula(*s.formula, env, SpecCtx::Invariant, Type::voidTy(), "");
        return false;
      case StmtKind::Fold:
      case StmtKind::Unfold: {
        auto it = typed_.predicates.find(s.name);
        if (it == typed_.predicates.end()) {
          error(s.pos, "unknown predicate '" + s.name + "'");
          return false;
        }
        if (it->second->params.size() != s.args.size()) {
          error(s.pos, "predicate '" + s.name + "' expects " +
                           std::to_string(it->second->params.size()) + " arguments");
          return false;
        }
        for (std::size_t i = 0; i < s.args.size(); ++i) {
          Type t = checkExpr(s.args[i], env, SpecCtx::None, Type::voidTy(), "");
          if (!t.compatible(it->second->params[i].type))
            error(s.args[i]->pos, "argument " + std::to_string(i + 1) + " of '" + s.name +
                                      "' has wrong type " + t.str());
        }
        return false;
      }
      case StmtKind::Block: {
        Env inner = env;
        return checkStmts(s.body, inner, retTy);
      }
    }
    return false;
  }

  /// Assignment right-hand sides additionally allow alloc and method calls.
  Type checkRhs(const ExprPtr& rhs, Env& env, Type target) {
    if (rhs->kind == ExprKind::Alloc) {
      if (!typed_.structOf(rhs->name)) {
        error(rhs->pos, "unknown struct '" + rhs->name + "'");
        return target;
      }
      Type t = Type::refTy(rhs->name);
      rhs->type = t;
      return t;
    }
    if (rhs->kind == ExprKind::Call) {
      if (auto it = typed_.methods.find(rhs->name); it != typed_.methods.end()) {
        rhs->calleeIsMethod = true;
        checkMethodCall(*rhs, env, *it->second);
        rhs->type = it->second->returnType;
        if (it->second->returnType.kind == TypeKind::Void)
          error(rhs->pos, "void method call has no value");
        return it->second->returnType;
      }
    }
    return checkExpr(rhs, env, SpecCtx::None, Type::voidTy(), "");
  }

  void checkMethodCall(Expr& call, Env& env, const MethodDecl& m) {
    if (m.params.size() != call.args.size()) {
      error(call.pos, "method '" + call.name + "' expects " + std::to_string(m.params.size()) +
                          " arguments");
      return;
    }
    for (std::size_t i = 0; i < call.args.size(); ++i) {
      Type t = checkExpr(call.args[i], env, SpecCtx::None, Type::voidTy(), "");
      if (!t.compatible(m.params[i].type))
        error(call.args[i]->pos, "argument " + std::to_string(i + 1) + " of '" + call.name +
                                     "' has type " + t.str() + ", expected " +
                                     m.params[i].type.str());
    }
    call.type = m.returnType;
  }

  // --- self-framing audit ----------------------------------------------------

  /// Canonical strings of field l-values framed so far.
  using AccSet = std::set<std::string>;

  static AccSet collectAccSet(const Formula& f) {
    AccSet s;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
      switch (g.kind) {
        case FormulaKind::Acc: s.insert(printExpr(*g.expr)); break;
        case FormulaKind::And:
        case FormulaKind::Cond:
          walk(*g.left);
          walk(*g.right);
          break;
        default: break;
      }
    };
    walk(f);
    return s;
  }

  void auditSelfFraming(const GradualFormula& gf, AccSet initial, const std::string& what) {
    if (gf.imprecise) return;  // `?` frames everything to its right
    AccSet framed = std::move(initial);
    auditFormula(*gf.body, framed, what);
  }

  void auditFormula(const Formula& f, AccSet& framed, const std::string& what) {
    switch (f.kind) {
      case FormulaKind::Bool:
        auditExprReads(*f.expr, framed, what);
        break;
      case FormulaKind::Acc:
        if (f.expr->kind == ExprKind::FieldRead) {
          auditExprReads(*f.expr->a, framed, what);  // receiver reads
          framed.insert(printExpr(*f.expr));
        }
        break;
      case FormulaKind::Pred:
        for (const auto& a : f.args) auditExprReads(*a, framed, what);
        break;
      case FormulaKind::And:
        auditFormula(*f.left, framed, what);
        auditFormula(*f.right, framed, what);
        break;
      case FormulaKind::Cond: {
        auditExprReads(*f.expr, framed, what);
        AccSet l = framed, r = framed;
        auditFormula(*f.left, l, what);
        auditFormula(*f.right, r, what);
        // only unconditional frames survive for later conjuncts
        break;
      }
    }
  }

  void auditExprReads(const Expr& e, const AccSet& framed, const std::string& what) {
    switch (e.kind) {
      case ExprKind::FieldRead: {
        if (!framed.count(printExpr(e)))
          error(e.pos, "formula is not self-framed: " + printExpr(e) + " is read without a " +
                           "preceding acc (in " + what + ")");
        auditExprReads(*e.a, framed, what);
        break;
      }
      case ExprKind::Unfolding:
        // reads under an unfolding are framed by the predicate instance;
        // the semantic well-formedness pass validates them
        for (const auto& a : e.args) auditExprReads(*a, framed, what);
        break;
      default:
        if (e.a) auditExprReads(*e.a, framed, what);
        if (e.b) auditExprReads(*e.b, framed, what);
        if (e.c) auditExprReads(*e.c, framed, what);
        for (const auto& a : e.args) auditExprReads(*a, framed, what);
        break;
    }
  }

  TypedProgram typed_;
  std::vector<Diagnostic> diags_;
  std::set<std::string> callables_;
  std::map<std::string, std::set<std::string>> funcDeclaredBy_;
  std::string currentFunction_;
};

}  // namespace

TypecheckResult typecheck(Program p) { return Checker(std::move(p)).run(); }

}  // namespace gvc0
