#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gvc0/source.hpp"

namespace gvc0 {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

enum class TypeKind { Int, Bool, Ref, Null, Void };

/// Source-level type. Ref carries the struct name; Null is the type of the
/// NULL literal (compatible with any Ref).
struct Type {
  TypeKind kind = TypeKind::Int;
  std::string structName;  // set iff kind == Ref

  static Type intTy() { return {TypeKind::Int, {}}; }
  static Type boolTy() { return {TypeKind::Bool, {}}; }
  static Type refTy(std::string s) { return {TypeKind::Ref, std::move(s)}; }
  static Type nullTy() { return {TypeKind::Null, {}}; }
  static Type voidTy() { return {TypeKind::Void, {}}; }

  bool isRefLike() const { return kind == TypeKind::Ref || kind == TypeKind::Null; }
  /// Compatible for assignment/comparison (Null unifies with any Ref).
  bool compatible(const Type& o) const {
    if (kind == o.kind && structName == o.structName) return true;
    return (kind == TypeKind::Null && o.isRefLike()) ||
           (o.kind == TypeKind::Null && isRefLike());
  }
  std::string str() const {
    switch (kind) {
      case TypeKind::Int: return "int";
      case TypeKind::Bool: return "bool";
      case TypeKind::Ref: return structName + "*";
      case TypeKind::Null: return "NULL";
      case TypeKind::Void: return "void";
    }
    return "?";
  }
  bool operator==(const Type&) const = default;
};

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

enum class UnOp { Neg, Not };
enum class BinOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

enum class ExprKind {
  IntLit,
  BoolLit,
  NullLit,
  Var,
  Result,      // \result
  FieldRead,   // base->field
  Unary,
  Binary,
  Ternary,
  Call,        // pure function application (or method call in statement position)
  Unfolding,   // unfolding pred(args) in body
  Alloc,       // alloc(Struct) — only legal as a direct assignment rhs
};

struct Expr {
  ExprKind kind;
  Pos pos;

  std::int64_t intVal = 0;
  bool boolVal = false;
  std::string name;  // Var name / field name / callee / predicate / struct
  UnOp unOp = UnOp::Neg;
  BinOp binOp = BinOp::Add;
  ExprPtr a, b, c;             // operands: FieldRead base in a; Ternary (a?b:c); Unfolding body in a
  std::vector<ExprPtr> args;   // Call / Unfolding arguments

  // Filled by the typechecker.
  Type type = Type::intTy();
  bool calleeIsMethod = false;  // Call nodes: resolved to a method (statement position only)
};

ExprPtr mkIntLit(Pos p, std::int64_t v);
ExprPtr mkBoolLit(Pos p, bool v);
ExprPtr mkNullLit(Pos p);
ExprPtr mkVar(Pos p, std::string name);
ExprPtr mkResult(Pos p);
ExprPtr mkFieldRead(Pos p, ExprPtr base, std::string field);
ExprPtr mkUnary(Pos p, UnOp op, ExprPtr e);
ExprPtr mkBinary(Pos p, BinOp op, ExprPtr l, ExprPtr r);
ExprPtr mkTernary(Pos p, ExprPtr c, ExprPtr t, ExprPtr e);
ExprPtr mkCall(Pos p, std::string callee, std::vector<ExprPtr> args);
ExprPtr mkUnfolding(Pos p, std::string pred, std::vector<ExprPtr> args, ExprPtr body);
ExprPtr mkAlloc(Pos p, std::string structName);

/// Structural copy with variables replaced; names absent from the map are kept.
ExprPtr substituteVars(const ExprPtr& e,
                       const std::vector<std::pair<std::string, ExprPtr>>& binding);

/// Logical negation with double-negation collapse (for branch guards).
ExprPtr negate(const ExprPtr& e);

// ---------------------------------------------------------------------------
// Specification formulas
// ---------------------------------------------------------------------------

struct Formula;
using FormulaPtr = std::shared_ptr<Formula>;

enum class FormulaKind {
  Bool,  // boolean expression conjunct
  Acc,   // acc(lval->field)
  Pred,  // predicate instance
  And,   // left && right (left frames right)
  Cond,  // (cond ? then : else)
};

struct Formula {
  FormulaKind kind;
  Pos pos;

  ExprPtr expr;             // Bool: the expression; Acc: the FieldRead lvalue; Cond: condition
  std::string pred;         // Pred name
  std::vector<ExprPtr> args;
  FormulaPtr left, right;   // And operands / Cond arms
};

FormulaPtr mkBoolFormula(ExprPtr e);
FormulaPtr mkAccFormula(Pos p, ExprPtr fieldRead);
FormulaPtr mkPredFormula(Pos p, std::string name, std::vector<ExprPtr> args);
FormulaPtr mkAndFormula(FormulaPtr l, FormulaPtr r);
FormulaPtr mkCondFormula(Pos p, ExprPtr cond, FormulaPtr t, FormulaPtr e);
FormulaPtr mkTrueFormula(Pos p);

FormulaPtr substituteVars(const FormulaPtr& f,
                          const std::vector<std::pair<std::string, ExprPtr>>& binding);

/// Possibly-imprecise formula: `? && body`. Absent clauses default to precise true.
struct GradualFormula {
  bool imprecise = false;
  FormulaPtr body;  // never null; `?` alone has body `true`
  Pos pos;
};

GradualFormula preciseTrue(Pos p);

// ---------------------------------------------------------------------------
// Declarations
// ---------------------------------------------------------------------------

struct Param {
  Type type;
  std::string name;
  Pos pos;
};

struct StructDecl {
  std::string name;
  std::vector<Param> fields;  // field name/type pairs
  Pos pos;
};

struct PredicateDecl {
  std::string name;
  std::vector<Param> params;
  GradualFormula body;
  Pos pos;
};

struct Stmt;
using StmtPtr = std::shared_ptr<Stmt>;

enum class StmtKind {
  LocalDecl,  // type name [= init];
  Assign,     // lval = expr;   (lval: Var or FieldRead; rhs may be Alloc or a method Call)
  CallStmt,   // m(args);
  If,
  While,
  Return,
  Assert,     // assert(formula) — check-only consume
  Fold,
  Unfold,
  Block,
};

struct Stmt {
  StmtKind kind;
  Pos pos;

  Type declType = Type::intTy();   // LocalDecl
  std::string name;                // LocalDecl var / Fold-Unfold predicate
  ExprPtr lhs, rhs;                // Assign; While/If condition in rhs... (see below)
  ExprPtr cond;                    // If / While condition
  std::vector<GradualFormula> invariants;  // While
  std::vector<StmtPtr> body;       // Block / If-then / While body
  std::vector<StmtPtr> elseBody;   // If-else
  ExprPtr callExpr;                // CallStmt: the Call expression
  std::optional<GradualFormula> formula;  // Assert
  std::vector<ExprPtr> args;       // Fold/Unfold arguments
  ExprPtr retVal;                  // Return (may be null for void)
};

struct FunctionDecl {
  std::string name;
  std::vector<Param> params;
  Type returnType;
  GradualFormula pre;   // normalized conjunction of requires clauses
  GradualFormula post;  // over params and \result
  ExprPtr body;         // single expression
  Pos pos;
};

struct MethodDecl {
  std::string name;
  std::vector<Param> params;
  Type returnType;
  GradualFormula pre;
  GradualFormula post;
  std::vector<StmtPtr> body;
  Pos pos;
};

struct Program {
  std::vector<StructDecl> structs;
  std::vector<PredicateDecl> predicates;
  std::vector<FunctionDecl> functions;
  std::vector<MethodDecl> methods;
  /// Top-level declaration order, as (kind, index-into-vector) pairs.
  enum class DeclKind { Struct, Predicate, Function, Method };
  std::vector<std::pair<DeclKind, std::size_t>> order;
};

}  // namespace gvc0
