#include "gvc0/ast.hpp"

namespace gvc0 {

ExprPtr mkIntLit(Pos p, std::int64_t v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::IntLit;
  e->pos = p;
  e->intVal = v;
  return e;
}

ExprPtr mkBoolLit(Pos p, bool v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::BoolLit;
  e->pos = p;
  e->boolVal = v;
  return e;
}

ExprPtr mkNullLit(Pos p) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::NullLit;
  e->pos = p;
  return e;
}

ExprPtr mkVar(Pos p, std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Var;
  e->pos = p;
  e->name = std::move(name);
  return e;
}

ExprPtr mkResult(Pos p) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Result;
  e->pos = p;
  return e;
}

ExprPtr mkFieldRead(Pos p, ExprPtr base, std::string field) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::FieldRead;
  e->pos = p;
  e->a = std::move(base);
  e->name = std::move(field);
  return e;
}

ExprPtr mkUnary(Pos p, UnOp op, ExprPtr x) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Unary;
  e->pos = p;
  e->unOp = op;
  e->a = std::move(x);
  return e;
}

ExprPtr mkBinary(Pos p, BinOp op, ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Binary;
  e->pos = p;
  e->binOp = op;
  e->a = std::move(l);
  e->b = std::move(r);
  return e;
}

ExprPtr mkTernary(Pos p, ExprPtr c, ExprPtr t, ExprPtr e2) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Ternary;
  e->pos = p;
  e->a = std::move(c);
  e->b = std::move(t);
  e->c = std::move(e2);
  return e;
}

ExprPtr mkCall(Pos p, std::string callee, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Call;
  e->pos = p;
  e->name = std::move(callee);
  e->args = std::move(args);
  return e;
}

ExprPtr mkUnfolding(Pos p, std::string pred, std::vector<ExprPtr> args, ExprPtr body) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Unfolding;
  e->pos = p;
  e->name = std::move(pred);
  e->args = std::move(args);
  e->a = std::move(body);
  return e;
}

ExprPtr mkAlloc(Pos p, std::string structName) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Alloc;
  e->pos = p;
  e->name = std::move(structName);
  return e;
}

ExprPtr substituteVars(const ExprPtr& e,
                       const std::vector<std::pair<std::string, ExprPtr>>& binding) {
  if (!e) return nullptr;
  if (e->kind == ExprKind::Var) {
    for (const auto& [formal, actual] : binding)
      if (formal == e->name) return actual;
    return e;
  }
  auto n = std::make_shared<Expr>(*e);
  n->a = substituteVars(e->a, binding);
  n->b = substituteVars(e->b, binding);
  n->c = substituteVars(e->c, binding);
  n->args.clear();
  for (const auto& a : e->args) n->args.push_back(substituteVars(a, binding));
  return n;
}

ExprPtr negate(const ExprPtr& e) {
  if (e->kind == ExprKind::Unary && e->unOp == UnOp::Not) return e->a;
  return mkUnary(e->pos, UnOp::Not, e);
}

FormulaPtr mkBoolFormula(ExprPtr e) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Bool;
  f->pos = e->pos;
  f->expr = std::move(e);
  return f;
}

FormulaPtr mkAccFormula(Pos p, ExprPtr fieldRead) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Acc;
  f->pos = p;
  f->expr = std::move(fieldRead);
  return f;
}

FormulaPtr mkPredFormula(Pos p, std::string name, std::vector<ExprPtr> args) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Pred;
  f->pos = p;
  f->pred = std::move(name);
  f->args = std::move(args);
  return f;
}

FormulaPtr mkAndFormula(FormulaPtr l, FormulaPtr r) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::And;
  f->pos = l->pos;
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

FormulaPtr mkCondFormula(Pos p, ExprPtr cond, FormulaPtr t, FormulaPtr e) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Cond;
  f->pos = p;
  f->expr = std::move(cond);
  f->left = std::move(t);
  f->right = std::move(e);
  return f;
}

FormulaPtr mkTrueFormula(Pos p) { return mkBoolFormula(mkBoolLit(p, true)); }

FormulaPtr substituteVars(const FormulaPtr& f,
                          const std::vector<std::pair<std::string, ExprPtr>>& binding) {
  if (!f) return nullptr;
  auto n = std::make_shared<Formula>(*f);
  n->expr = substituteVars(f->expr, binding);
  n->args.clear();
  for (const auto& a : f->args) n->args.push_back(substituteVars(a, binding));
  n->left = substituteVars(f->left, binding);
  n->right = substituteVars(f->right, binding);
  return n;
}

GradualFormula preciseTrue(Pos p) { return GradualFormula{false, mkTrueFormula(p), p}; }

}  // namespace gvc0
