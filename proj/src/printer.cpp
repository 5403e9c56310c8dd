#include "gvc0/printer.hpp"

#include <sstream>

namespace gvc0 {

namespace {

// Expression precedence levels, loosest first.
enum Prec {
  kTernary = 0,
  kOr,
  kAnd,
  kEq,
  kRel,
  kAdd,
  kMul,
  kUnary,
  kPostfix,
};

int precOf(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Ternary:
    case ExprKind::Unfolding:
      return kTernary;
    case ExprKind::Binary:
      switch (e.binOp) {
        case BinOp::Or: return kOr;
        case BinOp::And: return kAnd;
        case BinOp::Eq:
        case BinOp::Ne: return kEq;
        case BinOp::Lt:
        case BinOp::Le:
        case BinOp::Gt:
        case BinOp::Ge: return kRel;
        case BinOp::Add:
        case BinOp::Sub: return kAdd;
        case BinOp::Mul:
        case BinOp::Div:
        case BinOp::Mod: return kMul;
      }
      return kPostfix;
    case ExprKind::Unary:
      return kUnary;
    default:
      return kPostfix;
  }
}

const char* opStr(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

void emitExpr(std::ostream& os, const Expr& e, int parentPrec);

void emitChild(std::ostream& os, const Expr& e, int myPrec, bool tight) {
  // tight: child must bind strictly tighter (right operand of left-assoc ops)
  emitExpr(os, e, tight ? myPrec + 1 : myPrec);
}

void emitExpr(std::ostream& os, const Expr& e, int parentPrec) {
  int myPrec = precOf(e);
  bool paren = myPrec < parentPrec;
  if (paren) os << "(";
  switch (e.kind) {
    case ExprKind::IntLit: os << e.intVal; break;
    case ExprKind::BoolLit: os << (e.boolVal ? "true" : "false"); break;
    case ExprKind::NullLit: os << "NULL"; break;
    case ExprKind::Var: os << e.name; break;
    case ExprKind::Result: os << "\\result"; break;
    case ExprKind::FieldRead:
      emitExpr(os, *e.a, kPostfix);
      os << "->" << e.name;
      break;
    case ExprKind::Unary:
      os << (e.unOp == UnOp::Not ? "!" : "-");
      emitExpr(os, *e.a, kUnary);
      break;
    case ExprKind::Binary:
      emitChild(os, *e.a, myPrec, false);
      os << " " << opStr(e.binOp) << " ";
      emitChild(os, *e.b, myPrec, true);
      break;
    case ExprKind::Ternary:
      emitExpr(os, *e.a, kOr);  // condition can't itself be a bare ternary
      os << " ? ";
      emitExpr(os, *e.b, kTernary);
      os << " : ";
      emitExpr(os, *e.c, kTernary);
      break;
    case ExprKind::Call: {
      os << e.name << "(";
      bool first = true;
      for (const auto& a : e.args) {
        if (!first) os << ", ";
        first = false;
        emitExpr(os, *a, kTernary);
      }
      os << ")";
      break;
    }
    case ExprKind::Unfolding: {
      os << "unfolding " << e.name << "(";
      bool first = true;
      for (const auto& a : e.args) {
        if (!first) os << ", ";
        first = false;
        emitExpr(os, *a, kTernary);
      }
      os << ") in ";
      emitExpr(os, *e.a, kTernary);
      break;
    }
    case ExprKind::Alloc:
      os << "alloc(" << e.name << ")";
      break;
  }
  if (paren) os << ")";
}

void emitFormula(std::ostream& os, const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Bool:
      // Parenthesize ternaries so the conjunct reparses unambiguously.
      emitExpr(os, *f.expr, f.expr->kind == ExprKind::Ternary ? kPostfix : kAnd + 1);
      break;
    case FormulaKind::Acc:
      os << "acc(";
      emitExpr(os, *f.expr, kTernary);
      os << ")";
      break;
    case FormulaKind::Pred: {
      os << f.pred << "(";
      bool first = true;
      for (const auto& a : f.args) {
        if (!first) os << ", ";
        first = false;
        emitExpr(os, *a, kTernary);
      }
      os << ")";
      break;
    }
    case FormulaKind::And:
      emitFormula(os, *f.left);
      os << " && ";
      emitFormula(os, *f.right);
      break;
    case FormulaKind::Cond:
      os << "(";
      emitExpr(os, *f.expr, kOr);
      os << " ? ";
      emitFormula(os, *f.left);
      os << " : ";
      emitFormula(os, *f.right);
      os << ")";
      break;
  }
}

std::string ind(int n) { return std::string(static_cast<std::size_t>(n) * 2, ' '); }

void emitStmt(std::ostream& os, const Stmt& s, int indent);

void emitBody(std::ostream& os, const std::vector<StmtPtr>& body, int indent) {
  os << ind(indent) << "{\n";
  for (const auto& st : body) emitStmt(os, *st, indent + 1);
  os << ind(indent) << "}\n";
}

void emitStmt(std::ostream& os, const Stmt& s, int indent) {
  switch (s.kind) {
    case StmtKind::LocalDecl:
      os << ind(indent) << s.declType.str() << " " << s.name;
      if (s.rhs) {
        os << " = ";
        emitExpr(os, *s.rhs, kTernary);
      }
      os << ";\n";
      break;
    case StmtKind::Assign:
      os << ind(indent);
      emitExpr(os, *s.lhs, kPostfix);
      os << " = ";
      emitExpr(os, *s.rhs, kTernary);
      os << ";\n";
      break;
    case StmtKind::CallStmt:
      os << ind(indent);
      emitExpr(os, *s.callExpr, kTernary);
      os << ";\n";
      break;
    case StmtKind::If:
      os << ind(indent) << "if (";
      emitExpr(os, *s.cond, kTernary);
      os << ")\n";
      emitBody(os, s.body, indent);
      if (!s.elseBody.empty()) {
        os << ind(indent) << "else\n";
        emitBody(os, s.elseBody, indent);
      }
      break;
    case StmtKind::While:
      os << ind(indent) << "while (";
      emitExpr(os, *s.cond, kTernary);
      os << ")\n";
      for (const auto& inv : s.invariants)
        os << ind(indent + 1) << "//@ loop_invariant " << printGradualFormula(inv) << ";\n";
      emitBody(os, s.body, indent);
      break;
    case StmtKind::Return:
      os << ind(indent) << "return";
      if (s.retVal) {
        os << " ";
        emitExpr(os, *s.retVal, kTernary);
      }
      os << ";\n";
      break;
    case StmtKind::Assert:
      os << ind(indent) << "//@ assert (" << printGradualFormula(*s.formula) << ");\n";
      break;
    case StmtKind::Fold:
    case StmtKind::Unfold: {
      os << ind(indent) << "//@ " << (s.kind == StmtKind::Fold ? "fold" : "unfold") << " "
         << s.name << "(";
      bool first = true;
      for (const auto& a : s.args) {
        if (!first) os << ", ";
        first = false;
        emitExpr(os, *a, kTernary);
      }
      os << ");\n";
      break;
    }
    case StmtKind::Block:
      emitBody(os, s.body, indent);
      break;
  }
}

void emitSignature(std::ostream& os, const std::string& name, const Type& ret,
                   const std::vector<Param>& params) {
  os << ret.str() << " " << name << "(";
  bool first = true;
  for (const auto& p : params) {
    if (!first) os << ", ";
    first = false;
    os << p.type.str() << " " << p.name;
  }
  os << ")\n";
}

bool isTriviallyTrue(const GradualFormula& f) {
  return !f.imprecise && f.body->kind == FormulaKind::Bool &&
         f.body->expr->kind == ExprKind::BoolLit && f.body->expr->boolVal;
}

}  // namespace

std::string printExpr(const Expr& e) {
  std::ostringstream os;
  emitExpr(os, e, kTernary);
  return os.str();
}

std::string printFormula(const Formula& f) {
  std::ostringstream os;
  emitFormula(os, f);
  return os.str();
}

std::string printGradualFormula(const GradualFormula& f) {
  std::string body = printFormula(*f.body);
  if (!f.imprecise) return body;
  if (isTriviallyTrue(GradualFormula{false, f.body, f.pos})) return "?";
  return "? && " + body;
}

std::string printStmt(const Stmt& s, int indent) {
  std::ostringstream os;
  emitStmt(os, s, indent);
  return os.str();
}

std::string printProgram(const Program& p) {
  std::ostringstream os;
  for (const auto& [kind, idx] : p.order) {
    switch (kind) {
      case Program::DeclKind::Struct: {
        const auto& s = p.structs[idx];
        os << "struct " << s.name << " {\n";
        for (const auto& f : s.fields) os << "  " << f.type.str() << " " << f.name << ";\n";
        os << "};\n";
        os << "typedef struct " << s.name << " " << s.name << ";\n\n";
        break;
      }
      case Program::DeclKind::Predicate: {
        const auto& d = p.predicates[idx];
        os << "//@ predicate " << d.name << "(";
        bool first = true;
        for (const auto& q : d.params) {
          if (!first) os << ", ";
          first = false;
          os << q.type.str() << " " << q.name;
        }
        os << ") = " << printGradualFormula(d.body) << ";\n\n";
        break;
      }
      case Program::DeclKind::Function: {
        const auto& f = p.functions[idx];
        emitSignature(os, f.name, f.returnType, f.params);
        os << "  //@ pure;\n";
        if (!isTriviallyTrue(f.pre)) os << "  //@ requires " << printGradualFormula(f.pre) << ";\n";
        if (!isTriviallyTrue(f.post)) os << "  //@ ensures " << printGradualFormula(f.post) << ";\n";
        os << "{\n  return " << printExpr(*f.body) << ";\n}\n\n";
        break;
      }
      case Program::DeclKind::Method: {
        const auto& m = p.methods[idx];
        emitSignature(os, m.name, m.returnType, m.params);
        if (!isTriviallyTrue(m.pre)) os << "  //@ requires " << printGradualFormula(m.pre) << ";\n";
        if (!isTriviallyTrue(m.post)) os << "  //@ ensures " << printGradualFormula(m.post) << ";\n";
        emitBody(os, m.body, 0);
        os << "\n";
        break;
      }
    }
  }
  return os.str();
}

}  // namespace gvc0
