#include "gvc0/term.hpp"

#include <sstream>

namespace gvc0 {

const char* sortName(Sort s) {
  switch (s) {
    case Sort::Int: return "Int";
    case Sort::Bool: return "Bool";
    case Sort::Ref: return "Ref";
    case Sort::Snap: return "Snap";
  }
  return "?";
}

namespace {
TermPtr make(TermKind k, Sort s) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->sort = s;
  return t;
}
}  // namespace

TermPtr tInt(std::int64_t v) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::IntLit;
  t->sort = Sort::Int;
  t->intVal = v;
  return t;
}

TermPtr tBool(bool v) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::BoolLit;
  t->sort = Sort::Bool;
  t->boolVal = v;
  return t;
}

TermPtr tNull() { return make(TermKind::NullRef, Sort::Ref); }

TermPtr tSym(std::string name, Sort s) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Symbol;
  t->sort = s;
  t->name = std::move(name);
  return t;
}

TermPtr tApp(std::string op, Sort s, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::App;
  t->sort = s;
  t->name = std::move(op);
  t->args = std::move(args);
  return t;
}

TermPtr tFuncApp(std::string func, bool limited, Sort retSort, TermPtr snap,
                 std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::FuncApp;
  t->sort = retSort;
  t->name = std::move(func);
  t->limited = limited;
  t->args.push_back(std::move(snap));
  for (auto& a : args) t->args.push_back(std::move(a));
  return t;
}

TermPtr tAdd(TermPtr a, TermPtr b) { return tApp("+", Sort::Int, {std::move(a), std::move(b)}); }
TermPtr tSub(TermPtr a, TermPtr b) { return tApp("-", Sort::Int, {std::move(a), std::move(b)}); }
TermPtr tMul(TermPtr a, TermPtr b) { return tApp("*", Sort::Int, {std::move(a), std::move(b)}); }
TermPtr tDiv(TermPtr a, TermPtr b) { return tApp("cdiv", Sort::Int, {std::move(a), std::move(b)}); }
TermPtr tMod(TermPtr a, TermPtr b) { return tApp("cmod", Sort::Int, {std::move(a), std::move(b)}); }
TermPtr tNeg(TermPtr a) { return tApp("-", Sort::Int, {std::move(a)}); }
TermPtr tEq(TermPtr a, TermPtr b) { return tApp("=", Sort::Bool, {std::move(a), std::move(b)}); }

TermPtr tNot(TermPtr a) {
  if (a->kind == TermKind::App && a->name == "not") return a->args[0];
  return tApp("not", Sort::Bool, {std::move(a)});
}

TermPtr tAnd(TermPtr a, TermPtr b) { return tApp("and", Sort::Bool, {std::move(a), std::move(b)}); }
TermPtr tOr(TermPtr a, TermPtr b) { return tApp("or", Sort::Bool, {std::move(a), std::move(b)}); }
TermPtr tImplies(TermPtr a, TermPtr b) { return tApp("=>", Sort::Bool, {std::move(a), std::move(b)}); }
TermPtr tIte(TermPtr c, TermPtr a, TermPtr b) {
  Sort s = a->sort;
  return tApp("ite", s, {std::move(c), std::move(a), std::move(b)});
}
TermPtr tLt(TermPtr a, TermPtr b) { return tApp("<", Sort::Bool, {std::move(a), std::move(b)}); }
TermPtr tLe(TermPtr a, TermPtr b) { return tApp("<=", Sort::Bool, {std::move(a), std::move(b)}); }
TermPtr tGt(TermPtr a, TermPtr b) { return tApp(">", Sort::Bool, {std::move(a), std::move(b)}); }
TermPtr tGe(TermPtr a, TermPtr b) { return tApp(">=", Sort::Bool, {std::move(a), std::move(b)}); }

TermPtr tUnit() { return tApp("unit", Sort::Snap, {}); }
TermPtr tCombine(TermPtr a, TermPtr b) {
  return tApp("combine", Sort::Snap, {std::move(a), std::move(b)});
}
TermPtr tFirst(TermPtr s) { return tApp("first", Sort::Snap, {std::move(s)}); }
TermPtr tSecond(TermPtr s) { return tApp("second", Sort::Snap, {std::move(s)}); }

TermPtr tSnapWrap(TermPtr v) {
  switch (v->sort) {
    case Sort::Int: return tApp("snapInt", Sort::Snap, {std::move(v)});
    case Sort::Bool: return tApp("snapBool", Sort::Snap, {std::move(v)});
    case Sort::Ref: return tApp("snapRef", Sort::Snap, {std::move(v)});
    case Sort::Snap: return v;
  }
  throw InternalError("tSnapWrap: bad sort");
}

TermPtr tSnapUnwrap(TermPtr s, Sort target) {
  if (s->sort != Sort::Snap) throw InternalError("tSnapUnwrap: not a snapshot term");
  switch (target) {
    case Sort::Int: return tApp("getInt", Sort::Int, {std::move(s)});
    case Sort::Bool: return tApp("getBool", Sort::Bool, {std::move(s)});
    case Sort::Ref: return tApp("getRef", Sort::Ref, {std::move(s)});
    case Sort::Snap: return s;
  }
  throw InternalError("tSnapUnwrap: bad sort");
}

bool termEquals(const Term& a, const Term& b) {
  if (a.kind != b.kind || a.sort != b.sort) return false;
  switch (a.kind) {
    case TermKind::IntLit: return a.intVal == b.intVal;
    case TermKind::BoolLit: return a.boolVal == b.boolVal;
    case TermKind::NullRef: return true;
    case TermKind::Symbol: return a.name == b.name;
    case TermKind::App:
    case TermKind::FuncApp: {
      if (a.name != b.name || a.limited != b.limited || a.args.size() != b.args.size())
        return false;
      for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!termEquals(*a.args[i], *b.args[i])) return false;
      return true;
    }
  }
  return false;
}

TermPtr termSubstitute(const TermPtr& t, const std::map<std::string, TermPtr>& bySymbol) {
  switch (t->kind) {
    case TermKind::Symbol: {
      auto it = bySymbol.find(t->name);
      return it == bySymbol.end() ? t : it->second;
    }
    case TermKind::App:
    case TermKind::FuncApp: {
      bool changed = false;
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      for (const auto& a : t->args) {
        TermPtr n = termSubstitute(a, bySymbol);
        changed = changed || n != a;
        args.push_back(std::move(n));
      }
      if (!changed) return t;
      auto n = std::make_shared<Term>(*t);
      n->args = std::move(args);
      return n;
    }
    default:
      return t;
  }
}

TermPtr termLimitCalls(const TermPtr& t, const std::string& func) {
  switch (t->kind) {
    case TermKind::App:
    case TermKind::FuncApp: {
      bool changed = false;
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      for (const auto& a : t->args) {
        TermPtr n = termLimitCalls(a, func);
        changed = changed || n != a;
        args.push_back(std::move(n));
      }
      bool retag = t->kind == TermKind::FuncApp && t->name == func && !t->limited;
      if (!changed && !retag) return t;
      auto n = std::make_shared<Term>(*t);
      n->args = std::move(args);
      if (retag) n->limited = true;
      return n;
    }
    default:
      return t;
  }
}

std::string termStr(const Term& t) {
  switch (t.kind) {
    case TermKind::IntLit: return std::to_string(t.intVal);
    case TermKind::BoolLit: return t.boolVal ? "true" : "false";
    case TermKind::NullRef: return "null";
    case TermKind::Symbol: return t.name;
    case TermKind::App:
    case TermKind::FuncApp: {
      std::ostringstream os;
      os << "(" << t.name;
      if (t.kind == TermKind::FuncApp && t.limited) os << "%limited";
      for (const auto& a : t.args) os << " " << termStr(*a);
      os << ")";
      return os.str();
    }
  }
  return "?";
}

TermPtr FreshCounter::fresh(Sort sort, const std::string& hint) {
  int n = next_[hint]++;
  return tSym(hint + "@" + std::to_string(n), sort);
}

}  // namespace gvc0
