#include "gvc0/methods.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "gvc0/printer.hpp"

namespace gvc0 {

const char* verdictStr(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "verified";
    case Verdict::VerifiedWithChecks: return "verified-with-checks";
    case Verdict::StaticFailed: return "static-failure";
    case Verdict::Rejected: return "rejected";
  }
  return "?";
}

Verdict worseVerdict(Verdict a, Verdict b) {
  auto rank = [](Verdict v) {
    switch (v) {
      case Verdict::Verified: return 0;
      case Verdict::VerifiedWithChecks: return 1;
      case Verdict::StaticFailed: return 2;
      case Verdict::Rejected: return 3;
    }
    return 0;
  };
  return rank(a) >= rank(b) ? a : b;
}

namespace {

GradualFormula conjoinInvariants(const std::vector<GradualFormula>& invs, Pos fallback) {
  if (invs.empty()) return preciseTrue(fallback);
  bool imprecise = false;
  FormulaPtr body;
  for (const auto& inv : invs) {
    imprecise = imprecise || inv.imprecise;
    body = body ? mkAndFormula(body, inv.body) : inv.body;
  }
  return GradualFormula{imprecise, body, invs.front().pos};
}

void collectAssigned(const std::vector<StmtPtr>& stmts, std::set<std::string>& out) {
  for (const auto& s : stmts) {
    switch (s->kind) {
      case StmtKind::Assign:
        if (s->lhs->kind == ExprKind::Var) out.insert(s->lhs->name);
        break;
      case StmtKind::LocalDecl:
        out.insert(s->name);
        break;
      case StmtKind::If:
        collectAssigned(s->body, out);
        collectAssigned(s->elseBody, out);
        break;
      case StmtKind::While:
      case StmtKind::Block:
        collectAssigned(s->body, out);
        break;
      default:
        break;
    }
  }
}

TermPtr defaultValueTerm(const Type& t) {
  switch (t.kind) {
    case TypeKind::Int: return tInt(0);
    case TypeKind::Bool: return tBool(false);
    case TypeKind::Ref:
    case TypeKind::Null: return tNull();
    default: throw InternalError("no default value for " + t.str());
  }
}

}  // namespace

void MethodVerifier::collectChecks(const SymbolicState& s) {
  for (const auto& c : s.checks) pending_.push_back(c);
}

// ---------------------------------------------------------------------------
// statements
// ---------------------------------------------------------------------------

std::vector<SymbolicState> MethodVerifier::execSeq(std::vector<SymbolicState> states,
                                                   const std::vector<StmtPtr>& stmts) {
  for (const auto& st : stmts) {
    std::vector<SymbolicState> next;
    for (auto& s : states) {
      if (s.returned) {
        next.push_back(std::move(s));
        continue;
      }
      for (auto& s2 : execStmt(s, *st)) next.push_back(std::move(s2));
    }
    states = std::move(next);
  }
  return states;
}

std::vector<SymbolicState> MethodVerifier::execMethodCall(const SymbolicState& state,
                                                          const Expr& call,
                                                          const std::string& assignTo,
                                                          Pos site) {
  const MethodDecl* m = prog_.methods.at(call.name);
  std::vector<std::pair<std::string, ExprPtr>> binding;
  for (std::size_t i = 0; i < m->params.size(); ++i)
    binding.emplace_back(m->params[i].name, call.args[i]);

  GradualFormula pre{m->pre.imprecise, substituteVars(m->pre.body, binding), m->pre.pos};
  GradualFormula post{m->post.imprecise, substituteVars(m->post.body, binding), m->post.pos};

  SymbolicState entry = state;
  entry.originContext = CheckOrigin{m->name, site, binding};

  std::vector<SymbolicState> out;
  for (auto& co : eng_.consume(entry, pre, CheckKind::Pre, site)) {
    SymbolicState s = std::move(co.state);
    s.originContext = state.originContext;
    TermPtr ret;
    auto savedResult = s.store.find("\\result") != s.store.end()
                           ? std::optional<TermPtr>(s.store["\\result"])
                           : std::nullopt;
    if (m->returnType.kind != TypeKind::Void) {
      ret = eng_.freshCounter().fresh(sortOfType(m->returnType), call.name);
      s.store["\\result"] = ret;
    }
    SnapPtr delta = freshSnapshot(*shapeOfFormula(*post.body, prog_), eng_.freshCounter(),
                                  call.name);
    for (auto& s2 : eng_.produce(s, post, delta)) {
      if (savedResult)
        s2.store["\\result"] = *savedResult;
      else
        s2.store.erase("\\result");
      if (!assignTo.empty()) s2.store[assignTo] = ret;
      out.push_back(std::move(s2));
    }
  }
  return out;
}

std::vector<SymbolicState> MethodVerifier::execWhile(const SymbolicState& state, const Stmt& s) {
  GradualFormula inv = conjoinInvariants(s.invariants, s.pos);
  ShapePtr invShape = shapeOfFormula(*inv.body, prog_);
  bool invImprecise = inv.imprecise;

  std::set<std::string> assigned;
  collectAssigned(s.body, assigned);

  std::vector<SymbolicState> continueStates;
  for (auto& entry : eng_.consume(state, inv, CheckKind::Invariant, s.pos)) {
    SymbolicState base = std::move(entry.state);
    // havoc everything the body can assign
    for (const auto& v : assigned) {
      auto it = base.store.find(v);
      if (it != base.store.end())
        it->second = eng_.freshCounter().fresh(it->second->sort, v);
    }

    // continuing state: frame kept, invariant knowledge plus !cond
    {
      SnapPtr delta = freshSnapshot(*invShape, eng_.freshCounter(), "inv");
      for (auto& sc : eng_.produce(base, inv, delta)) {
        for (auto& c : eng_.eval(sc, s.cond)) {
          Engine::BranchOut b = eng_.branch(c.state, c.value, s.cond);
          if (b.els) continueStates.push_back(std::move(*b.els));
          // the then side is covered by the arbitrary-iteration state below
        }
      }
    }

    // arbitrary iteration: empty heaps, invariant-only knowledge
    {
      SymbolicState body0 = base;
      body0.heap.clear();
      body0.optimisticHeap.clear();
      body0.isImprecise = invImprecise;
      SnapPtr delta = freshSnapshot(*invShape, eng_.freshCounter(), "inv");
      for (auto& sb : eng_.produce(body0, inv, delta)) {
        for (auto& c : eng_.eval(sb, s.cond)) {
          Engine::BranchOut b = eng_.branch(c.state, c.value, s.cond);
          if (!b.then) continue;
          for (auto& after : execSeq({std::move(*b.then)}, s.body)) {
            if (after.returned) {
              continueStates.push_back(std::move(after));  // leaves the loop for good
              continue;
            }
            // inductive step: invariant must be restored; path ends here
            for (auto& fin : eng_.consume(after, inv, CheckKind::Invariant, s.pos))
              collectChecks(fin.state);
          }
        }
      }
    }
  }
  return continueStates;
}

std::vector<SymbolicState> MethodVerifier::execStmt(const SymbolicState& state, const Stmt& s) {
  switch (s.kind) {
    case StmtKind::Block:
      return execSeq({state}, s.body);

    case StmtKind::LocalDecl: {
      if (!s.rhs) {
        SymbolicState s2 = state;
        s2.store[s.name] = defaultValueTerm(s.declType);
        return {std::move(s2)};
      }
      Stmt assign;
      assign.kind = StmtKind::Assign;
      assign.pos = s.pos;
      assign.lhs = mkVar(s.pos, s.name);
      assign.lhs->type = s.declType;
      assign.rhs = s.rhs;
      // ensure the store slot exists so Assign can fill it
      SymbolicState s2 = state;
      s2.store[s.name] = defaultValueTerm(s.declType);
      return execStmt(s2, assign);
    }

    case StmtKind::Assign: {
      if (s.lhs->kind == ExprKind::Var) {
        const std::string& x = s.lhs->name;
        if (s.rhs->kind == ExprKind::Alloc) {
          const StructDecl* sd = prog_.structOf(s.rhs->name);
          SymbolicState s2 = state;
          TermPtr r = eng_.freshCounter().fresh(Sort::Ref, s.rhs->name);
          s2.assume(tNot(tEq(r, tNull())));
          // fresh allocation is distinct from every reference in sight
          std::set<std::string> seen;
          auto distinctFrom = [&](const TermPtr& t) {
            if (t->sort == Sort::Ref && seen.insert(termStr(*t)).second)
              s2.assume(tNot(tEq(r, t)));
          };
          for (const auto& c : s2.heap)
            if (c.field) distinctFrom(c.field->receiver);
          for (const auto& c : s2.optimisticHeap)
            if (c.field) distinctFrom(c.field->receiver);
          for (const auto& [_, t] : s2.store) distinctFrom(t);
          for (const auto& fld : sd->fields) {
            HeapChunk c = HeapChunk::ofField(
                {r, fld.name, defaultValueTerm(fld.type), mkVar(s.pos, x)});
            c.id = eng_.nextChunkId();
            s2.heap.push_back(std::move(c));
          }
          s2.store[x] = r;
          return {std::move(s2)};
        }
        if (s.rhs->kind == ExprKind::Call && s.rhs->calleeIsMethod)
          return execMethodCall(state, *s.rhs, x, s.pos);
        std::vector<SymbolicState> out;
        for (auto& o : eng_.eval(state, s.rhs)) {
          SymbolicState s2 = std::move(o.state);
          s2.store[x] = o.value;
          out.push_back(std::move(s2));
        }
        return out;
      }

      // field write: x->f = e
      const ExprPtr& lval = s.lhs;
      std::vector<SymbolicState> out;
      for (auto& recv : eng_.eval(state, lval->a)) {
        for (auto& rhs : eng_.eval(recv.state, s.rhs)) {
          SymbolicState s2 = std::move(rhs.state);
          Engine::LookupResult look =
              eng_.heapLookup(s2, recv.value, lval->name, Engine::LookupMode::SkipConsumed);
          if (look.chunk) {
            auto replace = [&](Heap& h) {
              for (auto& c : h)
                if (c.id == look.id) c.field->value = rhs.value;
            };
            replace(s2.heap);
            replace(s2.optimisticHeap);
          } else if (s2.isImprecise) {
            eng_.recordCheck(s2, CheckKind::FieldAccess,
                             mkAccFormula(s.pos, lval), s.pos);
            s2.assume(tNot(tEq(recv.value, tNull())));
            HeapChunk c = HeapChunk::ofField({recv.value, lval->name, rhs.value, lval->a});
            c.id = eng_.nextChunkId();
            s2.optimisticHeap.push_back(std::move(c));
          } else {
            throw StaticFailure(s.pos, "insufficient permission to write " + printExpr(*lval));
          }
          out.push_back(std::move(s2));
        }
      }
      return out;
    }

    case StmtKind::CallStmt: {
      const Expr& call = *s.callExpr;
      if (call.calleeIsMethod) return execMethodCall(state, call, "", s.pos);
      // statement-position pure call: evaluate for its checks
      std::vector<SymbolicState> out;
      for (auto& o : eng_.eval(state, s.callExpr)) out.push_back(std::move(o.state));
      return out;
    }

    case StmtKind::If: {
      std::vector<SymbolicState> out;
      for (auto& c : eng_.eval(state, s.cond)) {
        Engine::BranchOut b = eng_.branch(c.state, c.value, s.cond);
        if (b.then)
          for (auto& s2 : execSeq({std::move(*b.then)}, s.body)) out.push_back(std::move(s2));
        if (b.els)
          for (auto& s2 : execSeq({std::move(*b.els)}, s.elseBody)) out.push_back(std::move(s2));
      }
      return out;
    }

    case StmtKind::While:
      return execWhile(state, s);

    case StmtKind::Return: {
      if (!s.retVal) {
        SymbolicState s2 = state;
        s2.returned = true;
        s2.returnPos = s.pos;
        return {std::move(s2)};
      }
      std::vector<SymbolicState> out;
      for (auto& o : eng_.eval(state, s.retVal)) {
        SymbolicState s2 = std::move(o.state);
        s2.store["\\result"] = o.value;
        s2.returned = true;
        s2.returnPos = s.pos;
        out.push_back(std::move(s2));
      }
      return out;
    }

    case StmtKind::Assert: {
      std::vector<SymbolicState> out;
      for (auto& co : eng_.consume(state, *s.formula, CheckKind::Assert, s.pos)) {
        // check-only: permissions are restored
        SymbolicState s2 = std::move(co.state);
        s2.heap = state.heap;
        s2.optimisticHeap = state.optimisticHeap;
        s2.consumedIds = state.consumedIds;
        out.push_back(std::move(s2));
      }
      return out;
    }

    case StmtKind::Fold: {
      const PredicateDecl* pd = prog_.predicates.at(s.name);
      std::vector<std::pair<std::string, ExprPtr>> binding;
      for (std::size_t i = 0; i < pd->params.size(); ++i)
        binding.emplace_back(pd->params[i].name, s.args[i]);
      GradualFormula body{pd->body.imprecise, substituteVars(pd->body.body, binding),
                          pd->body.pos};
      std::vector<std::pair<SymbolicState, std::vector<TermPtr>>> argStates = {{state, {}}};
      for (const auto& arg : s.args) {
        std::vector<std::pair<SymbolicState, std::vector<TermPtr>>> next;
        for (auto& [st, ts] : argStates)
          for (auto& o : eng_.eval(st, arg)) {
            auto ts2 = ts;
            ts2.push_back(o.value);
            next.emplace_back(std::move(o.state), std::move(ts2));
          }
        argStates = std::move(next);
      }
      std::vector<SymbolicState> out;
      for (auto& [st, argTerms] : argStates) {
        for (auto& co : eng_.consume(st, body, CheckKind::Predicate, s.pos)) {
          SymbolicState s2 = std::move(co.state);
          if (eng_.findPredChunk(s2, s.name, argTerms, Engine::LookupMode::SkipConsumed))
            throw StaticFailure(s.pos, "heap conflict: predicate " + s.name +
                                       " already folded for these arguments");
          HeapChunk c = HeapChunk::ofPred({s.name, argTerms, co.snapshot, s.args});
          c.id = eng_.nextChunkId();
          s2.heap.push_back(std::move(c));
          out.push_back(std::move(s2));
        }
      }
      return out;
    }

    case StmtKind::Unfold: {
      const PredicateDecl* pd = prog_.predicates.at(s.name);
      std::vector<std::pair<std::string, ExprPtr>> binding;
      for (std::size_t i = 0; i < pd->params.size(); ++i)
        binding.emplace_back(pd->params[i].name, s.args[i]);
      GradualFormula body{pd->body.imprecise, substituteVars(pd->body.body, binding),
                          pd->body.pos};
      ShapePtr bodyShape = shapeOfFormula(*body.body, prog_);
      std::vector<std::pair<SymbolicState, std::vector<TermPtr>>> argStates = {{state, {}}};
      for (const auto& arg : s.args) {
        std::vector<std::pair<SymbolicState, std::vector<TermPtr>>> next;
        for (auto& [st, ts] : argStates)
          for (auto& o : eng_.eval(st, arg)) {
            auto ts2 = ts;
            ts2.push_back(o.value);
            next.emplace_back(std::move(o.state), std::move(ts2));
          }
        argStates = std::move(next);
      }
      std::vector<SymbolicState> out;
      for (auto& [st0, argTerms] : argStates) {
        SymbolicState st = std::move(st0);
        auto found = eng_.findPredChunk(st, s.name, argTerms, Engine::LookupMode::SkipConsumed);
        if (found) {
          auto byId = [&](Heap& h) {
            h.erase(std::remove_if(h.begin(), h.end(),
                                   [&](const HeapChunk& c) { return c.id == found->second; }),
                    h.end());
          };
          byId(st.heap);
          byId(st.optimisticHeap);
          SnapPtr delta = adaptSnapshot(found->first.snapshot, *bodyShape);
          for (auto& s2 : eng_.produce(st, body, delta)) out.push_back(std::move(s2));
        } else if (st.isImprecise) {
          eng_.recordCheck(st, CheckKind::Predicate, mkPredFormula(s.pos, s.name, s.args),
                           s.pos);
          SnapPtr delta = freshSnapshot(*bodyShape, eng_.freshCounter(), s.name);
          for (auto& s2 : eng_.produce(st, body, delta, /*intoOptimistic=*/true))
            out.push_back(std::move(s2));
        } else {
          throw StaticFailure(s.pos, "unfold " + s.name + ": no predicate instance held");
        }
      }
      return out;
    }
  }
  throw InternalError("execStmt: bad kind");
}

// ---------------------------------------------------------------------------
// method verification
// ---------------------------------------------------------------------------

DeclReport MethodVerifier::verify(const MethodDecl& m) {
  DeclReport rep;
  rep.name = m.name;
  rep.declKind = "method";
  pending_.clear();

  try {
    SymbolicState s0;
    for (const auto& p : m.params)
      s0.store[p.name] = eng_.freshCounter().fresh(sortOfType(p.type), p.name);

    SnapPtr delta = freshSnapshot(*shapeOfFormula(*m.pre.body, prog_), eng_.freshCounter(),
                                  "pre");
    std::vector<SymbolicState> states = eng_.produce(s0, m.pre, delta);
    for (auto& fin : execSeq(std::move(states), m.body)) {
      Pos site = fin.returned ? fin.returnPos : m.pos;
      for (auto& co : eng_.consume(fin, m.post, CheckKind::Post, site))
        collectChecks(co.state);
    }

    std::set<std::string> seen;
    for (auto& c : pending_)
      if (seen.insert(checkFingerprint(c)).second) rep.checks.push_back(c);
    rep.verdict = rep.checks.empty() ? Verdict::Verified : Verdict::VerifiedWithChecks;
  } catch (const StaticFailure& e) {
    rep.verdict = Verdict::StaticFailed;
    rep.diagnostics.push_back(e.pos.str() + ": " + e.what());
  }
  return rep;
}

// ---------------------------------------------------------------------------
// whole program
// ---------------------------------------------------------------------------

VerifyResult verifyProgram(const TypedProgram& prog, SolverSession& solver,
                           const std::string& filename) {
  VerifyResult result;
  result.report.file = filename;

  FreshCounter fresh;
  Engine eng(prog, solver, fresh, result.functions);

  std::map<std::string, DeclReport> byName;

  // 1. predicate well-formedness
  for (const auto& pd : prog.program.predicates) {
    DeclReport rep;
    rep.name = pd.name;
    rep.declKind = "predicate";
    try {
      SymbolicState s0;
      for (const auto& p : pd.params)
        s0.store[p.name] = fresh.fresh(sortOfType(p.type), p.name);
      SnapPtr delta = freshSnapshot(*shapeOfFormula(*pd.body.body, prog), fresh, pd.name);
      wellFormedFormula(eng, s0, pd.body, delta);
      rep.verdict = Verdict::Verified;
    } catch (const StaticFailure& e) {
      rep.verdict = Verdict::StaticFailed;
      rep.diagnostics.push_back(e.pos.str() + ": " + e.what());
    }
    byName[pd.name] = std::move(rep);
  }

  // 2. pure functions, in declaration order (axioms accumulate)
  FunctionVerifier fv(prog, solver, fresh, result.functions);
  for (const auto& f : prog.program.functions) {
    const FunctionInfo& info = fv.verifyFunction(f);
    DeclReport rep;
    rep.name = f.name;
    rep.declKind = "function";
    if (info.rejected) {
      rep.verdict = Verdict::Rejected;
      rep.diagnostics.push_back(info.rejected->pos.str() + ": " + info.rejected->message);
    } else if (info.failed) {
      rep.verdict = Verdict::StaticFailed;
      rep.diagnostics.push_back(info.failed->pos.str() + ": " + info.failed->message);
    } else {
      rep.checks = info.checks;
      rep.extensions = info.extensions;
      rep.verdict = rep.checks.empty() ? Verdict::Verified : Verdict::VerifiedWithChecks;
    }
    byName[f.name] = std::move(rep);
  }

  // 3. methods
  MethodVerifier mv(prog, eng);
  for (const auto& m : prog.program.methods) byName[m.name] = mv.verify(m);

  // assemble in source order
  for (const auto& [kind, idx] : prog.program.order) {
    std::string name;
    switch (kind) {
      case Program::DeclKind::Predicate: name = prog.program.predicates[idx].name; break;
      case Program::DeclKind::Function: name = prog.program.functions[idx].name; break;
      case Program::DeclKind::Method: name = prog.program.methods[idx].name; break;
      case Program::DeclKind::Struct: continue;
    }
    auto it = byName.find(name);
    if (it == byName.end()) continue;
    result.report.verdict = worseVerdict(result.report.verdict, it->second.verdict);
    result.report.declarations.push_back(std::move(it->second));
  }
  return result;
}

}  // namespace gvc0
