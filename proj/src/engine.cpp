#include "gvc0/engine.hpp"

#include <algorithm>

#include "gvc0/printer.hpp"

namespace gvc0 {

Sort sortOfType(const Type& t) {
  switch (t.kind) {
    case TypeKind::Int: return Sort::Int;
    case TypeKind::Bool: return Sort::Bool;
    case TypeKind::Ref:
    case TypeKind::Null: return Sort::Ref;
    case TypeKind::Void: break;
  }
  throw InternalError("no term sort for type " + t.str());
}

ShapePtr shapeOfFormula(const Formula& f, const TypedProgram& prog) {
  switch (f.kind) {
    case FormulaKind::Bool:
      return shapeUnit();
    case FormulaKind::Acc: {
      const Expr& lval = *f.expr;
      Sort s = sortOfType(prog.fieldType(lval.a->type.structName, lval.name));
      return shapeLeaf(s);
    }
    case FormulaKind::Pred:
      return shapeLeaf(Sort::Snap);
    case FormulaKind::And:
    case FormulaKind::Cond:
      return shapePair(shapeOfFormula(*f.left, prog), shapeOfFormula(*f.right, prog));
  }
  throw InternalError("shapeOfFormula: bad kind");
}

SnapPtr defaultSnapshot(const SnapShape& shape) {
  switch (shape.kind) {
    case SnapShape::K::Unit: return snapUnit();
    case SnapShape::K::Leaf:
      switch (shape.leafSort) {
        case Sort::Int: return snapLeaf(tInt(0));
        case Sort::Bool: return snapLeaf(tBool(false));
        case Sort::Ref: return snapLeaf(tNull());
        case Sort::Snap: return snapLeaf(tUnit());
      }
      throw InternalError("defaultSnapshot: bad sort");
    case SnapShape::K::Pair:
      return snapPair(defaultSnapshot(*shape.left), defaultSnapshot(*shape.right));
  }
  throw InternalError("defaultSnapshot: bad shape");
}

namespace {

bool exprIsHeapFree(const Expr& e) {
  switch (e.kind) {
    case ExprKind::FieldRead:
    case ExprKind::Call:
    case ExprKind::Unfolding:
    case ExprKind::Alloc:
      return false;
    default:
      break;
  }
  if (e.a && !exprIsHeapFree(*e.a)) return false;
  if (e.b && !exprIsHeapFree(*e.b)) return false;
  if (e.c && !exprIsHeapFree(*e.c)) return false;
  for (const auto& a : e.args)
    if (!exprIsHeapFree(*a)) return false;
  return true;
}

bool isLiteralTrue(const Term& t) { return t.kind == TermKind::BoolLit && t.boolVal; }
bool isLiteralFalse(const Term& t) { return t.kind == TermKind::BoolLit && !t.boolVal; }

}  // namespace

SnapPtr adaptSnapshot(const SnapPtr& s, const SnapShape& shape) {
  if (snapshotMatchesShape(*s, shape)) return s;
  if (s->kind == Snapshot::K::Leaf && s->leaf->sort == Sort::Snap)
    return destructureSnapTerm(s->leaf, shape);
  throw InternalError("snapshot does not fit the formula shape: " + snapshotStr(*s) + " vs " +
                      shapeStr(shape));
}

// ---------------------------------------------------------------------------
// symstate operations
// ---------------------------------------------------------------------------

Engine::LookupResult Engine::heapLookup(const SymbolicState& state, const TermPtr& receiver,
                                        const std::string& field, LookupMode mode) {
  auto visible = [&](const HeapChunk& c) {
    return mode == LookupMode::Frozen || !state.consumedIds.count(c.id);
  };
  // syntactic pass over h then h?
  for (const Heap* h : {&state.heap, &state.optimisticHeap}) {
    for (const auto& c : *h)
      if (c.field && c.field->field == field && visible(c) &&
          termEquals(*c.field->receiver, *receiver))
        return {&*c.field, c.id};
  }
  // solver-validated alias pass; degrade to "no match" on unknown
  auto pi = state.solverPi();
  for (const Heap* h : {&state.heap, &state.optimisticHeap}) {
    for (const auto& c : *h) {
      if (!c.field || c.field->field != field || !visible(c)) continue;
      if (solver_.checkValid(pi, tEq(receiver, c.field->receiver)) == Validity::Valid)
        return {&*c.field, c.id};
    }
  }
  return {};
}

std::optional<std::pair<PredChunk, long>> Engine::findPredChunk(
    const SymbolicState& state, const std::string& name, const std::vector<TermPtr>& args,
    LookupMode mode) {
  auto visible = [&](const HeapChunk& c) {
    return mode == LookupMode::Frozen || !state.consumedIds.count(c.id);
  };
  auto matches = [&](const PredChunk& pc, bool syntacticOnly) {
    if (pc.pred != name || pc.args.size() != args.size()) return false;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (termEquals(*pc.args[i], *args[i])) continue;
      if (syntacticOnly) return false;
      if (solver_.checkValid(state.solverPi(), tEq(args[i], pc.args[i])) != Validity::Valid)
        return false;
    }
    return true;
  };
  for (bool syntactic : {true, false}) {
    for (const Heap* h : {&state.heap, &state.optimisticHeap}) {
      for (const auto& c : *h)
        if (c.pred && visible(c) && matches(*c.pred, syntactic)) return {{*c.pred, c.id}};
    }
  }
  return std::nullopt;
}

TermPtr Engine::addOptimisticChunk(SymbolicState& state, const TermPtr& receiver,
                                   const ExprPtr& receiverSrc, const std::string& field) {
  if (!state.isImprecise)
    throw InternalError("add_optimistic_chunk called on a precise state");
  if (!receiverSrc)
    throw InternalError("optimistic chunk needs a source receiver expression");
  Type ft = prog_.fieldType(receiverSrc->type.structName, field);
  TermPtr value = fresh_.fresh(sortOfType(ft), field);
  state.assume(tNot(tEq(receiver, tNull())));
  HeapChunk c = HeapChunk::ofField({receiver, field, value, receiverSrc});
  c.id = nextChunkId();
  state.optimisticHeap.push_back(std::move(c));
  return value;
}

void Engine::recordCheck(SymbolicState& state, CheckKind kind, FormulaPtr condition, Pos site) {
  RuntimeCheck rc;
  rc.condition = std::move(condition);
  rc.location = site;
  rc.kind = kind;
  std::set<std::string> seen;
  for (const auto& b : state.branchStack) {
    if (!b.source)
      throw StaticFailure(site, "a run-time check guard is not expressible in source terms");
    std::string key = printExpr(*b.source);
    if (seen.insert(key).second) rc.guards.push_back(b.source);
  }
  rc.origin = state.originContext;
  state.checks.push_back(std::move(rc));
}

// ---------------------------------------------------------------------------
// branch
// ---------------------------------------------------------------------------

Engine::BranchOut Engine::branch(const SymbolicState& state, const TermPtr& cond,
                                 const ExprPtr& src) {
  BranchOut out;
  if (isLiteralTrue(*cond)) {
    out.then = state;
    return out;
  }
  if (isLiteralFalse(*cond)) {
    out.els = state;
    return out;
  }
  auto pi = state.solverPi();
  bool thenInfeasible = solver_.checkValid(pi, tNot(cond)) == Validity::Valid;
  bool elseInfeasible = solver_.checkValid(pi, cond) == Validity::Valid;
  if (!thenInfeasible) {
    SymbolicState t = state;
    t.branchStack.push_back({cond, src});
    out.then = std::move(t);
  }
  if (!elseInfeasible) {
    SymbolicState e = state;
    e.branchStack.push_back({tNot(cond), src ? negate(src) : nullptr});
    out.els = std::move(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

TermPtr Engine::valueForMissingAccess(SymbolicState& state, const TermPtr& receiver,
                                      const ExprPtr& receiverSrc, const std::string& field,
                                      Pos pos, CheckKind kind) {
  if (missingAccessHandler) return missingAccessHandler(state, receiver, receiverSrc, field, pos);
  if (state.isImprecise) {
    TermPtr v = addOptimisticChunk(state, receiver, receiverSrc, field);
    recordCheck(state, kind,
                mkAccFormula(pos, mkFieldRead(pos, receiverSrc, field)), pos);
    return v;
  }
  std::string what = receiverSrc ? printExpr(*receiverSrc) + "->" + field : field;
  throw StaticFailure(pos, "insufficient permission for " + what);
}

std::vector<EvalOutcome> Engine::evalFieldRead(const SymbolicState& state, const ExprPtr& e) {
  std::vector<EvalOutcome> out;
  for (auto& base : eval(state, e->a)) {
    LookupResult look = heapLookup(base.state, base.value, e->name, LookupMode::Frozen);
    if (look.chunk) {
      out.push_back({std::move(base.state), look.chunk->value});
    } else {
      SymbolicState s = std::move(base.state);
      TermPtr v = valueForMissingAccess(s, base.value, e->a, e->name, e->pos,
                                        CheckKind::FieldAccess);
      out.push_back({std::move(s), v});
    }
  }
  return out;
}

std::vector<EvalOutcome> Engine::evalUnfolding(const SymbolicState& state, const ExprPtr& e) {
  const PredicateDecl* pd = prog_.predicates.at(e->name);
  bool recursive = predicateIsRecursive(e->name);
  ShapePtr bodyShape = shapeOfFormula(*pd->body.body, prog_);

  // substitute actuals into the body so produced constraints/chunks carry
  // caller-visible source expressions
  std::vector<std::pair<std::string, ExprPtr>> binding;
  for (std::size_t i = 0; i < pd->params.size(); ++i)
    binding.emplace_back(pd->params[i].name, e->args[i]);
  GradualFormula bodyInst{pd->body.imprecise, substituteVars(pd->body.body, binding),
                          pd->body.pos};

  std::vector<EvalOutcome> out;
  // evaluate arguments left to right
  std::vector<std::pair<SymbolicState, std::vector<TermPtr>>> argStates = {{state, {}}};
  for (const auto& arg : e->args) {
    std::vector<std::pair<SymbolicState, std::vector<TermPtr>>> next;
    for (auto& [s, ts] : argStates)
      for (auto& o : eval(s, arg)) {
        auto ts2 = ts;
        ts2.push_back(o.value);
        next.emplace_back(std::move(o.state), std::move(ts2));
      }
    argStates = std::move(next);
  }

  for (auto& [s0, argTerms] : argStates) {
    Heap savedH = s0.heap, savedHq = s0.optimisticHeap;
    auto savedConsumed = s0.consumedIds;

    auto found = findPredChunk(s0, e->name, argTerms, LookupMode::SkipConsumed);
    std::vector<SymbolicState> unfolded;
    if (found) {
      SymbolicState s1 = s0;
      auto byId = [&](Heap& h) {
        h.erase(std::remove_if(h.begin(), h.end(),
                               [&](const HeapChunk& c) { return c.id == found->second; }),
                h.end());
      };
      byId(s1.heap);
      byId(s1.optimisticHeap);
      SnapPtr delta = adaptSnapshot(found->first.snapshot, *bodyShape);
      unfolded = produce(s1, bodyInst, delta);
    } else if (missingAccessHandler) {
      throw ExtensionFailure(e->pos, "cannot extend the function precondition with predicate "
                                     "instance " + e->name + "(...): predicate-shaped snapshot "
                                     "extension is not supported");
    } else if (s0.isImprecise) {
      SymbolicState s1 = s0;
      recordCheck(s1, CheckKind::Predicate, mkPredFormula(e->pos, e->name, e->args), e->pos);
      SnapPtr delta = freshSnapshot(*bodyShape, fresh_, e->name);
      unfolded = produce(s1, bodyInst, delta, /*intoOptimistic=*/true);
    } else {
      throw StaticFailure(e->pos, "unfolding " + e->name + ": no predicate instance held");
    }

    if (recursive) recursiveUnfoldDepth_++;
    for (auto& s2 : unfolded) {
      for (auto& o : eval(s2, e->a)) {
        o.state.heap = savedH;
        o.state.optimisticHeap = savedHq;
        o.state.consumedIds = savedConsumed;
        out.push_back(std::move(o));
      }
    }
    if (recursive) recursiveUnfoldDepth_--;
  }
  return out;
}

std::vector<EvalOutcome> Engine::eval(const SymbolicState& state, const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::IntLit:
      return {{state, tInt(e->intVal)}};
    case ExprKind::BoolLit:
      return {{state, tBool(e->boolVal)}};
    case ExprKind::NullLit:
      return {{state, tNull()}};
    case ExprKind::Var:
      return {{state, state.lookupVar(e->name)}};
    case ExprKind::Result:
      return {{state, state.lookupVar("\\result")}};
    case ExprKind::FieldRead:
      return evalFieldRead(state, e);
    case ExprKind::Unary: {
      std::vector<EvalOutcome> out;
      for (auto& o : eval(state, e->a))
        out.push_back({std::move(o.state),
                       e->unOp == UnOp::Not ? tNot(o.value) : tNeg(o.value)});
      return out;
    }
    case ExprKind::Binary: {
      if (e->binOp == BinOp::And || e->binOp == BinOp::Or) {
        bool isAnd = e->binOp == BinOp::And;
        std::vector<EvalOutcome> out;
        for (auto& l : eval(state, e->a)) {
          if (exprIsHeapFree(*e->b)) {
            // pure right operand: no branching needed
            for (auto& r : eval(l.state, e->b))
              out.push_back({std::move(r.state), isAnd ? tAnd(l.value, r.value)
                                                       : tOr(l.value, r.value)});
            continue;
          }
          // left conjunct frames the right: branch on it
          BranchOut b = branch(l.state, l.value, e->a);
          if (isAnd) {
            if (b.then)
              for (auto& r : eval(*b.then, e->b)) out.push_back(std::move(r));
            if (b.els) out.push_back({std::move(*b.els), tBool(false)});
          } else {
            if (b.then) out.push_back({std::move(*b.then), tBool(true)});
            if (b.els)
              for (auto& r : eval(*b.els, e->b)) out.push_back(std::move(r));
          }
        }
        return out;
      }
      std::vector<EvalOutcome> out;
      for (auto& l : eval(state, e->a)) {
        for (auto& r : eval(l.state, e->b)) {
          TermPtr v;
          switch (e->binOp) {
            case BinOp::Add: v = tAdd(l.value, r.value); break;
            case BinOp::Sub: v = tSub(l.value, r.value); break;
            case BinOp::Mul: v = tMul(l.value, r.value); break;
            case BinOp::Div: v = tDiv(l.value, r.value); break;
            case BinOp::Mod: v = tMod(l.value, r.value); break;
            case BinOp::Eq: v = tEq(l.value, r.value); break;
            case BinOp::Ne: v = tNot(tEq(l.value, r.value)); break;
            case BinOp::Lt: v = tLt(l.value, r.value); break;
            case BinOp::Le: v = tLe(l.value, r.value); break;
            case BinOp::Gt: v = tGt(l.value, r.value); break;
            case BinOp::Ge: v = tGe(l.value, r.value); break;
            default: throw InternalError("unreachable binop");
          }
          out.push_back({std::move(r.state), std::move(v)});
        }
      }
      return out;
    }
    case ExprKind::Ternary: {
      std::vector<EvalOutcome> out;
      for (auto& c : eval(state, e->a)) {
        if (exprIsHeapFree(*e->b) && exprIsHeapFree(*e->c)) {
          for (auto& t : eval(c.state, e->b))
            for (auto& f : eval(t.state, e->c))
              out.push_back({std::move(f.state), tIte(c.value, t.value, f.value)});
          continue;
        }
        BranchOut b = branch(c.state, c.value, e->a);
        if (b.then)
          for (auto& o : eval(*b.then, e->b)) out.push_back(std::move(o));
        if (b.els)
          for (auto& o : eval(*b.els, e->c)) out.push_back(std::move(o));
      }
      return out;
    }
    case ExprKind::Call:
      return evalFunctionApplication(*this, state, e);
    case ExprKind::Unfolding:
      return evalUnfolding(state, e);
    case ExprKind::Alloc:
      throw InternalError("alloc reached expression evaluation");
  }
  throw InternalError("eval: bad expression kind");
}

// ---------------------------------------------------------------------------
// produce
// ---------------------------------------------------------------------------

std::vector<SymbolicState> Engine::produce(const SymbolicState& state, const GradualFormula& gf,
                                           const SnapPtr& delta, bool intoOptimistic) {
  SymbolicState s = state;
  if (gf.imprecise) s.isImprecise = true;
  return produceFormula(s, *gf.body, delta, intoOptimistic);
}

std::vector<SymbolicState> Engine::produceFormula(const SymbolicState& state, const Formula& f,
                                                  const SnapPtr& delta, bool intoOptimistic) {
  switch (f.kind) {
    case FormulaKind::Bool: {
      std::vector<SymbolicState> out;
      for (auto& o : eval(state, f.expr)) {
        SymbolicState s = std::move(o.state);
        if (!isLiteralTrue(*o.value)) {
          s.assume(o.value);
          s.produced.push_back(o.value);
        }
        out.push_back(std::move(s));
      }
      return out;
    }
    case FormulaKind::Acc: {
      if (delta->kind != Snapshot::K::Leaf)
        throw InternalError("produce: acc conjunct expects a leaf snapshot");
      std::vector<SymbolicState> out;
      for (auto& o : eval(state, f.expr->a)) {
        SymbolicState s = std::move(o.state);
        TermPtr recv = o.value;
        LookupResult existing = heapLookup(s, recv, f.expr->name, LookupMode::SkipConsumed);
        if (existing.chunk) {
          bool inReal = false;
          for (const auto& c : s.heap)
            if (c.id == existing.id) inReal = true;
          if (inReal)
            throw StaticFailure(f.pos, "heap conflict: duplicate permission acc(" +
                                           printExpr(*f.expr) + ")");
          // optimistic chunk becomes real: keep its value consistent
          s.assume(tEq(existing.chunk->value, delta->leaf));
          auto& hq = s.optimisticHeap;
          hq.erase(std::remove_if(hq.begin(), hq.end(),
                                  [&](const HeapChunk& c) { return c.id == existing.id; }),
                   hq.end());
        }
        s.assume(tNot(tEq(recv, tNull())));
        HeapChunk c = HeapChunk::ofField({recv, f.expr->name, delta->leaf, f.expr->a});
        c.id = nextChunkId();
        (intoOptimistic ? s.optimisticHeap : s.heap).push_back(std::move(c));
        out.push_back(std::move(s));
      }
      return out;
    }
    case FormulaKind::Pred: {
      if (delta->kind == Snapshot::K::Unit)
        throw InternalError("produce: predicate conjunct expects a snapshot slot");
      std::vector<std::pair<SymbolicState, std::vector<TermPtr>>> argStates = {{state, {}}};
      for (const auto& arg : f.args) {
        std::vector<std::pair<SymbolicState, std::vector<TermPtr>>> next;
        for (auto& [s, ts] : argStates)
          for (auto& o : eval(s, arg)) {
            auto ts2 = ts;
            ts2.push_back(o.value);
            next.emplace_back(std::move(o.state), std::move(ts2));
          }
        argStates = std::move(next);
      }
      std::vector<SymbolicState> out;
      for (auto& [s0, argTerms] : argStates) {
        SymbolicState s = std::move(s0);
        if (findPredChunk(s, f.pred, argTerms, LookupMode::SkipConsumed))
          throw StaticFailure(f.pos,
                              "heap conflict: duplicate predicate instance " + f.pred + "(...)");
        HeapChunk c = HeapChunk::ofPred({f.pred, argTerms, delta, f.args});
        c.id = nextChunkId();
        (intoOptimistic ? s.optimisticHeap : s.heap).push_back(std::move(c));
        out.push_back(std::move(s));
      }
      return out;
    }
    case FormulaKind::And: {
      if (delta->kind != Snapshot::K::Pair)
        throw InternalError("produce: conjunction expects a pair snapshot");
      std::vector<SymbolicState> out;
      for (auto& s1 : produceFormula(state, *f.left, delta->left, intoOptimistic))
        for (auto& s2 : produceFormula(s1, *f.right, delta->right, intoOptimistic))
          out.push_back(std::move(s2));
      return out;
    }
    case FormulaKind::Cond: {
      if (delta->kind != Snapshot::K::Pair)
        throw InternalError("produce: conditional expects a pair snapshot");
      std::vector<SymbolicState> out;
      for (auto& c : eval(state, f.expr)) {
        BranchOut b = branch(c.state, c.value, f.expr);
        if (b.then)
          for (auto& s : produceFormula(*b.then, *f.left, delta->left, intoOptimistic))
            out.push_back(std::move(s));
        if (b.els)
          for (auto& s : produceFormula(*b.els, *f.right, delta->right, intoOptimistic))
            out.push_back(std::move(s));
      }
      return out;
    }
  }
  throw InternalError("produce: bad formula kind");
}

// ---------------------------------------------------------------------------
// consume
// ---------------------------------------------------------------------------

std::vector<ConsumeOutcome> Engine::consume(const SymbolicState& state, const GradualFormula& gf,
                                            CheckKind kind, Pos site) {
  // `?` on the consumed formula contributes nothing statically: imprecision
  // is a property of the consuming state.
  consumeDepth_++;
  std::vector<ConsumeStep> steps;
  try {
    steps = consumeFormula(state, *gf.body, kind, site);
  } catch (...) {
    consumeDepth_--;
    throw;
  }
  consumeDepth_--;

  std::vector<ConsumeOutcome> out;
  for (auto& st : steps) {
    if (consumeDepth_ == 0 && !st.state.consumedIds.empty()) {
      auto strip = [&](Heap& h) {
        h.erase(std::remove_if(h.begin(), h.end(),
                               [&](const HeapChunk& c) {
                                 return st.state.consumedIds.count(c.id) > 0;
                               }),
                h.end());
      };
      strip(st.state.heap);
      strip(st.state.optimisticHeap);
      st.state.consumedIds.clear();
    }
    out.push_back({std::move(st.state), std::move(st.snapshot)});
  }
  return out;
}

std::vector<Engine::ConsumeStep> Engine::consumeFormula(const SymbolicState& state,
                                                        const Formula& f, CheckKind kind,
                                                        Pos site) {
  switch (f.kind) {
    case FormulaKind::Bool: {
      std::vector<ConsumeStep> out;
      for (auto& o : eval(state, f.expr)) {
        SymbolicState s = std::move(o.state);
        if (isLiteralTrue(*o.value)) {
          out.push_back({std::move(s), snapUnit()});
          continue;
        }
        Validity v = solver_.checkValid(s.solverPi(), o.value);
        if (v == Validity::Valid) {
          s.assume(o.value);
        } else if (s.isImprecise) {
          recordCheck(s, kind, mkBoolFormula(f.expr), site);
          s.assume(o.value);  // holds once the dynamic check passes
        } else {
          std::string why = v == Validity::Unknown ? " (solver returned unknown)" : "";
          throw StaticFailure(f.expr->pos, "cannot prove " + printExpr(*f.expr) + why);
        }
        out.push_back({std::move(s), snapUnit()});
      }
      return out;
    }
    case FormulaKind::Acc: {
      std::vector<ConsumeStep> out;
      for (auto& o : eval(state, f.expr->a)) {
        SymbolicState s = std::move(o.state);
        TermPtr recv = o.value;
        LookupResult look = heapLookup(s, recv, f.expr->name, LookupMode::SkipConsumed);
        if (!look.chunk && missingAccessHandler) {
          // function verification: the missing permission joins the
          // extended precondition, then is consumed
          valueForMissingAccess(s, recv, f.expr->a, f.expr->name, f.pos, kind);
          look = heapLookup(s, recv, f.expr->name, LookupMode::SkipConsumed);
          if (!look.chunk) throw InternalError("extension did not materialize a chunk");
        }
        if (look.chunk) {
          TermPtr value = look.chunk->value;
          s.consumedIds.insert(look.id);
          out.push_back({std::move(s), snapLeaf(value)});
        } else if (s.isImprecise) {
          recordCheck(s, kind, mkAccFormula(f.pos, f.expr), site);
          s.assume(tNot(tEq(recv, tNull())));
          Type ft = prog_.fieldType(f.expr->a->type.structName, f.expr->name);
          out.push_back({std::move(s), snapLeaf(fresh_.fresh(sortOfType(ft), f.expr->name))});
        } else {
          throw StaticFailure(f.pos, "insufficient permission: acc(" + printExpr(*f.expr) + ")");
        }
      }
      return out;
    }
    case FormulaKind::Pred: {
      std::vector<std::pair<SymbolicState, std::vector<TermPtr>>> argStates = {{state, {}}};
      for (const auto& arg : f.args) {
        std::vector<std::pair<SymbolicState, std::vector<TermPtr>>> next;
        for (auto& [s, ts] : argStates)
          for (auto& o : eval(s, arg)) {
            auto ts2 = ts;
            ts2.push_back(o.value);
            next.emplace_back(std::move(o.state), std::move(ts2));
          }
        argStates = std::move(next);
      }
      std::vector<ConsumeStep> out;
      for (auto& [s0, argTerms] : argStates) {
        SymbolicState s = std::move(s0);
        auto found = findPredChunk(s, f.pred, argTerms, LookupMode::SkipConsumed);
        if (found) {
          s.consumedIds.insert(found->second);
          out.push_back({std::move(s), found->first.snapshot});
        } else if (missingAccessHandler) {
          throw ExtensionFailure(f.pos, "cannot extend the function precondition with predicate "
                                        "instance " + f.pred + "(...): predicate-shaped "
                                        "snapshot extension is not supported");
        } else if (s.isImprecise) {
          recordCheck(s, CheckKind::Predicate, mkPredFormula(f.pos, f.pred, f.args), site);
          out.push_back({std::move(s), snapLeaf(fresh_.fresh(Sort::Snap, f.pred))});
        } else {
          throw StaticFailure(f.pos, "no instance of predicate " + f.pred + "(...) to consume");
        }
      }
      return out;
    }
    case FormulaKind::And: {
      std::vector<ConsumeStep> out;
      for (auto& l : consumeFormula(state, *f.left, kind, site))
        for (auto& r : consumeFormula(l.state, *f.right, kind, site))
          out.push_back({std::move(r.state), snapPair(l.snapshot, r.snapshot)});
      return out;
    }
    case FormulaKind::Cond: {
      ShapePtr thenShape = shapeOfFormula(*f.left, prog_);
      ShapePtr elseShape = shapeOfFormula(*f.right, prog_);
      std::vector<ConsumeStep> out;
      for (auto& c : eval(state, f.expr)) {
        BranchOut b = branch(c.state, c.value, f.expr);
        if (b.then)
          for (auto& st : consumeFormula(*b.then, *f.left, kind, site))
            out.push_back({std::move(st.state),
                           snapPair(st.snapshot, defaultSnapshot(*elseShape))});
        if (b.els)
          for (auto& st : consumeFormula(*b.els, *f.right, kind, site))
            out.push_back({std::move(st.state),
                           snapPair(defaultSnapshot(*thenShape), st.snapshot)});
      }
      return out;
    }
  }
  throw InternalError("consume: bad formula kind");
}

// ---------------------------------------------------------------------------
// predicate recursion
// ---------------------------------------------------------------------------

namespace {
void collectPredNames(const Formula& f, std::set<std::string>& out);

void collectPredNamesExpr(const Expr& e, std::set<std::string>& out) {
  if (e.kind == ExprKind::Unfolding) out.insert(e.name);
  if (e.a) collectPredNamesExpr(*e.a, out);
  if (e.b) collectPredNamesExpr(*e.b, out);
  if (e.c) collectPredNamesExpr(*e.c, out);
  for (const auto& a : e.args) collectPredNamesExpr(*a, out);
}

void collectPredNames(const Formula& f, std::set<std::string>& out) {
  switch (f.kind) {
    case FormulaKind::Pred:
      out.insert(f.pred);
      for (const auto& a : f.args) collectPredNamesExpr(*a, out);
      break;
    case FormulaKind::Bool:
    case FormulaKind::Acc:
      collectPredNamesExpr(*f.expr, out);
      break;
    case FormulaKind::And:
      collectPredNames(*f.left, out);
      collectPredNames(*f.right, out);
      break;
    case FormulaKind::Cond:
      collectPredNamesExpr(*f.expr, out);
      collectPredNames(*f.left, out);
      collectPredNames(*f.right, out);
      break;
  }
}
}  // namespace

bool Engine::predicateIsRecursive(const std::string& name) const {
  // reachable predicates from `name`'s body, equi-recursively
  std::set<std::string> visited;
  std::vector<std::string> work = {name};
  while (!work.empty()) {
    std::string cur = work.back();
    work.pop_back();
    auto it = prog_.predicates.find(cur);
    if (it == prog_.predicates.end()) continue;
    std::set<std::string> direct;
    collectPredNames(*it->second->body.body, direct);
    for (const auto& d : direct) {
      if (d == name) return true;
      if (visited.insert(d).second) work.push_back(d);
    }
  }
  return false;
}

}  // namespace gvc0
