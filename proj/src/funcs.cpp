#include "gvc0/funcs.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "gvc0/printer.hpp"

namespace gvc0 {

const SnapshotMapEntry* SnapshotMap::find(const std::string& access,
                                          const std::vector<std::string>& guardStrs) const {
  for (const auto& e : entries) {
    if (e.access != access) continue;
    std::vector<std::string> gs;
    for (const auto& g : e.guards) gs.push_back(printExpr(*g));
    if (gs == guardStrs) return &e;
  }
  return nullptr;
}

namespace {

// ---------------------------------------------------------------------------
// helpers
// ---------------------------------------------------------------------------

void collectPredsInExpr(const Expr& e, std::set<std::string>& out) {
  if (e.kind == ExprKind::Unfolding) out.insert(e.name);
  if (e.a) collectPredsInExpr(*e.a, out);
  if (e.b) collectPredsInExpr(*e.b, out);
  if (e.c) collectPredsInExpr(*e.c, out);
  for (const auto& a : e.args) collectPredsInExpr(*a, out);
}

void collectPredsInFormula(const Formula& f, std::set<std::string>& out) {
  switch (f.kind) {
    case FormulaKind::Pred:
      out.insert(f.pred);
      for (const auto& a : f.args) collectPredsInExpr(*a, out);
      break;
    case FormulaKind::Bool:
    case FormulaKind::Acc:
      collectPredsInExpr(*f.expr, out);
      break;
    case FormulaKind::And:
      collectPredsInFormula(*f.left, out);
      collectPredsInFormula(*f.right, out);
      break;
    case FormulaKind::Cond:
      collectPredsInExpr(*f.expr, out);
      collectPredsInFormula(*f.left, out);
      collectPredsInFormula(*f.right, out);
      break;
  }
}

void collectCallsInExpr(const Expr& e, std::set<std::string>& out) {
  if (e.kind == ExprKind::Call) out.insert(e.name);
  if (e.a) collectCallsInExpr(*e.a, out);
  if (e.b) collectCallsInExpr(*e.b, out);
  if (e.c) collectCallsInExpr(*e.c, out);
  for (const auto& a : e.args) collectCallsInExpr(*a, out);
}

void collectCallsInFormula(const Formula& f, std::set<std::string>& out) {
  switch (f.kind) {
    case FormulaKind::Pred:
      for (const auto& a : f.args) collectCallsInExpr(*a, out);
      break;
    case FormulaKind::Bool:
    case FormulaKind::Acc:
      collectCallsInExpr(*f.expr, out);
      break;
    case FormulaKind::And:
      collectCallsInFormula(*f.left, out);
      collectCallsInFormula(*f.right, out);
      break;
    case FormulaKind::Cond:
      collectCallsInExpr(*f.expr, out);
      collectCallsInFormula(*f.left, out);
      collectCallsInFormula(*f.right, out);
      break;
  }
}

bool exprOverParams(const Expr& e, const std::set<std::string>& params) {
  switch (e.kind) {
    case ExprKind::Var:
      return params.count(e.name) > 0;
    case ExprKind::Result:
      return false;
    default:
      break;
  }
  if (e.a && !exprOverParams(*e.a, params)) return false;
  if (e.b && !exprOverParams(*e.b, params)) return false;
  if (e.c && !exprOverParams(*e.c, params)) return false;
  for (const auto& a : e.args)
    if (!exprOverParams(*a, params)) return false;
  return true;
}

/// Postconditions of pure functions are boolean formulas; flatten to one
/// expression for eval.
ExprPtr formulaToExpr(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Bool:
      return f.expr;
    case FormulaKind::And:
      return mkBinary(f.pos, BinOp::And, formulaToExpr(*f.left), formulaToExpr(*f.right));
    case FormulaKind::Cond:
      return mkTernary(f.pos, f.expr, formulaToExpr(*f.left), formulaToExpr(*f.right));
    case FormulaKind::Acc:
    case FormulaKind::Pred:
      throw InternalError("heap atom in a pure-function postcondition");
  }
  throw InternalError("formulaToExpr: bad kind");
}

struct Slot {
  const Formula* atom;
  std::string access;
  ExprPtr accessLval;
  std::string predName;
  std::vector<ExprPtr> predArgs;
  SnapPath path;
  std::vector<ExprPtr> guards;
  TermPtr leaf;
};

/// Build the fresh snapshot for a formula and enumerate its heap slots
/// (path + leaf per acc/predicate conjunct, guards from conditional arms).
SnapPtr buildSnapAndSlots(const Formula& f, const TypedProgram& prog, FreshCounter& fresh,
                          SnapPath path, std::vector<ExprPtr> guards, std::vector<Slot>& out) {
  switch (f.kind) {
    case FormulaKind::Bool:
      return snapUnit();
    case FormulaKind::Acc: {
      Sort s = sortOfType(prog.fieldType(f.expr->a->type.structName, f.expr->name));
      TermPtr leaf = fresh.fresh(s, f.expr->name);
      out.push_back({&f, printExpr(*f.expr), f.expr, "", {}, path, guards, leaf});
      return snapLeaf(leaf);
    }
    case FormulaKind::Pred: {
      TermPtr leaf = fresh.fresh(Sort::Snap, f.pred);
      out.push_back({&f, printFormula(f), nullptr, f.pred, f.args, path, guards, leaf});
      return snapLeaf(leaf);
    }
    case FormulaKind::And: {
      SnapPath lp = path, rp = path;
      lp.push_back(SnapSide::Left);
      rp.push_back(SnapSide::Right);
      SnapPtr l = buildSnapAndSlots(*f.left, prog, fresh, lp, guards, out);
      SnapPtr r = buildSnapAndSlots(*f.right, prog, fresh, rp, guards, out);
      return snapPair(l, r);
    }
    case FormulaKind::Cond: {
      SnapPath lp = path, rp = path;
      lp.push_back(SnapSide::Left);
      rp.push_back(SnapSide::Right);
      auto lg = guards, rg = guards;
      lg.push_back(f.expr);
      rg.push_back(negate(f.expr));
      SnapPtr l = buildSnapAndSlots(*f.left, prog, fresh, lp, lg, out);
      SnapPtr r = buildSnapAndSlots(*f.right, prog, fresh, rp, rg, out);
      return snapPair(l, r);
    }
  }
  throw InternalError("buildSnapAndSlots: bad kind");
}

struct BranchTerm {
  std::vector<BranchCond> stack;
  TermPtr term;
};

/// Reassemble per-branch terms into one ite tree over the branch conditions.
TermPtr reassemble(const std::vector<BranchTerm>& items, std::size_t depth,
                   const TermPtr& dflt) {
  if (items.empty()) return dflt;
  for (const auto& it : items)
    if (it.stack.size() <= depth) return it.term;
  TermPtr head = items[0].stack[depth].cond;
  std::vector<BranchTerm> thenG, elseG;
  for (const auto& it : items) {
    if (termEquals(*it.stack[depth].cond, *head))
      thenG.push_back(it);
    else
      elseG.push_back(it);
  }
  if (elseG.empty()) return reassemble(thenG, depth + 1, dflt);
  // head is the then-side condition unless it is itself a negation
  if (head->kind == TermKind::App && head->name == "not")
    return tIte(head->args[0], reassemble(elseG, depth + 1, dflt),
                reassemble(thenG, depth + 1, dflt));
  return tIte(head, reassemble(thenG, depth + 1, dflt), reassemble(elseG, depth + 1, dflt));
}

TermPtr conjoin(const std::vector<TermPtr>& ts) {
  if (ts.empty()) return tBool(true);
  TermPtr acc = ts[0];
  for (std::size_t i = 1; i < ts.size(); ++i) acc = tAnd(acc, ts[i]);
  return acc;
}

TermPtr defaultOfSort(Sort s) {
  switch (s) {
    case Sort::Int: return tInt(0);
    case Sort::Bool: return tBool(false);
    case Sort::Ref: return tNull();
    case Sort::Snap: return tUnit();
  }
  throw InternalError("defaultOfSort");
}

std::string guardString(const std::vector<ExprPtr>& guards) {
  std::string s;
  for (const auto& g : guards) {
    if (!s.empty()) s += " && ";
    s += printExpr(*g);
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Fig. 4 well-formedness
// ---------------------------------------------------------------------------

std::vector<SymbolicState> wellFormedFormula(Engine& eng, const SymbolicState& base,
                                             const GradualFormula& gf, const SnapPtr& delta) {
  std::vector<SymbolicState> out;
  for (auto& first : eng.produce(base, gf, delta)) {
    SymbolicState again = base;
    again.pathCond = first.solverPi();  // pi of the first pass, branch conds folded in
    again.branchStack.clear();
    again.produced.clear();
    for (auto& second : eng.produce(again, gf, delta)) out.push_back(std::move(second));
  }
  return out;
}

// ---------------------------------------------------------------------------
// rejection (equi-recursive precondition check)
// ---------------------------------------------------------------------------

std::optional<Diagnostic> FunctionVerifier::rejectInadmissiblePre(const FunctionDecl& f) const {
  // predicates reachable from the precondition, inlining bodies with a
  // visited set (the equi-recursive view)
  std::set<std::string> reachable;
  {
    std::set<std::string> work0;
    collectPredsInFormula(*f.pre.body, work0);
    std::vector<std::string> work(work0.begin(), work0.end());
    while (!work.empty()) {
      std::string p = work.back();
      work.pop_back();
      if (!reachable.insert(p).second) continue;
      auto it = prog_.predicates.find(p);
      if (it == prog_.predicates.end()) continue;
      std::set<std::string> inner;
      collectPredsInFormula(*it->second->body.body, inner);
      for (const auto& q : inner) work.push_back(q);
    }
  }
  auto isRecursive = [&](const std::string& p) {
    std::set<std::string> seen;
    std::vector<std::string> work = {p};
    while (!work.empty()) {
      std::string cur = work.back();
      work.pop_back();
      auto it = prog_.predicates.find(cur);
      if (it == prog_.predicates.end()) continue;
      std::set<std::string> inner;
      collectPredsInFormula(*it->second->body.body, inner);
      for (const auto& q : inner) {
        if (q == p) return true;
        if (seen.insert(q).second) work.push_back(q);
      }
    }
    return false;
  };

  for (const auto& p : reachable) {
    if (!isRecursive(p)) continue;
    if (f.pre.imprecise)
      return Diagnostic{f.pre.pos,
                        "precondition of '" + f.name + "' is imprecise and reaches recursive "
                        "predicate '" + p + "' (equi-recursive check): imprecise recursive "
                        "predicates cannot be used with pure functions"};
    auto it = prog_.predicates.find(p);
    if (it != prog_.predicates.end() && it->second->body.imprecise)
      return Diagnostic{f.pre.pos,
                        "precondition of '" + f.name + "' reaches recursive predicate '" + p +
                        "' whose body is imprecise (equi-recursive check)"};
  }

  // (c) transitive self-application, through predicate bodies and the
  // preconditions of applied functions
  std::set<std::string> apps;
  collectCallsInFormula(*f.pre.body, apps);
  for (const auto& p : reachable) {
    auto it = prog_.predicates.find(p);
    if (it != prog_.predicates.end()) collectCallsInFormula(*it->second->body.body, apps);
  }
  std::set<std::string> seenFuncs;
  std::vector<std::string> work(apps.begin(), apps.end());
  while (!work.empty()) {
    std::string g = work.back();
    work.pop_back();
    if (g == f.name)
      return Diagnostic{f.pre.pos, "precondition of '" + f.name +
                                   "' transitively contains an application of '" + f.name + "'"};
    if (!seenFuncs.insert(g).second) continue;
    auto it = prog_.functions.find(g);
    if (it == prog_.functions.end()) continue;
    std::set<std::string> inner;
    collectCallsInFormula(*it->second->pre.body, inner);
    for (const auto& h : inner) work.push_back(h);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// well-definedness run
// ---------------------------------------------------------------------------

struct FunctionVerifier::WellDefArtifacts {
  std::vector<Slot> slots;  // declared (and, on round 2, extension) components
  struct ExtEntry {
    ExprPtr lval;
    std::string access;
    std::vector<ExprPtr> guards;
    std::string guardStr;
    TermPtr leaf;
  };
  std::vector<ExtEntry> extensions;
  std::vector<BranchTerm> guards;  // produced pre constraints per branch
  std::vector<BranchTerm> bodies;
  std::vector<BranchTerm> posts;
  std::vector<RuntimeCheck> checks;
  std::map<std::string, TermPtr> paramSyms;
  TermPtr resultSym;
};

FunctionVerifier::WellDefArtifacts FunctionVerifier::runWellDefinedness(
    const FunctionDecl& f, const GradualFormula& pre, bool extensionArmed, FunctionInfo&) {
  WellDefArtifacts art;
  Engine eng(prog_, solver_, fresh_, table_);

  SymbolicState s0;
  std::set<std::string> paramNames;
  for (const auto& p : f.params) {
    TermPtr sym = fresh_.fresh(sortOfType(p.type), p.name);
    s0.store[p.name] = sym;
    art.paramSyms[p.name] = sym;
    paramNames.insert(p.name);
  }

  SnapPtr delta = buildSnapAndSlots(*pre.body, prog_, fresh_, {}, {}, art.slots);

  // missing-access handler: extension when armed; otherwise hard failure
  if (extensionArmed) {
    eng.missingAccessHandler = [this, &art, &eng, &f, paramNames](
                                   SymbolicState& st, const TermPtr& recv,
                                   const ExprPtr& recvSrc, const std::string& field,
                                   Pos pos) -> TermPtr {
      if (!recvSrc)
        throw ExtensionFailure(pos, "in '" + f.name + "': receiver of the missing access is "
                                    "not expressible in source terms");
      if (eng.recursiveUnfoldDepth() > 0)
        throw ExtensionFailure(pos, "in '" + f.name + "': access " + printExpr(*recvSrc) + "->" +
                                    field + " lies under an unfolded recursive predicate; "
                                    "extending would permanently change the predicate's "
                                    "snapshot shape");
      if (!exprOverParams(*recvSrc, paramNames))
        throw ExtensionFailure(pos, "in '" + f.name + "': receiver " + printExpr(*recvSrc) +
                                    " is not expressible over the function's parameters");
      std::vector<ExprPtr> guards;
      std::set<std::string> seen;
      for (const auto& b : st.branchStack) {
        if (!b.source)
          throw ExtensionFailure(pos, "in '" + f.name + "': a branch condition guarding the "
                                      "missing access is not expressible in source terms");
        if (!exprOverParams(*b.source, paramNames))
          throw ExtensionFailure(pos, "in '" + f.name + "': branch condition " +
                                      printExpr(*b.source) +
                                      " is not expressible over the function's parameters");
        if (seen.insert(printExpr(*b.source)).second) guards.push_back(b.source);
      }
      std::string access = printExpr(*recvSrc) + "->" + field;
      std::string key = access + "|" + guardString(guards);
      TermPtr leaf;
      for (const auto& e : art.extensions)
        if (e.access + "|" + e.guardStr == key) leaf = e.leaf;
      if (!leaf) {
        Type ft = prog_.fieldType(recvSrc->type.structName, field);
        leaf = fresh_.fresh(sortOfType(ft), field);
        ExprPtr lval = mkFieldRead(pos, recvSrc, field);
        lval->type = ft;
        art.extensions.push_back({lval, access, guards, guardString(guards), leaf});
      }
      HeapChunk c = HeapChunk::ofField({recv, field, leaf, recvSrc});
      c.id = eng.nextChunkId();
      st.heap.push_back(std::move(c));
      return leaf;
    };
  } else {
    bool imprecisePre = pre.imprecise;
    eng.missingAccessHandler = [&f, imprecisePre](SymbolicState&, const TermPtr&,
                                                  const ExprPtr& recvSrc,
                                                  const std::string& field,
                                                  Pos pos) -> TermPtr {
      std::string what = recvSrc ? printExpr(*recvSrc) + "->" + field : field;
      if (imprecisePre)
        throw InternalError("in '" + f.name + "': access " + what +
                            " missed the snapshot again after extension");
      throw StaticFailure(pos, "in '" + f.name + "': access " + what +
                          " is not framed by the precondition");
    };
  }

  // (b) precondition well-formedness, Fig. 4 (produce twice)
  std::vector<SymbolicState> sigma1s = wellFormedFormula(eng, s0, pre, delta);
  for (const auto& s1 : sigma1s) art.guards.push_back({s1.branchStack, conjoin(s1.produced)});

  // (c) postcondition well-formedness, Fig. 4: eval with isImprecise from the
  // postcondition's own `?`
  art.resultSym = fresh_.fresh(sortOfType(f.returnType), "result");
  ExprPtr postExpr = formulaToExpr(*f.post.body);
  for (const auto& s1 : sigma1s) {
    SymbolicState sc = s1;
    sc.store["\\result"] = art.resultSym;
    sc.isImprecise = f.post.imprecise;
    for (auto& o : eng.eval(sc, postExpr)) {
      art.posts.push_back({o.state.branchStack, o.value});
      for (auto& c : o.state.checks) art.checks.push_back(c);
    }
  }

  // (d) body evaluation and (e) postcondition consumption per body branch
  for (const auto& s1 : sigma1s) {
    for (auto& o : eng.eval(s1, f.body)) {
      art.bodies.push_back({o.state.branchStack, o.value});
      SymbolicState se = std::move(o.state);
      se.store["\\result"] = o.value;
      for (auto& co : eng.consume(se, f.post, CheckKind::Post, f.pos))
        for (auto& c : co.state.checks) art.checks.push_back(c);
    }
  }
  return art;
}

// ---------------------------------------------------------------------------
// axiomatisation
// ---------------------------------------------------------------------------

void FunctionVerifier::axiomatise(const FunctionDecl& f, FunctionInfo& info,
                                  const WellDefArtifacts& art) {
  Sort retSort = sortOfType(f.returnType);
  TermPtr sVar = tSym("s@snap", Sort::Snap);

  std::map<std::string, TermPtr> subst;
  std::vector<TermPtr> quantArgs = {sVar};
  for (const auto& p : f.params) {
    TermPtr qv = tSym(p.name, sortOfType(p.type));
    subst[art.paramSyms.at(p.name)->name] = qv;
    quantArgs.push_back(qv);
  }
  for (const auto& e : info.snapshotMap.entries) {
    TermPtr proj = sVar;
    for (SnapSide side : e.path) proj = side == SnapSide::Left ? tFirst(proj) : tSecond(proj);
    if (e.leaf->sort != Sort::Snap) proj = tSnapUnwrap(proj, e.leaf->sort);
    subst[e.leaf->name] = proj;
  }

  std::vector<TermPtr> argVars(quantArgs.begin() + 1, quantArgs.end());
  TermPtr fullApp = tFuncApp(f.name, false, retSort, sVar, argVars);
  TermPtr limApp = tFuncApp(f.name, true, retSort, sVar, argVars);

  TermPtr guard = termSubstitute(reassemble(art.guards, 0, tBool(false)), subst);
  TermPtr body =
      termLimitCalls(termSubstitute(reassemble(art.bodies, 0, defaultOfSort(retSort)), subst),
                     f.name);
  std::map<std::string, TermPtr> postSubst = subst;
  postSubst[art.resultSym->name] = limApp;
  TermPtr post =
      termLimitCalls(termSubstitute(reassemble(art.posts, 0, tBool(true)), postSubst), f.name);

  std::ostringstream binder;
  binder << "((s@snap Snap)";
  for (const auto& p : f.params)
    binder << " (" << p.name << " " << encodeSort(sortOfType(p.type)) << ")";
  binder << ")";

  auto quantified = [&](const std::string& bodyText, const TermPtr& trigger) {
    return "(assert (forall " + binder.str() + " (! " + bodyText + " :pattern (" +
           encodeTerm(*trigger) + "))))";
  };

  Axiom a1{f.name + "%limited-eq",
           quantified("(= " + encodeTerm(*fullApp) + " " + encodeTerm(*limApp) + ")", fullApp)};
  Axiom a2{f.name + "%def",
           quantified("(=> " + encodeTerm(*guard) + " (= " + encodeTerm(*fullApp) + " " +
                          encodeTerm(*body) + "))",
                      fullApp)};
  Axiom a3{f.name + "%post",
           quantified("(=> " + encodeTerm(*guard) + " " + encodeTerm(*post) + ")", limApp)};

  info.symbols.name = f.name;
  for (const auto& p : f.params) info.symbols.paramSorts.push_back(sortOfType(p.type));
  info.symbols.retSort = retSort;
  info.symbols.axioms = {a1, a2, a3};
}

// ---------------------------------------------------------------------------
// top-level function verification (Fig. 3 with snapshot extension)
// ---------------------------------------------------------------------------

const FunctionInfo& FunctionVerifier::verifyFunction(const FunctionDecl& f) {
  FunctionInfo info;
  info.decl = &f;
  info.extendedPre = f.pre;

  if (auto rej = rejectInadmissiblePre(f)) {
    info.rejected = rej;
    return table_[f.name] = std::move(info);
  }

  try {
    WellDefArtifacts art = runWellDefinedness(f, f.pre, f.pre.imprecise, info);
    GradualFormula usedPre = f.pre;

    if (!art.extensions.empty()) {
      // graft the guarded extension clauses and re-run once against the
      // enlarged snapshot; a second miss is an internal error
      FormulaPtr chain = mkTrueFormula(f.pre.pos);
      for (auto it = art.extensions.rbegin(); it != art.extensions.rend(); ++it) {
        FormulaPtr clause = mkAccFormula(it->lval->pos, it->lval);
        for (auto g = it->guards.rbegin(); g != it->guards.rend(); ++g)
          clause = mkCondFormula((*g)->pos, *g, clause, mkTrueFormula(f.pre.pos));
        chain = mkAndFormula(clause, chain);
      }
      usedPre = GradualFormula{f.pre.imprecise, mkAndFormula(f.pre.body, chain), f.pre.pos};

      auto round1Ext = std::move(art.extensions);
      art = runWellDefinedness(f, usedPre, /*extensionArmed=*/false, info);
      for (const auto& e : round1Ext) {
        ExtensionEvent ev;
        ev.function = f.name;
        ev.access = e.access;
        ev.guard = e.guardStr;
        info.extensions.push_back(std::move(ev));
      }
    }

    info.extendedPre = usedPre;
    info.snapshotShape = shapeOfFormula(*usedPre.body, prog_);

    // snapshot map from the authoritative round's slots
    std::set<std::string> extKeys;
    for (const auto& ev : info.extensions) extKeys.insert(ev.access + "|" + ev.guard);
    for (const auto& sl : art.slots) {
      SnapshotMapEntry e;
      e.access = sl.access;
      e.accessLval = sl.accessLval;
      e.predName = sl.predName;
      e.predArgs = sl.predArgs;
      e.path = sl.path;
      e.leaf = sl.leaf;
      e.guards = sl.guards;
      std::string key = sl.access + "|" + guardString(sl.guards);
      e.origin = extKeys.count(key) ? SnapshotMapEntry::Origin::Extended
                                    : SnapshotMapEntry::Origin::Declared;
      info.snapshotMap.entries.push_back(std::move(e));
    }
    for (auto& ev : info.extensions) {
      for (const auto& e : info.snapshotMap.entries)
        if (e.origin == SnapshotMapEntry::Origin::Extended && e.access == ev.access &&
            guardString(e.guards) == ev.guard)
          ev.snapshotPath = e.path;
    }

    // residual checks discovered during well-definedness, deduplicated
    std::set<std::string> seen;
    for (auto& c : art.checks)
      if (seen.insert(checkFingerprint(c)).second) info.checks.push_back(c);

    axiomatise(f, info, art);
    solver_.declareFunctionSymbols(info.symbols);
  } catch (const StaticFailure& e) {
    info.failed = Diagnostic{e.pos, e.what()};
  } catch (const ExtensionFailure& e) {
    info.failed = Diagnostic{e.pos, std::string("snapshot extension failed: ") + e.what()};
  }
  return table_[f.name] = std::move(info);
}

// ---------------------------------------------------------------------------
// Fig. 5: evaluating a pure-function application
// ---------------------------------------------------------------------------

std::vector<EvalOutcome> evalFunctionApplication(Engine& eng, const SymbolicState& state,
                                                 const ExprPtr& call) {
  auto it = eng.functions().find(call->name);
  if (it == eng.functions().end())
    throw StaticFailure(call->pos, "function '" + call->name + "' has not been verified yet");
  const FunctionInfo& info = it->second;
  if (info.rejected)
    throw StaticFailure(call->pos, "call to rejected function '" + call->name +
                                   "': " + info.rejected->message);
  if (info.failed)
    throw StaticFailure(call->pos, "call to function '" + call->name +
                                   "' which failed verification: " + info.failed->message);
  const FunctionDecl& f = *info.decl;

  // evaluate arguments left to right
  std::vector<std::pair<SymbolicState, std::vector<TermPtr>>> argStates = {{state, {}}};
  for (const auto& arg : call->args) {
    std::vector<std::pair<SymbolicState, std::vector<TermPtr>>> next;
    for (auto& [s, ts] : argStates)
      for (auto& o : eng.eval(s, arg)) {
        auto ts2 = ts;
        ts2.push_back(o.value);
        next.emplace_back(std::move(o.state), std::move(ts2));
      }
    argStates = std::move(next);
  }

  std::vector<std::pair<std::string, ExprPtr>> binding;
  for (std::size_t i = 0; i < f.params.size(); ++i)
    binding.emplace_back(f.params[i].name, call->args[i]);
  GradualFormula substPre{info.extendedPre.imprecise,
                          substituteVars(info.extendedPre.body, binding),
                          info.extendedPre.pos};

  std::vector<EvalOutcome> out;
  for (auto& [s2, argTerms] : argStates) {
    SymbolicState entry = s2;
    entry.originContext = CheckOrigin{f.name, call->pos, binding};
    for (auto& co : eng.consume(entry, substPre, CheckKind::Pre, call->pos)) {
      SymbolicState s4 = std::move(co.state);
      // pure: function evaluation never keeps permissions removed
      s4.heap = s2.heap;
      s4.optimisticHeap = s2.optimisticHeap;
      s4.consumedIds = s2.consumedIds;
      s4.isImprecise = f.post.imprecise ? true : s2.isImprecise;
      s4.originContext = s2.originContext;
      TermPtr value = tFuncApp(f.name, false, sortOfType(f.returnType),
                               snapshotToTerm(co.snapshot), argTerms);
      out.push_back({std::move(s4), std::move(value)});
    }
  }
  return out;
}

}  // namespace gvc0
