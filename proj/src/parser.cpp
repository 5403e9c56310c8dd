#include "gvc0/parser.hpp"

#include <set>

#include "gvc0/lexer.hpp"

namespace gvc0 {

namespace {

// Annotation clause kinds accepted at a given position.
enum class Clause { Pure, Requires, Ensures, LoopInvariant };

struct SpecClauses {
  bool pure = false;
  std::vector<GradualFormula> requires_;
  std::vector<GradualFormula> ensures_;
  std::vector<GradualFormula> invariants;
};

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program run() {
    Program prog;
    while (!at(Tok::End)) {
      if (at(Tok::AnnoStart)) {
        parseTopLevelAnno(prog);
        continue;
      }
      if (at(Tok::KwStruct) && peek(1).kind == Tok::Ident && peek(2).kind == Tok::LBrace) {
        parseStruct(prog);
        continue;
      }
      if (at(Tok::KwTypedef)) {
        parseTypedef();
        continue;
      }
      parseCallable(prog);
    }
    return prog;
  }

private:
  // --- token plumbing ------------------------------------------------------

  const Token& peek(int k = 0) const {
    std::size_t j = i_ + k;
    return j < toks_.size() ? toks_[j] : toks_.back();
  }
  bool at(Tok t) const { return peek().kind == t; }
  const Token& advance() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  Pos here() const { return peek().pos; }

  const Token& expect(Tok t, const char* what) {
    if (!at(t))
      throw ParseError(here(), std::string("expected ") + what + ", found " + tokName(peek().kind));
    return advance();
  }

  bool accept(Tok t) {
    if (at(t)) {
      advance();
      return true;
    }
    return false;
  }

  // Skip AnnoStart/AnnoEnd markers transparently inside specifications: a
  // formula may be split across annotation lines only at clause boundaries,
  // so inside clause parsing these markers are errors; at clause boundaries
  // the caller manages them.

  // --- top level -----------------------------------------------------------

  void parseStruct(Program& prog) {
    StructDecl s;
    s.pos = here();
    expect(Tok::KwStruct, "'struct'");
    s.name = expect(Tok::Ident, "struct name").text;
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace)) {
      Param f;
      f.pos = here();
      f.type = parseType();
      f.name = expect(Tok::Ident, "field name").text;
      expect(Tok::Semi, "';'");
      s.fields.push_back(std::move(f));
    }
    expect(Tok::RBrace, "'}'");
    expect(Tok::Semi, "';' after struct");
    prog.order.emplace_back(Program::DeclKind::Struct, prog.structs.size());
    prog.structs.push_back(std::move(s));
  }

  void parseTypedef() {
    expect(Tok::KwTypedef, "'typedef'");
    expect(Tok::KwStruct, "'struct'");
    std::string target = expect(Tok::Ident, "struct name").text;
    std::string alias = expect(Tok::Ident, "typedef name").text;
    expect(Tok::Semi, "';'");
    if (alias != target)
      throw ParseError(here(), "typedef must alias the struct under its own name");
    typedefs_.insert(alias);
  }

  void parseTopLevelAnno(Program& prog) {
    expect(Tok::AnnoStart, "annotation");
    while (!at(Tok::AnnoEnd)) {
      if (at(Tok::KwPredicate)) {
        PredicateDecl pd;
        pd.pos = here();
        advance();
        pd.name = expect(Tok::Ident, "predicate name").text;
        expect(Tok::LParen, "'('");
        pd.params = parseParams();
        expect(Tok::Assign, "'='");
        pd.body = parseGradualFormula();
        expect(Tok::Semi, "';'");
        prog.order.emplace_back(Program::DeclKind::Predicate, prog.predicates.size());
        prog.predicates.push_back(std::move(pd));
      } else {
        throw ParseError(here(), "only predicate declarations are allowed in top-level annotations");
      }
    }
    expect(Tok::AnnoEnd, "end of annotation");
  }

  void parseCallable(Program& prog) {
    Pos pos = here();
    Type ret = parseType(/*allowVoid=*/true);
    std::string name = expect(Tok::Ident, "declaration name").text;
    expect(Tok::LParen, "'('");
    std::vector<Param> params = parseParams();
    SpecClauses spec = parseSpecAnnos({Clause::Pure, Clause::Requires, Clause::Ensures});
    std::vector<StmtPtr> body = parseBlock();

    GradualFormula pre = conjoinClauses(spec.requires_, pos);
    GradualFormula post = conjoinClauses(spec.ensures_, pos);

    if (spec.pure) {
      FunctionDecl f;
      f.pos = pos;
      f.name = std::move(name);
      f.params = std::move(params);
      f.returnType = ret;
      f.pre = std::move(pre);
      f.post = std::move(post);
      f.body = extractFunctionBody(body, pos);
      prog.order.emplace_back(Program::DeclKind::Function, prog.functions.size());
      prog.functions.push_back(std::move(f));
    } else {
      MethodDecl m;
      m.pos = pos;
      m.name = std::move(name);
      m.params = std::move(params);
      m.returnType = ret;
      m.pre = std::move(pre);
      m.post = std::move(post);
      m.body = std::move(body);
      prog.order.emplace_back(Program::DeclKind::Method, prog.methods.size());
      prog.methods.push_back(std::move(m));
    }
  }

  /// A pure function body is a single expression; reject anything else here
  /// so check_purity can assume the shape. Side effects inside the expression
  /// are check_purity's business.
  ExprPtr extractFunctionBody(const std::vector<StmtPtr>& body, Pos pos) {
    if (body.size() == 1 && body[0]->kind == StmtKind::Return && body[0]->retVal)
      return body[0]->retVal;
    throw ParseError(pos, "pure function body must be a single 'return <expr>;'");
  }

  std::vector<Param> parseParams() {
    std::vector<Param> ps;
    if (accept(Tok::RParen)) return ps;
    for (;;) {
      Param p;
      p.pos = here();
      p.type = parseType();
      p.name = expect(Tok::Ident, "parameter name").text;
      ps.push_back(std::move(p));
      if (!accept(Tok::Comma)) break;
    }
    expect(Tok::RParen, "')'");
    return ps;
  }

  Type parseType(bool allowVoid = false) {
    Pos p = here();
    if (accept(Tok::KwInt)) return Type::intTy();
    if (accept(Tok::KwBool)) return Type::boolTy();
    if (at(Tok::KwVoid)) {
      if (!allowVoid) throw ParseError(p, "'void' is only valid as a method return type");
      advance();
      return Type::voidTy();
    }
    if (accept(Tok::KwStruct)) {
      std::string s = expect(Tok::Ident, "struct name").text;
      expect(Tok::Star, "'*' (references are the only struct-typed values)");
      return Type::refTy(s);
    }
    if (at(Tok::Ident) && peek(1).kind == Tok::Star) {
      std::string s = advance().text;
      advance();  // '*'
      return Type::refTy(s);
    }
    throw ParseError(p, std::string("expected a type, found ") + tokName(peek().kind));
  }

  bool looksLikeType() const {
    switch (peek().kind) {
      case Tok::KwInt:
      case Tok::KwBool:
      case Tok::KwStruct:
        return true;
      case Tok::Ident:
        return peek(1).kind == Tok::Star && peek(2).kind == Tok::Ident;
      default:
        return false;
    }
  }

  // --- annotations ---------------------------------------------------------

  SpecClauses parseSpecAnnos(const std::set<Clause>& allowed) {
    SpecClauses out;
    while (at(Tok::AnnoStart)) {
      advance();
      while (!at(Tok::AnnoEnd)) {
        Pos p = here();
        if (at(Tok::KwPure)) {
          if (!allowed.count(Clause::Pure)) throw ParseError(p, "'pure' not allowed here");
          advance();
          expect(Tok::Semi, "';'");
          out.pure = true;
        } else if (at(Tok::KwRequires)) {
          if (!allowed.count(Clause::Requires)) throw ParseError(p, "'requires' not allowed here");
          advance();
          out.requires_.push_back(parseGradualFormula());
          expect(Tok::Semi, "';'");
        } else if (at(Tok::KwEnsures)) {
          if (!allowed.count(Clause::Ensures)) throw ParseError(p, "'ensures' not allowed here");
          advance();
          out.ensures_.push_back(parseGradualFormula());
          expect(Tok::Semi, "';'");
        } else if (at(Tok::KwLoopInvariant)) {
          if (!allowed.count(Clause::LoopInvariant))
            throw ParseError(p, "'loop_invariant' not allowed here");
          advance();
          out.invariants.push_back(parseGradualFormula());
          expect(Tok::Semi, "';'");
        } else {
          throw ParseError(p, std::string("unexpected token in annotation: ") + tokName(peek().kind));
        }
      }
      expect(Tok::AnnoEnd, "end of annotation");
    }
    return out;
  }

  /// Left-to-right conjunction of clause list; `?` anywhere makes the whole
  /// condition imprecise over the conjunction of the precise parts.
  static GradualFormula conjoinClauses(const std::vector<GradualFormula>& cs, Pos fallback) {
    if (cs.empty()) return preciseTrue(fallback);
    bool imprecise = false;
    FormulaPtr acc;
    for (const auto& c : cs) {
      imprecise = imprecise || c.imprecise;
      if (!acc)
        acc = c.body;
      else
        acc = mkAndFormula(acc, c.body);
    }
    return GradualFormula{imprecise, acc, cs.front().pos};
  }

  // --- formulas ------------------------------------------------------------

  GradualFormula parseGradualFormula() {
    Pos p = here();
    bool imprecise = false;
    if (at(Tok::Question)) {
      advance();
      imprecise = true;
      if (!accept(Tok::AndAnd)) {
        // bare `?`
        return GradualFormula{true, mkTrueFormula(p), p};
      }
    }
    FormulaPtr f = parseConjunction();
    return GradualFormula{imprecise, f, p};
  }

  FormulaPtr parseConjunction() {
    FormulaPtr f = parseFTerm();
    while (at(Tok::AndAnd)) {
      advance();
      if (at(Tok::Question))
        throw ParseError(here(), "'?' may only appear as the outermost prefix of a clause");
      FormulaPtr r = parseFTerm();
      f = mkAndFormula(f, r);
    }
    return f;
  }

  FormulaPtr parseFTerm() {
    Pos p = here();
    if (at(Tok::KwAcc)) {
      advance();
      expect(Tok::LParen, "'(' after acc");
      ExprPtr lval = parseExpr();
      expect(Tok::RParen, "')'");
      return mkAccFormula(p, lval);
    }
    // Try a plain expression first; on failure fall back to the
    // parenthesized formula ternary `( e ? formula : formula )`.
    std::size_t save = i_;
    try {
      ExprPtr e = parseExpr();
      return mkBoolFormula(e);
    } catch (const ParseError&) {
      i_ = save;
    }
    expect(Tok::LParen, "'('");
    ExprPtr cond = parseExpr();
    expect(Tok::Question, "'?'");
    FormulaPtr thenF = parseConjunction();
    expect(Tok::Colon, "':'");
    FormulaPtr elseF = parseConjunction();
    expect(Tok::RParen, "')'");
    return mkCondFormula(p, cond, thenF, elseF);
  }

  // --- expressions ---------------------------------------------------------

  ExprPtr parseExpr() { return parseTernary(); }

  ExprPtr parseTernary() {
    if (at(Tok::KwUnfolding)) {
      Pos p = here();
      advance();
      std::string pred = expect(Tok::Ident, "predicate name").text;
      expect(Tok::LParen, "'('");
      std::vector<ExprPtr> args = parseArgs();
      expect(Tok::KwIn, "'in'");
      ExprPtr body = parseTernary();
      return mkUnfolding(p, pred, std::move(args), body);
    }
    ExprPtr c = parseOr();
    if (at(Tok::Question)) {
      Pos p = here();
      advance();
      ExprPtr t = parseTernary();
      expect(Tok::Colon, "':'");
      ExprPtr e = parseTernary();
      return mkTernary(p, c, t, e);
    }
    return c;
  }

  ExprPtr parseOr() {
    ExprPtr l = parseAnd();
    while (at(Tok::OrOr)) {
      Pos p = here();
      advance();
      l = mkBinary(p, BinOp::Or, l, parseAnd());
    }
    return l;
  }

  ExprPtr parseAnd() {
    ExprPtr l = parseEquality();
    while (at(Tok::AndAnd)) {
      // In formula position an `acc` conjunct follows; leave the && to the
      // formula-level conjunction.
      if (peek(1).kind == Tok::KwAcc) break;
      Pos p = here();
      advance();
      l = mkBinary(p, BinOp::And, l, parseEquality());
    }
    return l;
  }

  ExprPtr parseEquality() {
    ExprPtr l = parseRelational();
    while (at(Tok::EqEq) || at(Tok::NotEq)) {
      Pos p = here();
      BinOp op = at(Tok::EqEq) ? BinOp::Eq : BinOp::Ne;
      advance();
      l = mkBinary(p, op, l, parseRelational());
    }
    return l;
  }

  ExprPtr parseRelational() {
    ExprPtr l = parseAdditive();
    while (at(Tok::Lt) || at(Tok::Le) || at(Tok::Gt) || at(Tok::Ge)) {
      Pos p = here();
      BinOp op = at(Tok::Lt)   ? BinOp::Lt
                 : at(Tok::Le) ? BinOp::Le
                 : at(Tok::Gt) ? BinOp::Gt
                               : BinOp::Ge;
      advance();
      l = mkBinary(p, op, l, parseAdditive());
    }
    return l;
  }

  ExprPtr parseAdditive() {
    ExprPtr l = parseMultiplicative();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      Pos p = here();
      BinOp op = at(Tok::Plus) ? BinOp::Add : BinOp::Sub;
      advance();
      l = mkBinary(p, op, l, parseMultiplicative());
    }
    return l;
  }

  ExprPtr parseMultiplicative() {
    ExprPtr l = parseUnary();
    while (at(Tok::Star) || at(Tok::Slash) || at(Tok::Percent)) {
      Pos p = here();
      BinOp op = at(Tok::Star) ? BinOp::Mul : at(Tok::Slash) ? BinOp::Div : BinOp::Mod;
      advance();
      l = mkBinary(p, op, l, parseUnary());
    }
    return l;
  }

  ExprPtr parseUnary() {
    Pos p = here();
    if (accept(Tok::Not)) return mkUnary(p, UnOp::Not, parseUnary());
    if (accept(Tok::Minus)) return mkUnary(p, UnOp::Neg, parseUnary());
    return parsePostfix();
  }

  ExprPtr parsePostfix() {
    ExprPtr e = parsePrimary();
    while (at(Tok::Arrow)) {
      Pos p = here();
      advance();
      std::string field = expect(Tok::Ident, "field name").text;
      e = mkFieldRead(p, e, field);
    }
    return e;
  }

  ExprPtr parsePrimary() {
    Pos p = here();
    if (at(Tok::IntLit)) return mkIntLit(p, advance().intVal);
    if (accept(Tok::KwTrue)) return mkBoolLit(p, true);
    if (accept(Tok::KwFalse)) return mkBoolLit(p, false);
    if (accept(Tok::KwNull)) return mkNullLit(p);
    if (accept(Tok::KwResult)) return mkResult(p);
    if (at(Tok::KwAlloc)) {
      advance();
      expect(Tok::LParen, "'('");
      std::string s = expect(Tok::Ident, "struct name").text;
      expect(Tok::RParen, "')'");
      return mkAlloc(p, s);
    }
    if (at(Tok::Ident)) {
      std::string name = advance().text;
      if (at(Tok::LParen)) {
        advance();
        std::vector<ExprPtr> args = parseArgs();
        return mkCall(p, name, std::move(args));
      }
      return mkVar(p, name);
    }
    if (accept(Tok::LParen)) {
      ExprPtr e = parseExpr();
      expect(Tok::RParen, "')'");
      return e;
    }
    throw ParseError(p, std::string("expected an expression, found ") + tokName(peek().kind));
  }

  std::vector<ExprPtr> parseArgs() {
    std::vector<ExprPtr> args;
    if (accept(Tok::RParen)) return args;
    for (;;) {
      args.push_back(parseExpr());
      if (!accept(Tok::Comma)) break;
    }
    expect(Tok::RParen, "')'");
    return args;
  }

  // --- statements ----------------------------------------------------------

  std::vector<StmtPtr> parseBlock() {
    expect(Tok::LBrace, "'{'");
    std::vector<StmtPtr> stmts;
    while (!at(Tok::RBrace)) stmts.push_back(parseStmt());
    expect(Tok::RBrace, "'}'");
    return stmts;
  }

  StmtPtr parseStmt() {
    Pos p = here();
    auto s = std::make_shared<Stmt>();
    s->pos = p;

    if (at(Tok::AnnoStart)) {
      // statement-position annotations: assert / fold / unfold
      advance();
      std::vector<StmtPtr> ghosts;
      while (!at(Tok::AnnoEnd)) ghosts.push_back(parseGhostStmt());
      expect(Tok::AnnoEnd, "end of annotation");
      if (ghosts.size() == 1) return ghosts[0];
      s->kind = StmtKind::Block;
      s->body = std::move(ghosts);
      return s;
    }
    if (at(Tok::KwAssert) || at(Tok::KwFold) || at(Tok::KwUnfold)) return parseGhostStmt();

    if (at(Tok::LBrace)) {
      s->kind = StmtKind::Block;
      s->body = parseBlock();
      return s;
    }
    if (at(Tok::KwIf)) {
      advance();
      s->kind = StmtKind::If;
      expect(Tok::LParen, "'('");
      s->cond = parseExpr();
      expect(Tok::RParen, "')'");
      s->body = parseStmtOrBlock();
      if (accept(Tok::KwElse)) s->elseBody = parseStmtOrBlock();
      return s;
    }
    if (at(Tok::KwWhile)) {
      advance();
      s->kind = StmtKind::While;
      expect(Tok::LParen, "'('");
      s->cond = parseExpr();
      expect(Tok::RParen, "')'");
      SpecClauses spec = parseSpecAnnos({Clause::LoopInvariant});
      s->invariants = std::move(spec.invariants);
      s->body = parseStmtOrBlock();
      return s;
    }
    if (at(Tok::KwReturn)) {
      advance();
      s->kind = StmtKind::Return;
      if (!at(Tok::Semi)) s->retVal = parseExpr();
      expect(Tok::Semi, "';'");
      return s;
    }
    if (looksLikeType()) {
      s->kind = StmtKind::LocalDecl;
      s->declType = parseType();
      s->name = expect(Tok::Ident, "variable name").text;
      if (accept(Tok::Assign)) s->rhs = parseExpr();
      expect(Tok::Semi, "';'");
      return s;
    }

    // assignment / call statement
    ExprPtr lhs = parsePostfix();
    if (at(Tok::Assign)) {
      advance();
      s->kind = StmtKind::Assign;
      s->lhs = lhs;
      s->rhs = parseExpr();
      expect(Tok::Semi, "';'");
      return s;
    }
    if (lhs->kind == ExprKind::Call) {
      s->kind = StmtKind::CallStmt;
      s->callExpr = lhs;
      expect(Tok::Semi, "';'");
      return s;
    }
    throw ParseError(p, "expected a statement");
  }

  std::vector<StmtPtr> parseStmtOrBlock() {
    if (at(Tok::LBrace)) return parseBlock();
    return {parseStmt()};
  }

  StmtPtr parseGhostStmt() {
    Pos p = here();
    auto s = std::make_shared<Stmt>();
    s->pos = p;
    if (accept(Tok::KwAssert)) {
      s->kind = StmtKind::Assert;
      expect(Tok::LParen, "'('");
      s->formula = parseGradualFormula();
      expect(Tok::RParen, "')'");
      expect(Tok::Semi, "';'");
      return s;
    }
    bool isFold = at(Tok::KwFold);
    if (accept(Tok::KwFold) || accept(Tok::KwUnfold)) {
      s->kind = isFold ? StmtKind::Fold : StmtKind::Unfold;
      s->name = expect(Tok::Ident, "predicate name").text;
      expect(Tok::LParen, "'('");
      s->args = parseArgs();
      expect(Tok::Semi, "';'");
      return s;
    }
    throw ParseError(p, "expected assert, fold, or unfold");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::set<std::string> typedefs_;
};

}  // namespace

Program parse(const std::string& source) { return Parser(lex(source)).run(); }

}  // namespace gvc0
