#include "gvc0/lexer.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <map>

namespace gvc0 {

namespace {

const std::map<std::string, Tok> kKeywords = {
    {"struct", Tok::KwStruct},   {"typedef", Tok::KwTypedef},
    {"int", Tok::KwInt},         {"bool", Tok::KwBool},
    {"void", Tok::KwVoid},       {"if", Tok::KwIf},
    {"else", Tok::KwElse},       {"while", Tok::KwWhile},
    {"return", Tok::KwReturn},   {"true", Tok::KwTrue},
    {"false", Tok::KwFalse},     {"NULL", Tok::KwNull},
    {"alloc", Tok::KwAlloc},     {"assert", Tok::KwAssert},
    {"fold", Tok::KwFold},       {"unfold", Tok::KwUnfold},
    {"unfolding", Tok::KwUnfolding}, {"in", Tok::KwIn},
    {"acc", Tok::KwAcc},         {"requires", Tok::KwRequires},
    {"ensures", Tok::KwEnsures}, {"pure", Tok::KwPure},
    {"loop_invariant", Tok::KwLoopInvariant}, {"predicate", Tok::KwPredicate},
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    while (!atEnd()) {
      skipSpace();
      if (atEnd()) break;
      Pos p = pos();
      char c = peek();

      // comments and annotations
      if (c == '/' && peek(1) == '/') {
        if (peek(2) == '@') {
          advance(3);
          emit(Tok::AnnoStart, p);
          inLineAnno_ = true;
        } else {
          while (!atEnd() && peek() != '\n') advance();
        }
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        if (peek(2) == '@') {
          advance(3);
          emit(Tok::AnnoStart, p);
          inBlockAnno_ = true;
        } else {
          advance(2);
          skipBlockComment(p);
        }
        continue;
      }
      if (inBlockAnno_ && c == '@' && peek(1) == '*' && peek(2) == '/') {
        advance(3);
        emit(Tok::AnnoEnd, p);
        inBlockAnno_ = false;
        continue;
      }

      if (std::isdigit(static_cast<unsigned char>(c))) {
        lexNumber(p);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        lexIdent(p);
        continue;
      }
      if (c == '\\') {
        lexResult(p);
        continue;
      }
      lexPunct(p);
    }
    if (inBlockAnno_) throw ParseError(pos(), "unterminated annotation comment");
    if (inLineAnno_) emit(Tok::AnnoEnd, pos());
    emit(Tok::End, pos());
    return std::move(out_);
  }

private:
  bool atEnd() const { return i_ >= src_.size(); }
  char peek(std::size_t k = 0) const { return i_ + k < src_.size() ? src_[i_ + k] : '\0'; }
  Pos pos() const { return {line_, col_}; }

  void advance(int n = 1) {
    for (int k = 0; k < n && i_ < src_.size(); ++k) {
      if (src_[i_] == '\n') {
        ++line_;
        col_ = 1;
        if (inLineAnno_) {
          emit(Tok::AnnoEnd, {line_ - 1, col_});
          inLineAnno_ = false;
        }
      } else {
        ++col_;
      }
      ++i_;
    }
  }

  void skipSpace() {
    while (!atEnd() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  void skipBlockComment(Pos start) {
    while (!atEnd()) {
      if (peek() == '*' && peek(1) == '/') {
        advance(2);
        return;
      }
      advance();
    }
    throw ParseError(start, "unterminated comment");
  }

  void emit(Tok k, Pos p, std::string text = {}, std::int64_t v = 0) {
    out_.push_back(Token{k, p, std::move(text), v});
  }

  void lexNumber(Pos p) {
    std::string digits;
    while (!atEnd() && std::isdigit(static_cast<unsigned char>(peek()))) {
      digits += peek();
      advance();
    }
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(digits.c_str(), &end, 10);
    if (errno != 0 || digits.size() > 18)
      throw ParseError(p, "integer literal out of range: " + digits);
    emit(Tok::IntLit, p, digits, v);
  }

  void lexIdent(Pos p) {
    std::string s;
    while (!atEnd() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      s += peek();
      advance();
    }
    auto it = kKeywords.find(s);
    if (it != kKeywords.end())
      emit(it->second, p, s);
    else
      emit(Tok::Ident, p, s);
  }

  void lexResult(Pos p) {
    advance();  // backslash
    std::string s;
    while (!atEnd() && std::isalpha(static_cast<unsigned char>(peek()))) {
      s += peek();
      advance();
    }
    if (s != "result") throw ParseError(p, "unknown escape '\\" + s + "'");
    emit(Tok::KwResult, p, "\\result");
  }

  void lexPunct(Pos p) {
    char c = peek();
    char d = peek(1);
    auto two = [&](Tok t) { advance(2); emit(t, p); };
    auto one = [&](Tok t) { advance(); emit(t, p); };
    switch (c) {
      case '(': one(Tok::LParen); return;
      case ')': one(Tok::RParen); return;
      case '{': one(Tok::LBrace); return;
      case '}': one(Tok::RBrace); return;
      case ';': one(Tok::Semi); return;
      case ',': one(Tok::Comma); return;
      case '*': one(Tok::Star); return;
      case '+': one(Tok::Plus); return;
      case '%': one(Tok::Percent); return;
      case '/': one(Tok::Slash); return;
      case '?': one(Tok::Question); return;
      case ':': one(Tok::Colon); return;
      case '-':
        if (d == '>') { two(Tok::Arrow); return; }
        one(Tok::Minus);
        return;
      case '=':
        if (d == '=') { two(Tok::EqEq); return; }
        one(Tok::Assign);
        return;
      case '!':
        if (d == '=') { two(Tok::NotEq); return; }
        one(Tok::Not);
        return;
      case '<':
        if (d == '=') { two(Tok::Le); return; }
        one(Tok::Lt);
        return;
      case '>':
        if (d == '=') { two(Tok::Ge); return; }
        one(Tok::Gt);
        return;
      case '&':
        if (d == '&') { two(Tok::AndAnd); return; }
        break;
      case '|':
        if (d == '|') { two(Tok::OrOr); return; }
        break;
      default:
        break;
    }
    throw ParseError(p, std::string("unexpected character '") + c + "'");
  }

  const std::string& src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
  bool inLineAnno_ = false;
  bool inBlockAnno_ = false;
  std::vector<Token> out_;
};

}  // namespace

std::vector<Token> lex(const std::string& source) { return Lexer(source).run(); }

const char* tokName(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::AnnoStart: return "'//@'";
    case Tok::AnnoEnd: return "end of annotation";
    case Tok::Ident: return "identifier";
    case Tok::IntLit: return "integer literal";
    case Tok::KwStruct: return "'struct'";
    case Tok::KwTypedef: return "'typedef'";
    case Tok::KwInt: return "'int'";
    case Tok::KwBool: return "'bool'";
    case Tok::KwVoid: return "'void'";
    case Tok::KwIf: return "'if'";
    case Tok::KwElse: return "'else'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwReturn: return "'return'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::KwNull: return "'NULL'";
    case Tok::KwAlloc: return "'alloc'";
    case Tok::KwAssert: return "'assert'";
    case Tok::KwFold: return "'fold'";
    case Tok::KwUnfold: return "'unfold'";
    case Tok::KwUnfolding: return "'unfolding'";
    case Tok::KwIn: return "'in'";
    case Tok::KwAcc: return "'acc'";
    case Tok::KwRequires: return "'requires'";
    case Tok::KwEnsures: return "'ensures'";
    case Tok::KwPure: return "'pure'";
    case Tok::KwLoopInvariant: return "'loop_invariant'";
    case Tok::KwPredicate: return "'predicate'";
    case Tok::KwResult: return "'\\result'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Arrow: return "'->'";
    case Tok::Star: return "'*'";
    case Tok::Assign: return "'='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Slash: return "'/'";
    case Tok::Percent: return "'%'";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Not: return "'!'";
    case Tok::Question: return "'?'";
    case Tok::Colon: return "':'";
  }
  return "?";
}

}  // namespace gvc0
