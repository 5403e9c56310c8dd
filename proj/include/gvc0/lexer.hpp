#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gvc0/source.hpp"

namespace gvc0 {

enum class Tok {
  End,
  AnnoStart,  // //@ or /*@
  AnnoEnd,    // end of line annotation or @*/
  Ident,
  IntLit,
  // keywords
  KwStruct, KwTypedef, KwInt, KwBool, KwVoid, KwIf, KwElse, KwWhile, KwReturn,
  KwTrue, KwFalse, KwNull, KwAlloc, KwAssert, KwFold, KwUnfold, KwUnfolding,
  KwIn, KwAcc, KwRequires, KwEnsures, KwPure, KwLoopInvariant, KwPredicate,
  KwResult,  // \result
  // punctuation
  LParen, RParen, LBrace, RBrace, Semi, Comma, Arrow, Star, Assign,
  Plus, Minus, Slash, Percent, EqEq, NotEq, Lt, Le, Gt, Ge, AndAnd, OrOr,
  Not, Question, Colon,
};

struct Token {
  Tok kind;
  Pos pos;
  std::string text;      // Ident spelling
  std::int64_t intVal = 0;
};

/// Tokenizes a whole source buffer. Annotation comments (`//@ ... \n`,
/// `/*@ ... @*/`) are bracketed with AnnoStart/AnnoEnd and their contents
/// lexed normally; plain comments are skipped.
std::vector<Token> lex(const std::string& source);

const char* tokName(Tok t);

}  // namespace gvc0
