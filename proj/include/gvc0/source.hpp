#pragma once

#include <stdexcept>
#include <string>

namespace gvc0 {

/// 1-based source position.
struct Pos {
  int line = 0;
  int col = 0;

  bool operator==(const Pos&) const = default;
  std::string str() const { return std::to_string(line) + ":" + std::to_string(col); }
};

struct Diagnostic {
  Pos pos;
  std::string message;

  std::string str() const { return pos.str() + ": " + message; }
};

/// Syntax error; parsing stops at the first one.
class ParseError : public std::runtime_error {
public:
  ParseError(Pos pos, const std::string& msg)
      : std::runtime_error(pos.str() + ": " + msg), pos(pos) {}
  Pos pos;
};

/// A specification obligation refuted (or unprovable) in a precise state.
class StaticFailure : public std::runtime_error {
public:
  StaticFailure(Pos pos, const std::string& msg)
      : std::runtime_error(msg), pos(pos) {}
  Pos pos;
};

/// Pure-function precondition ruled inadmissible (equi-recursive check).
class RejectionError : public std::runtime_error {
public:
  RejectionError(Pos pos, const std::string& msg)
      : std::runtime_error(msg), pos(pos) {}
  Pos pos;
};

/// Snapshot extension attempt failed; carries the reason for the user.
class ExtensionFailure : public std::runtime_error {
public:
  ExtensionFailure(Pos pos, const std::string& msg)
      : std::runtime_error(msg), pos(pos) {}
  Pos pos;
};

/// Engine or solver invariant broken; not a user error.
class InternalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Solver subprocess unusable (spawn failure, protocol desync, crash).
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace gvc0
