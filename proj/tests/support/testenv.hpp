#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "gvc0/parser.hpp"
#include "gvc0/smt.hpp"
#include "gvc0/typecheck.hpp"

namespace testenv {

inline std::string solverCommand() { return gvc0::defaultSolverCommand(); }

inline std::string corpusPath(const std::string& name) {
  return std::string(GVC0_CORPUS_DIR) + "/" + name;
}

inline std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline gvc0::TypedProgram typecheckSource(const std::string& src) {
  gvc0::TypecheckResult tc = gvc0::typecheck(gvc0::parse(src));
  if (!tc.ok()) {
    std::string all;
    for (const auto& d : tc.diagnostics) all += d.str() + "\n";
    throw std::runtime_error("typecheck failed:\n" + all);
  }
  return std::move(tc.typed);
}

inline gvc0::TypedProgram loadCorpus(const std::string& name) {
  return typecheckSource(readFile(corpusPath(name)));
}

}  // namespace testenv
