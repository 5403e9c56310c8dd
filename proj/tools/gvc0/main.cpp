#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gvc0/interp.hpp"
#include "gvc0/parser.hpp"
#include "gvc0/report.hpp"
#include "gvc0/smt.hpp"

namespace {

constexpr int kExitVerified = 0;
constexpr int kExitStaticFailure = 1;
constexpr int kExitIllFormed = 2;
constexpr int kExitInternal = 3;

std::optional<std::string> readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct LoadedProgram {
  gvc0::TypedProgram typed;
};

/// Parse + typecheck, reporting diagnostics; exits with kExitIllFormed codes
/// via the optional return.
std::optional<LoadedProgram> loadProgram(const std::string& path, int& exitCode) {
  auto text = readFile(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    exitCode = kExitIllFormed;
    return std::nullopt;
  }
  try {
    gvc0::Program ast = gvc0::parse(*text);
    gvc0::TypecheckResult tc = gvc0::typecheck(std::move(ast));
    if (!tc.ok()) {
      for (const auto& d : tc.diagnostics)
        std::cerr << path << ":" << d.str() << "\n";
      exitCode = kExitIllFormed;
      return std::nullopt;
    }
    return LoadedProgram{std::move(tc.typed)};
  } catch (const gvc0::ParseError& e) {
    std::cerr << path << ":" << e.what() << "\n";
    exitCode = kExitIllFormed;
    return std::nullopt;
  }
}

bool writeOut(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) return false;
  out << content;
  return out.good();
}

std::optional<std::vector<gvc0::Value>> parseArgValues(const std::string& csv) {
  std::vector<gvc0::Value> vals;
  if (csv.empty()) return vals;
  std::istringstream is(csv);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok == "true")
      vals.push_back(gvc0::Value::ofBool(true));
    else if (tok == "false")
      vals.push_back(gvc0::Value::ofBool(false));
    else if (tok == "null" || tok == "NULL")
      vals.push_back(gvc0::Value::null());
    else {
      try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) return std::nullopt;
        vals.push_back(gvc0::Value::ofInt(v));
      } catch (...) {
        return std::nullopt;
      }
    }
  }
  return vals;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gvc0 - gradual verifier for a C0-like language with pure functions"};
  app.require_subcommand(1);

  std::string solverCmd = gvc0::defaultSolverCommand();
  int timeoutSec = 10;
  std::string emitChecksPath, dumpAxiomsPath;
  bool verbose = false;

  app.add_option("--solver", solverCmd, "SMT solver command (SMT-LIB 2 on stdin/stdout)")
      ->capture_default_str();
  app.add_option("--timeout", timeoutSec, "solver timeout per query, seconds")
      ->capture_default_str();
  app.add_option("--emit-checks", emitChecksPath, "write the check report JSON to this path");
  app.add_option("--dump-axioms", dumpAxiomsPath, "write per-function SMT declarations/axioms");
  app.add_flag("-v,--verbose", verbose, "verbose progress output");

  std::string verifyFile;
  auto* verify = app.add_subcommand("verify", "statically verify a source file");
  verify->add_option("file", verifyFile, "source file")->required();

  std::string runFile, entryName, argsCsv;
  auto* run = app.add_subcommand("run", "verify, then interpret with residual checks enforced");
  run->add_option("file", runFile, "source file")->required();
  run->add_option("--entry", entryName, "entry method")->required();
  run->add_option("--args", argsCsv, "comma-separated literal arguments (e.g. 6 or true,null)");

  CLI11_PARSE(app, argc, argv);

  const bool isRun = run->parsed();
  const std::string& file = isRun ? runFile : verifyFile;

  int exitCode = kExitVerified;
  auto loaded = loadProgram(file, exitCode);
  if (!loaded) return exitCode;

  try {
    gvc0::SolverSession session(solverCmd, timeoutSec);
    if (verbose) std::cerr << "solver: " << solverCmd << "\n";

    gvc0::VerifyResult vr = gvc0::verifyProgram(loaded->typed, session, file);

    if (!emitChecksPath.empty() && !writeOut(emitChecksPath, gvc0::reportToJson(vr.report))) {
      std::cerr << "error: cannot write " << emitChecksPath << "\n";
      return kExitInternal;
    }
    if (!dumpAxiomsPath.empty() &&
        !writeOut(dumpAxiomsPath, gvc0::dumpAxioms(loaded->typed, vr.functions))) {
      std::cerr << "error: cannot write " << dumpAxiomsPath << "\n";
      return kExitInternal;
    }

    if (!isRun) {
      std::cout << gvc0::reportToText(vr.report);
      return gvc0::exitCodeFor(vr.report.verdict);
    }

    // run mode: the program must verify (residual checks are fine)
    if (gvc0::exitCodeFor(vr.report.verdict) != 0) {
      std::cout << gvc0::reportToText(vr.report);
      std::cerr << "error: program does not verify; not running\n";
      return gvc0::exitCodeFor(vr.report.verdict);
    }
    auto argVals = parseArgValues(argsCsv);
    if (!argVals) {
      std::cerr << "error: cannot parse --args '" << argsCsv << "'\n";
      return kExitIllFormed;
    }
    gvc0::Interpreter interp(loaded->typed, vr.report);
    gvc0::RunOutcome out = interp.run(entryName, *argVals);
    switch (out.kind) {
      case gvc0::RunOutcome::Kind::Done:
        if (out.value) std::cout << out.value->str() << "\n";
        return kExitVerified;
      case gvc0::RunOutcome::Kind::CheckFailed:
        std::cerr << out.message << "\n";
        return kExitStaticFailure;
      case gvc0::RunOutcome::Kind::RuntimeError:
        std::cerr << "runtime error: " << out.message << "\n";
        return out.message.find("no method named") != std::string::npos ||
                       out.message.find("argument(s)") != std::string::npos
                   ? kExitIllFormed
                   : kExitInternal;
      case gvc0::RunOutcome::Kind::BudgetExceeded:
        std::cerr << "budget error: " << out.message << "\n";
        return kExitInternal;
    }
    return kExitInternal;
  } catch (const gvc0::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const gvc0::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
