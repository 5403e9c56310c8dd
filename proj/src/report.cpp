#include "gvc0/report.hpp"

#include <sstream>

#include "gvc0/printer.hpp"
#include "json.hpp"

namespace gvc0 {

namespace {

nlohmann::json posJson(Pos p) { return {{"line", p.line}, {"col", p.col}}; }

nlohmann::json checkJson(const RuntimeCheck& c) {
  nlohmann::json j;
  j["location"] = posJson(c.location);
  j["kind"] = checkKindStr(c.kind);
  j["condition"] = printFormula(*c.condition);
  j["guards"] = nlohmann::json::array();
  for (const auto& g : c.guards) j["guards"].push_back(printExpr(*g));
  if (c.origin) {
    j["origin"] = {{"callee", c.origin->callee}, {"callSite", posJson(c.origin->callSite)}};
  } else {
    j["origin"] = nullptr;
  }
  return j;
}

}  // namespace

std::string reportToJson(const VerificationReport& report) {
  nlohmann::json j;
  j["file"] = report.file;
  j["verdict"] = verdictStr(report.verdict);
  j["declarations"] = nlohmann::json::array();
  for (const auto& d : report.declarations) {
    nlohmann::json dj;
    dj["name"] = d.name;
    dj["verdict"] = verdictStr(d.verdict);
    dj["checks"] = nlohmann::json::array();
    for (const auto& c : d.checks) dj["checks"].push_back(checkJson(c));
    dj["extensions"] = nlohmann::json::array();
    for (const auto& e : d.extensions)
      dj["extensions"].push_back(
          {{"function", e.function}, {"access", e.access}, {"guard", e.guard}});
    dj["diagnostics"] = nlohmann::json::array();
    for (const auto& m : d.diagnostics) dj["diagnostics"].push_back(m);
    j["declarations"].push_back(std::move(dj));
  }
  return j.dump(2) + "\n";
}

std::string reportToText(const VerificationReport& report) {
  std::ostringstream os;
  os << report.file << ": " << verdictStr(report.verdict) << "\n";
  for (const auto& d : report.declarations) {
    os << "  " << d.name << ": " << verdictStr(d.verdict);
    if (!d.checks.empty()) os << ", " << d.checks.size() << " residual check(s)";
    if (!d.extensions.empty()) os << ", " << d.extensions.size() << " extension(s)";
    os << "\n";
    for (const auto& e : d.extensions) {
      os << "    extension: acc(" << e.access << ")";
      if (!e.guard.empty()) os << " under " << e.guard;
      os << "\n";
    }
    for (const auto& c : d.checks) {
      os << "    check at " << c.location.str() << " [" << checkKindStr(c.kind)
         << "]: " << printFormula(*c.condition);
      if (!c.guards.empty()) {
        os << " when ";
        for (std::size_t i = 0; i < c.guards.size(); ++i) {
          if (i) os << " && ";
          os << printExpr(*c.guards[i]);
        }
      }
      if (c.origin) os << " (from " << c.origin->callee << ")";
      os << "\n";
    }
    for (const auto& m : d.diagnostics) os << "    " << m << "\n";
  }
  return os.str();
}

std::string dumpAxioms(const TypedProgram& prog, const FunctionTable& table) {
  std::ostringstream os;
  for (const auto& f : prog.program.functions) {
    auto it = table.find(f.name);
    if (it == table.end() || !it->second.usable()) continue;
    const FunctionSymbols& fs = it->second.symbols;
    os << "; function " << fs.name << "\n";
    std::ostringstream sig;
    sig << "(Snap";
    for (Sort s : fs.paramSorts) sig << " " << encodeSort(s);
    sig << ") " << encodeSort(fs.retSort);
    os << "(declare-fun " << fs.name << " " << sig.str() << ")\n";
    os << "(declare-fun " << fs.name << "%limited " << sig.str() << ")\n";
    for (const auto& ax : fs.axioms) os << "; " << ax.name << "\n" << ax.smtText << "\n";
    os << "\n";
  }
  return os.str();
}

int exitCodeFor(Verdict v) {
  switch (v) {
    case Verdict::Verified:
    case Verdict::VerifiedWithChecks:
      return 0;
    case Verdict::StaticFailed:
      return 1;
    case Verdict::Rejected:
      return 2;
  }
  return 3;
}

}  // namespace gvc0
