#pragma once

#include <string>

#include "gvc0/methods.hpp"

namespace gvc0 {

/// Check-report JSON (normative schema; machine-diffed by tests):
/// { "file", "verdict", "declarations": [ { "name", "verdict",
///   "checks": [ { "location": {"line","col"}, "kind", "condition",
///                 "guards": [..], "origin": {"callee","callSite"} | null } ],
///   "extensions": [ { "function", "access", "guard" } ],
///   "diagnostics": [..] } ] }
std::string reportToJson(const VerificationReport& report);

/// Human-readable per-declaration summary table.
std::string reportToText(const VerificationReport& report);

/// SMT-LIB declarations and axioms A1-A3 per function, declaration order.
std::string dumpAxioms(const TypedProgram& prog, const FunctionTable& table);

int exitCodeFor(Verdict v);

}  // namespace gvc0
