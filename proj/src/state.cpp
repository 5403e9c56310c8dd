#include "gvc0/state.hpp"

#include <algorithm>
#include <sstream>

#include "gvc0/printer.hpp"

namespace gvc0 {

const char* checkKindStr(CheckKind k) {
  switch (k) {
    case CheckKind::FieldAccess: return "field-access";
    case CheckKind::Assert: return "assert";
    case CheckKind::Pre: return "pre";
    case CheckKind::Post: return "post";
    case CheckKind::Invariant: return "invariant";
    case CheckKind::Predicate: return "predicate";
  }
  return "?";
}

std::string checkFingerprint(const RuntimeCheck& c) {
  std::ostringstream os;
  os << c.location.str() << "|" << checkKindStr(c.kind) << "|" << printFormula(*c.condition)
     << "|";
  for (const auto& g : c.guards) os << printExpr(*g) << ";";
  os << "|";
  if (c.origin) os << c.origin->callee << "@" << c.origin->callSite.str();
  return os.str();
}

namespace {

bool chunkEquals(const HeapChunk& a, const HeapChunk& b) {
  if (a.field.has_value() != b.field.has_value()) return false;
  if (a.field) {
    return a.field->field == b.field->field &&
           termEquals(*a.field->receiver, *b.field->receiver) &&
           termEquals(*a.field->value, *b.field->value);
  }
  if (a.pred->pred != b.pred->pred || a.pred->args.size() != b.pred->args.size()) return false;
  for (std::size_t i = 0; i < a.pred->args.size(); ++i)
    if (!termEquals(*a.pred->args[i], *b.pred->args[i])) return false;
  return termEquals(*snapshotToTerm(a.pred->snapshot), *snapshotToTerm(b.pred->snapshot));
}

}  // namespace

bool heapsEqual(const Heap& a, const Heap& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& ca : a) {
    bool found = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!used[j] && chunkEquals(ca, b[j])) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

const FieldChunk* findFieldChunkSyntactic(const Heap& h, const Term& receiver,
                                          const std::string& field) {
  for (const auto& c : h)
    if (c.field && c.field->field == field && termEquals(*c.field->receiver, receiver))
      return &*c.field;
  return nullptr;
}

std::string heapStr(const Heap& h) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& c : h) {
    if (!first) os << ", ";
    first = false;
    if (c.field)
      os << termStr(*c.field->receiver) << "." << c.field->field << " -> "
         << termStr(*c.field->value);
    else {
      os << c.pred->pred << "(";
      for (std::size_t i = 0; i < c.pred->args.size(); ++i) {
        if (i) os << ", ";
        os << termStr(*c.pred->args[i]);
      }
      os << ")";
    }
  }
  os << "}";
  return os.str();
}

}  // namespace gvc0
