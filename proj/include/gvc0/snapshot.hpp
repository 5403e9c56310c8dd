#pragma once

#include <memory>
#include <vector>

#include "gvc0/ast.hpp"
#include "gvc0/term.hpp"

namespace gvc0 {

struct Snapshot;
using SnapPtr = std::shared_ptr<const Snapshot>;

/// Binary-tree value summarizing the heap locations a formula talks about:
/// Unit for pure conjuncts, a sorted leaf term per acc / predicate instance,
/// Pair mirroring the conjunct tree.
struct Snapshot {
  enum class K { Unit, Leaf, Pair } kind = K::Unit;
  TermPtr leaf;      // Leaf
  SnapPtr left, right;  // Pair
};

SnapPtr snapUnit();
SnapPtr snapLeaf(TermPtr t);
SnapPtr snapPair(SnapPtr l, SnapPtr r);

enum class SnapSide { Left, Right };
using SnapPath = std::vector<SnapSide>;

/// Subtree/leaf at `path`. A path descending into a Leaf whose term has sort
/// Snap lowers to first/second projection terms. Invalid paths are internal
/// errors.
SnapPtr snapshotProject(const SnapPtr& s, const SnapPath& path);

/// Snapshot tree -> Snap-sorted term (Unit -> unit, Leaf -> snapX wrap,
/// Pair -> combine).
TermPtr snapshotToTerm(const SnapPtr& s);

/// Structural tree shape; leaves carry the element sort.
struct SnapShape {
  enum class K { Unit, Leaf, Pair } kind = K::Unit;
  Sort leafSort = Sort::Int;
  std::shared_ptr<const SnapShape> left, right;
};
using ShapePtr = std::shared_ptr<const SnapShape>;

ShapePtr shapeUnit();
ShapePtr shapeLeaf(Sort s);
ShapePtr shapePair(ShapePtr l, ShapePtr r);

bool shapeEquals(const SnapShape& a, const SnapShape& b);
bool snapshotMatchesShape(const Snapshot& s, const SnapShape& shape);
std::string shapeStr(const SnapShape& s);
std::string snapshotStr(const Snapshot& s);

/// Fresh snapshot tree of the given shape (fresh leaf symbols).
SnapPtr freshSnapshot(const SnapShape& shape, FreshCounter& fresh, const std::string& hint);

/// Destructure an opaque Snap-sorted term into a tree of the given shape
/// using first/second projections and getX selectors at the leaves.
SnapPtr destructureSnapTerm(const TermPtr& snapTerm, const SnapShape& shape);

}  // namespace gvc0
