#include "gvc0/snapshot.hpp"

namespace gvc0 {

SnapPtr snapUnit() {
  static SnapPtr u = std::make_shared<Snapshot>();
  return u;
}

SnapPtr snapLeaf(TermPtr t) {
  auto s = std::make_shared<Snapshot>();
  s->kind = Snapshot::K::Leaf;
  s->leaf = std::move(t);
  return s;
}

SnapPtr snapPair(SnapPtr l, SnapPtr r) {
  if (!l || !r) throw InternalError("snapPair: empty child");
  auto s = std::make_shared<Snapshot>();
  s->kind = Snapshot::K::Pair;
  s->left = std::move(l);
  s->right = std::move(r);
  return s;
}

SnapPtr snapshotProject(const SnapPtr& s, const SnapPath& path) {
  SnapPtr cur = s;
  for (std::size_t i = 0; i < path.size(); ++i) {
    switch (cur->kind) {
      case Snapshot::K::Pair:
        cur = path[i] == SnapSide::Left ? cur->left : cur->right;
        break;
      case Snapshot::K::Leaf: {
        if (cur->leaf->sort != Sort::Snap)
          throw InternalError("snapshot projection into a non-snapshot leaf");
        TermPtr t = cur->leaf;
        for (; i < path.size(); ++i)
          t = path[i] == SnapSide::Left ? tFirst(t) : tSecond(t);
        return snapLeaf(t);
      }
      case Snapshot::K::Unit:
        throw InternalError("snapshot projection into Unit");
    }
  }
  return cur;
}

TermPtr snapshotToTerm(const SnapPtr& s) {
  switch (s->kind) {
    case Snapshot::K::Unit: return tUnit();
    case Snapshot::K::Leaf: return tSnapWrap(s->leaf);
    case Snapshot::K::Pair:
      return tCombine(snapshotToTerm(s->left), snapshotToTerm(s->right));
  }
  throw InternalError("snapshotToTerm: bad kind");
}

ShapePtr shapeUnit() {
  static ShapePtr u = std::make_shared<SnapShape>();
  return u;
}

ShapePtr shapeLeaf(Sort s) {
  auto sh = std::make_shared<SnapShape>();
  sh->kind = SnapShape::K::Leaf;
  sh->leafSort = s;
  return sh;
}

ShapePtr shapePair(ShapePtr l, ShapePtr r) {
  auto sh = std::make_shared<SnapShape>();
  sh->kind = SnapShape::K::Pair;
  sh->left = std::move(l);
  sh->right = std::move(r);
  return sh;
}

bool shapeEquals(const SnapShape& a, const SnapShape& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case SnapShape::K::Unit: return true;
    case SnapShape::K::Leaf: return a.leafSort == b.leafSort;
    case SnapShape::K::Pair:
      return shapeEquals(*a.left, *b.left) && shapeEquals(*a.right, *b.right);
  }
  return false;
}

bool snapshotMatchesShape(const Snapshot& s, const SnapShape& shape) {
  switch (shape.kind) {
    case SnapShape::K::Unit: return s.kind == Snapshot::K::Unit;
    case SnapShape::K::Leaf:
      return s.kind == Snapshot::K::Leaf && s.leaf->sort == shape.leafSort;
    case SnapShape::K::Pair:
      return s.kind == Snapshot::K::Pair && snapshotMatchesShape(*s.left, *shape.left) &&
             snapshotMatchesShape(*s.right, *shape.right);
  }
  return false;
}

std::string shapeStr(const SnapShape& s) {
  switch (s.kind) {
    case SnapShape::K::Unit: return "unit";
    case SnapShape::K::Leaf: return std::string("leaf:") + sortName(s.leafSort);
    case SnapShape::K::Pair: return "(" + shapeStr(*s.left) + ", " + shapeStr(*s.right) + ")";
  }
  return "?";
}

std::string snapshotStr(const Snapshot& s) {
  switch (s.kind) {
    case Snapshot::K::Unit: return "unit";
    case Snapshot::K::Leaf: return termStr(*s.leaf);
    case Snapshot::K::Pair: return "(" + snapshotStr(*s.left) + ", " + snapshotStr(*s.right) + ")";
  }
  return "?";
}

SnapPtr freshSnapshot(const SnapShape& shape, FreshCounter& fresh, const std::string& hint) {
  switch (shape.kind) {
    case SnapShape::K::Unit: return snapUnit();
    case SnapShape::K::Leaf: return snapLeaf(fresh.fresh(shape.leafSort, hint));
    case SnapShape::K::Pair:
      return snapPair(freshSnapshot(*shape.left, fresh, hint),
                      freshSnapshot(*shape.right, fresh, hint));
  }
  throw InternalError("freshSnapshot: bad shape");
}

SnapPtr destructureSnapTerm(const TermPtr& snapTerm, const SnapShape& shape) {
  switch (shape.kind) {
    case SnapShape::K::Unit: return snapUnit();
    case SnapShape::K::Leaf:
      return snapLeaf(shape.leafSort == Sort::Snap ? snapTerm
                                                   : tSnapUnwrap(snapTerm, shape.leafSort));
    case SnapShape::K::Pair:
      return snapPair(destructureSnapTerm(tFirst(snapTerm), *shape.left),
                      destructureSnapTerm(tSecond(snapTerm), *shape.right));
  }
  throw InternalError("destructureSnapTerm: bad shape");
}

}  // namespace gvc0
