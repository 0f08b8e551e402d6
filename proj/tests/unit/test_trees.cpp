#include <algorithm>
#include <functional>
#include <set>

#include "cylop/free_operad.hpp"
#include "doctest.h"

using namespace cylop;

namespace {

// Number of leaf-labelled rooted trees with n leaves and all internal
// vertices of arity >= 2: a root over a partition into >= 2 blocks, each
// block a tree. Partitions come from restricted growth strings.
long long reduced_trees(int n) {
  if (n == 1) return 1;
  long long total = 0;
  std::vector<int> a(n, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      if (used < 2) return;
      std::vector<int> sizes(used, 0);
      for (int x : a) ++sizes[x];
      long long prod = 1;
      for (int s : sizes) prod *= reduced_trees(s);
      total += prod;
      return;
    }
    for (int b = 0; b <= used; ++b) {
      a[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
  return total;
}

}  // namespace

TEST_CASE("reduced tree oracle reproduces the known sequence") {
  CHECK(reduced_trees(2) == 1);
  CHECK(reduced_trees(3) == 4);
  CHECK(reduced_trees(4) == 26);
  CHECK(reduced_trees(5) == 236);
}

TEST_CASE("enumerated reduced shapes match the oracle and are canonical") {
  for (int n = 2; n <= 5; ++n) {
    std::vector<int> labels;
    for (int l = 1; l <= n; ++l) labels.push_back(l);
    auto shapes = enumerate_reduced_shapes(labels, Kind::Alpha);
    CHECK(static_cast<long long>(shapes.size()) == reduced_trees(n));
    std::set<Tree> distinct(shapes.begin(), shapes.end());
    CHECK(distinct.size() == shapes.size());
    for (const Tree& t : shapes) {
      CHECK(is_canonical(t));
      CHECK(t.arity() == n);
    }
  }
}

TEST_CASE("canonical shape is invariant under planar reordering") {
  Tree t = join(Kind::Alpha, 0, {bare_leaf(3), join(Kind::Alpha, 0, {bare_leaf(2), bare_leaf(1)})});
  Tree u = join(Kind::Alpha, 0, {join(Kind::Alpha, 0, {bare_leaf(1), bare_leaf(2)}), bare_leaf(3)});
  CHECK(canonical_shape(t) == canonical_shape(u));
  CHECK(is_canonical(canonical_shape(t)));
  CHECK(canonical_shape(t).reading_order() == std::vector<int>{1, 2, 3});
}

TEST_CASE("grafting adds arities and relabels leaves") {
  Tree outer = corolla_tree(Kind::Alpha, 2, 0);
  Tree inner = corolla_tree(Kind::Alpha, 3, 0);
  Tree g = graft(outer, 2, inner);
  check_well_formed(g);
  CHECK(g.arity() == 4);
  CHECK(g.num_vertices() == 2);
  CHECK(g.weight() == 2);
}

TEST_CASE("colored trees carry leaf and output colors") {
  auto trees = enumerate_tree2(4, true);
  REQUIRE_FALSE(trees.empty());
  for (const Tree& t : trees) {
    CHECK(t.output() == Color::Beta);
    for (Color c : t.leaf_colors()) CHECK(c == Color::Alpha);
  }
  for (const Tree& t : enumerate_pitchforks(4, 2, true)) {
    CHECK(t.output() == Color::Beta);
    CHECK(t.vertices[t.root].kind == Kind::Beta);
  }
}

TEST_CASE("ill-formed trees are rejected") {
  Tree t = corolla_tree(Kind::Alpha, 2, 0);
  t.vertices[0].children = {-1, -1};
  CHECK_THROWS(check_well_formed(t));
}
