#pragma once

#include <string>
#include <vector>

namespace cylop {

enum class Color : int { Alpha = 0, Beta = 1 };

// Vertex kinds of 2-colored trees. Alpha and Beta vertices carry suspended
// cogenerators s x and have inputs and output of one color; Mixed vertices
// carry unsuspended x (inputs alpha, output beta). A Mixed vertex of arity 1
// is the trivial vertex 1^{ab}.
enum class Kind : int { Alpha = 0, Beta = 1, Mixed = 2 };

Color output_color(Kind k);
Color input_color(Kind k);
char kind_char(Kind k);

struct Vertex {
  Kind kind = Kind::Alpha;
  int gen = 0;                // basis index of the decoration in C(arity)
  std::vector<int> children;  // >= 0: vertex index, < 0: leaf labelled -entry

  int arity() const { return static_cast<int>(children.size()); }
  bool trivial() const { return kind == Kind::Mixed && children.size() == 1; }

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend bool operator<(const Vertex& a, const Vertex& b);
};

// A planar rooted tree with labelled leaves. Vertex order is the tensor
// order of the decorations. root < 0 denotes the bare leaf (the formal unit)
// whose only leaf carries label -root.
struct Tree {
  std::vector<Vertex> vertices;
  int root = -1;

  bool bare() const { return root < 0; }
  int arity() const;
  int num_vertices() const { return static_cast<int>(vertices.size()); }
  // Leaf labels in planar reading order.
  std::vector<int> reading_order() const;
  // Color of the leaf labelled i+1, for i = 0..arity-1.
  std::vector<Color> leaf_colors() const;
  Color output() const;
  int weight() const;
  std::string str() const;

  friend bool operator==(const Tree&, const Tree&) = default;
  friend bool operator<(const Tree& a, const Tree& b);
};

// Smallest leaf label above each vertex.
std::vector<int> min_leaves(const Tree& t);
// Re-indexes vertices into depth-first preorder of the current planar
// structure; order[new] = old index.
Tree to_preorder(const Tree& t, std::vector<int>* order = nullptr);
// Sorts every child list by minimum leaf and re-indexes into preorder.
// Decorations are left untouched (shape-level canonical form).
Tree canonical_shape(const Tree& t);
bool is_canonical(const Tree& t);
// Checks leaf bijection, child references and single-color inputs.
void check_well_formed(const Tree& t);

Tree corolla_tree(Kind kind, int arity, int gen);
Tree bare_leaf(int label = 1);
// A new root vertex over the given subtrees; bare subtrees are leaves.
// Subtree vertices are appended in order, so preorder inputs give a
// preorder result.
Tree join(Kind kind, int gen, const std::vector<Tree>& kids);

// Elementary insertion of inner at leaf `position` (1-based) of outer.
// Factor order: outer's vertices then inner's. Result is not canonicalized.
Tree graft(const Tree& outer, int position, const Tree& inner);
// Replaces every leaf label l by perm[l-1]+1.
Tree relabel_leaves(const Tree& t, const std::vector<int>& perm);
Tree recolor(const Tree& t, Kind from, Kind to);

// Isomorphism classes of 2-vertex trees on n leaves with both vertices of
// arity >= 2. Colored: Mixed root, Alpha upper vertex.
std::vector<Tree> enumerate_tree2(int n, bool colored);
// Pitchforks: a root with k children, each a vertex over one block of a set
// partition of the leaves. Colored: Beta root over Mixed vertices.
std::vector<Tree> enumerate_pitchforks(int n, int k, bool colored);

// All canonical shapes on leaves {labels} with every vertex of arity >= 2.
std::vector<Tree> enumerate_reduced_shapes(const std::vector<int>& labels, Kind kind);

}  // namespace cylop
