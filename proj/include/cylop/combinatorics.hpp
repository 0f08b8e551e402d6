#pragma once

#include <vector>

namespace cylop {

// Permutations are 0-based: p[i] is the image of i.
using Perm = std::vector<int>;

Perm identity_perm(int n);
Perm inverse(const Perm& p);
// (p o q)[i] = p[q[i]]
Perm compose(const Perm& p, const Perm& q);
bool is_identity(const Perm& p);
// Swaps i and i+1.
Perm adjacent_transposition(int n, int i);
// All permutations of n in lexicographic order.
std::vector<Perm> all_perms(int n);
int perm_parity(const Perm& p);

// Set partitions of {0..n-1} into exactly k nonempty blocks; blocks are
// sorted and listed by their minima.
std::vector<std::vector<std::vector<int>>> set_partitions(int n, int k);
// All set partitions with at least `min_blocks` blocks.
std::vector<std::vector<std::vector<int>>> set_partitions_at_least(int n, int min_blocks);
// Subsets of {0..n-1} of size in [lo, hi], each sorted; deterministic order.
std::vector<std::vector<int>> subsets(int n, int lo, int hi);
// (p, m-p)-unshuffles: increasing first p entries and increasing rest.
std::vector<Perm> unshuffles(int m, int p);

long long factorial(int n);
long long stirling2(int n, int k);

}  // namespace cylop
