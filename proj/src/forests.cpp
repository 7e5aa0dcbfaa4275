#include "torustri/forests.hpp"

#include <algorithm>
#include <sstream>

namespace torustri {

int Forest::floor_of(int u) const {
  while (parent[u] != -1) u = parent[u];
  return u;
}

int Forest::depth(int u) const {
  int d = 1;
  while (parent[u] != -1) {
    u = parent[u];
    ++d;
  }
  return d;
}

void Forest::validate() const {
  if (tau < 1) throw ForestError("forest needs at least one tree");
  if (size() < tau + 1) throw ForestError("missing floors");
  for (int u = 0; u <= tau; ++u)
    if (parent[u] != -1) throw ForestError("floor with a parent");
  for (int u = tau + 1; u < size(); ++u) {
    int p = parent[u];
    if (p < 0 || p >= size()) throw ForestError("tree-vertex without parent");
    if (std::find(children[p].begin(), children[p].end(), u) == children[p].end())
      throw ForestError("parent/child mismatch");
  }
  if (!children[tau].empty()) throw ForestError("last floor must be childless");
  for (int u = 0; u < size(); ++u)
    for (int c : children[u])
      if (parent[c] != u) throw ForestError("child/parent mismatch");
}

void WellLabeledForest::validate() const {
  forest.validate();
  if (static_cast<int>(label.size()) != forest.size()) throw ForestError("label size mismatch");
  for (int u = 0; u < forest.size(); ++u) {
    if (forest.is_floor(u)) {
      if (label[u] != 0) throw ForestError("floor label must be 0");
      for (int c : forest.children[u])
        if (label[c] != -1) throw ForestError("floor child label must be -1");
    } else {
      stem_gaps(u);  // throws unless the window/nondecreasing conditions hold
    }
  }
}

std::vector<int> WellLabeledForest::stem_gaps(int u) const {
  if (forest.is_floor(u)) return {};
  const auto& ch = forest.children[u];
  int m = static_cast<int>(ch.size());
  std::vector<int> gaps(m + 1, 0);
  int prev = label[u] - 1;  // virtual right child
  for (int j = 0; j < m; ++j) {
    gaps[j] = label[ch[j]] - prev;
    prev = label[ch[j]];
  }
  gaps[m] = (label[u] + 1) - prev;  // up to the virtual left child
  int total = 0;
  for (int g : gaps) {
    if (g < 0) throw ForestError("sibling labels outside the well-labeled window");
    total += g;
  }
  if (total != 2) throw ForestError("tree-vertex must carry exactly 2 stems");
  return gaps;
}

ContourPair contour_pair(const WellLabeledForest& wf) {
  const Forest& f = wf.forest;
  ContourPair cp;
  std::vector<size_t> next_child(f.size(), 0);
  std::vector<int> depth(f.size()), fl(f.size());
  for (int u = 0; u < f.size(); ++u) {
    depth[u] = f.depth(u);
    fl[u] = f.floor_of(u);
  }
  int at = 0;
  while (true) {
    cp.vertex.push_back(at);
    cp.C.push_back((fl[at] + 1) - depth[at]);
    cp.L.push_back(wf.label[at]);
    if (next_child[at] < f.children[at].size()) {
      at = f.children[at][next_child[at]++];
    } else if (f.parent[at] != -1) {
      at = f.parent[at];
    } else if (at < f.tau) {
      at = at + 1;
    } else {
      break;
    }
  }
  return cp;
}

WellLabeledForest from_contour(const std::vector<int>& C, const std::vector<int>& L) {
  if (C.size() != L.size() || C.empty() || C[0] != 0 || L[0] != 0)
    throw ForestError("malformed contour: bad start");
  int tau = C.back();
  if (tau < 1) throw ForestError("malformed contour: endpoint");
  WellLabeledForest wf;
  Forest& f = wf.forest;
  f.tau = tau;
  f.parent.assign(tau + 1, -1);
  f.children.assign(tau + 1, {});
  wf.label.assign(tau + 1, 0);
  int at = 0;
  int floors_entered = 0;
  for (size_t i = 1; i < C.size(); ++i) {
    int d = C[i] - C[i - 1];
    if (d == -1) {
      int node = f.size();
      f.parent.push_back(at);
      f.children.push_back({});
      wf.label.push_back(L[i]);
      f.children[at].push_back(node);
      at = node;
    } else if (d == 1) {
      if (f.parent[at] != -1) {
        at = f.parent[at];
      } else {
        if (at != floors_entered || at >= tau)
          throw ForestError("malformed contour: floor walk");
        at = ++floors_entered;
      }
      if (L[i] != wf.label[at])
        throw ForestError("malformed contour: label changes on revisit");
    } else {
      throw ForestError("malformed contour: step not in {-1, +1}");
    }
  }
  if (at != tau) throw ForestError("malformed contour: does not end on the last floor");
  wf.validate();
  return wf;
}

BinaryWord encode_word(const WellLabeledForest& wf) {
  const Forest& f = wf.forest;
  std::vector<std::vector<int>> gaps(f.size());
  for (int u = f.tau + 1; u < f.size(); ++u) gaps[u] = wf.stem_gaps(u);
  BinaryWord b;
  struct Frame {
    int node;
    size_t child_idx;
  };
  std::vector<Frame> stack;
  stack.push_back({0, 0});
  while (!stack.empty()) {
    Frame& fr = stack.back();
    if (!f.is_floor(fr.node)) {
      for (int k = 0; k < gaps[fr.node][fr.child_idx]; ++k) b.bits.push_back(0);
    }
    if (fr.child_idx < f.children[fr.node].size()) {
      int c = f.children[fr.node][fr.child_idx++];
      b.bits.push_back(1);
      stack.push_back({c, 0});
    } else {
      int node = fr.node;
      stack.pop_back();
      if (f.is_floor(node)) {
        if (node < f.tau) {
          b.bits.push_back(0);  // outgoing floor-edge
          stack.push_back({node + 1, 0});
        }
      } else {
        b.bits.push_back(0);  // ingoing tree-edge
      }
    }
  }
  return b;
}

WellLabeledForest decode_word(const BinaryWord& b, long long rho, long long tau) {
  if (static_cast<long long>(b.size()) != 4 * rho + tau || b.count1() != rho ||
      tau < 1 || rho < 0)
    throw ForestError("word not in the class: counts");
  WellLabeledForest wf;
  Forest& f = wf.forest;
  f.tau = static_cast<int>(tau);
  f.parent.assign(tau + 1, -1);
  f.children.assign(tau + 1, {});
  wf.label.assign(tau + 1, 0);
  std::vector<std::vector<int>> stem_gap_of(tau + 1);  // grows with nodes
  struct Open {
    int node;
    int stems_seen;
  };
  std::vector<Open> stack;
  int floor = 0;
  for (auto bit : b.bits) {
    if (bit == 1) {
      int parent = stack.empty() ? floor : stack.back().node;
      int node = f.size();
      f.parent.push_back(parent);
      f.children.push_back({});
      wf.label.push_back(0);
      stem_gap_of.push_back({});
      f.children[parent].push_back(node);
      stack.push_back({node, 0});
    } else {
      if (!stack.empty()) {
        Open& top = stack.back();
        if (top.stems_seen < 2) {
          stem_gap_of[top.node].push_back(static_cast<int>(f.children[top.node].size()));
          ++top.stems_seen;
        } else {
          stack.pop_back();  // ingoing tree-edge
        }
      } else {
        if (floor >= tau) throw ForestError("word not in the class: floor overflow");
        ++floor;
      }
    }
  }
  if (!stack.empty() || floor != tau)
    throw ForestError("word not in the class: imbalance");
  // assign labels top-down: gap counts turn into sibling label increments
  for (int u = 0; u < f.size(); ++u) {
    const auto& ch = f.children[u];
    if (ch.empty()) continue;
    if (f.is_floor(u)) {
      for (int c : ch) wf.label[c] = -1;
    } else {
      std::vector<int> in_gap(ch.size() + 1, 0);
      for (int g : stem_gap_of[u]) in_gap[g]++;
      int cur = wf.label[u] - 1;
      for (size_t j = 0; j < ch.size(); ++j) {
        cur += in_gap[j];
        wf.label[ch[j]] = cur;
      }
    }
  }
  wf.validate();
  return wf;
}

Bignum count_forests(long long rho, long long tau) {
  if (rho < 0 || tau < 1) return 0;
  return binomial(4 * rho + tau, rho) * tau / (4 * rho + tau);
}

WellLabeledForest sample_uniform_forest(long long rho, long long tau, Philox& rng) {
  FirstPassageWalk w = sample_first_passage(rho, tau, rng);
  return decode_word(word_from_walk(w), rho, tau);
}

namespace {

// Geometric(3/4) on {0,1,2,...}: failures (prob 1/4 each) before success.
long long draw_geometric34(Philox& rng) {
  long long c = 0;
  while (rng.below(4) == 0) ++c;
  return c;
}

// NegativeBinomial(3, 3/4) == the size-biased law B of the paper.
long long draw_b(Philox& rng) {
  return draw_geometric34(rng) + draw_geometric34(rng) + draw_geometric34(rng);
}

}  // namespace

long long gw_floor_offspring(Philox& rng) { return draw_geometric34(rng); }
long long gw_tree_offspring(Philox& rng) { return draw_b(rng); }

WellLabeledForest sample_gw_forest(long long rho, long long tau, Philox& rng,
                                   long long max_attempts) {
  for (long long attempt = 0; attempt < max_attempts; ++attempt) {
    WellLabeledForest wf;
    Forest& f = wf.forest;
    f.tau = static_cast<int>(tau);
    f.parent.assign(tau + 1, -1);
    f.children.assign(tau + 1, {});
    wf.label.assign(tau + 1, 0);
    long long tree_vertices = 0;
    bool overflow = false;
    std::vector<int> todo;
    for (int fl = 0; fl < tau && !overflow; ++fl) {
      long long c = gw_floor_offspring(rng);
      for (long long i = 0; i < c; ++i) {
        int node = f.size();
        f.parent.push_back(fl);
        f.children.push_back({});
        wf.label.push_back(0);
        f.children[fl].push_back(node);
        todo.push_back(node);
        if (++tree_vertices > rho) {
          overflow = true;
          break;
        }
      }
    }
    while (!overflow && !todo.empty()) {
      int u = todo.back();
      todo.pop_back();
      long long c = gw_tree_offspring(rng);
      for (long long i = 0; i < c; ++i) {
        int node = f.size();
        f.parent.push_back(u);
        f.children.push_back({});
        wf.label.push_back(0);
        f.children[u].push_back(node);
        todo.push_back(node);
        if (++tree_vertices > rho) {
          overflow = true;
          break;
        }
      }
    }
    if (overflow || tree_vertices != rho) continue;
    // floor children are labeled -1 before their subtrees are labeled
    for (int fl = 0; fl <= f.tau; ++fl)
      for (int c : f.children[fl]) wf.label[c] = -1;
    // two stems per tree-vertex, uniform among the C(c+2, 2) placements
    for (int u = f.tau + 1; u < f.size(); ++u) {
      long long c = static_cast<long long>(f.children[u].size());
      long long pairs = (c + 1) * (c + 2) / 2;
      long long r = static_cast<long long>(rng.below(pairs));
      // unrank unordered pair 0 <= g1 <= g2 <= c
      long long g1 = 0;
      while (r >= c + 1 - g1) {
        r -= c + 1 - g1;
        ++g1;
      }
      long long g2 = g1 + r;
      std::vector<int> in_gap(c + 1, 0);
      in_gap[g1]++;
      in_gap[g2]++;
      int cur = wf.label[u] - 1;
      for (long long j = 0; j < c; ++j) {
        cur += in_gap[j];
        wf.label[f.children[u][j]] = cur;
      }
    }
    wf.validate();
    return wf;
  }
  throw ForestError("sample_gw_forest: rejection budget exceeded");
}

PermutationVector identity_permutations(const Forest& f) {
  PermutationVector p(f.size());
  for (int u = 0; u < f.size(); ++u) {
    p[u].resize(f.children[u].size());
    for (size_t i = 0; i < p[u].size(); ++i) p[u][i] = static_cast<int>(i);
  }
  return p;
}

PermutationVector random_permutations(const Forest& f, Philox& rng) {
  PermutationVector p = identity_permutations(f);
  for (int u = 0; u < f.size(); ++u)
    for (int i = static_cast<int>(p[u].size()) - 1; i > 0; --i)
      std::swap(p[u][i], p[u][rng.below(i + 1)]);
  return p;
}

WellLabeledForest symmetrize(const WellLabeledForest& wf, const PermutationVector& p,
                             SymmetrizeMode mode) {
  const Forest& f = wf.forest;
  if (static_cast<int>(p.size()) != f.size()) throw ForestError("bad permutation vector");
  for (int u = 0; u < f.size(); ++u) {
    if (p[u].size() != f.children[u].size()) throw ForestError("bad permutation length");
    std::vector<char> seen(p[u].size(), 0);
    for (int x : p[u]) {
      if (x < 0 || x >= static_cast<int>(p[u].size()) || seen[x])
        throw ForestError("entry is not a permutation");
      seen[x] = 1;
    }
  }
  WellLabeledForest out = wf;
  // permute children orders; edge labels either stay at positions (Partial)
  // or ride with the children (Complete)
  for (int u = 0; u < f.size(); ++u) {
    const auto& ch = f.children[u];
    size_t m = ch.size();
    if (m == 0) continue;
    std::vector<int> newch(m);
    for (size_t i = 0; i < m; ++i) newch[i] = ch[p[u][i]];
    out.forest.children[u] = newch;
    if (mode == SymmetrizeMode::Partial) {
      // child at position i takes the original position-i edge label
      for (size_t i = 0; i < m; ++i)
        out.label[newch[i]] = wf.label[ch[i]];
    }
    // Complete: labels already ride with the nodes
  }
  // re-anchor: labels are defined via parent chains, so recompute node labels
  // from edge increments root-down (labels of deeper nodes must follow their
  // possibly-relabeled parents)
  std::vector<int> edge_inc(f.size(), 0);
  for (int u = 0; u < f.size(); ++u)
    if (f.parent[u] != -1) edge_inc[u] = out.label[u] - wf.label[f.parent[u]];
  WellLabeledForest fixed = out;
  std::vector<int> order;
  order.reserve(f.size());
  for (int u = 0; u < f.size(); ++u) order.push_back(u);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return f.depth(a) < f.depth(b); });
  for (int u : order) {
    int pu = out.forest.parent[u];
    if (pu == -1)
      fixed.label[u] = 0;
    else
      fixed.label[u] = fixed.label[pu] + edge_inc[u];
  }
  if (mode == SymmetrizeMode::Partial) fixed.validate();
  return fixed;
}

std::string forest_to_text(const WellLabeledForest& wf) {
  ContourPair cp = contour_pair(wf);
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < cp.C.size(); ++i) os << (i ? " " : "") << cp.C[i];
  os << ")\n(";
  for (size_t i = 0; i < cp.L.size(); ++i) os << (i ? " " : "") << cp.L[i];
  os << ")\n";
  return os.str();
}

WellLabeledForest forest_from_text(const std::string& text) {
  auto parse_line = [](const std::string& line) {
    std::vector<int> out;
    std::string inner = line;
    auto l = inner.find('(');
    auto r = inner.rfind(')');
    if (l == std::string::npos || r == std::string::npos || r < l)
      throw ForestError("bad forest text");
    std::istringstream is(inner.substr(l + 1, r - l - 1));
    int x;
    while (is >> x) out.push_back(x);
    return out;
  };
  std::istringstream is(text);
  std::string line1, line2;
  if (!std::getline(is, line1) || !std::getline(is, line2))
    throw ForestError("bad forest text");
  return from_contour(parse_line(line1), parse_line(line2));
}

}  // namespace torustri
