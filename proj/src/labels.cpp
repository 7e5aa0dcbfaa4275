#include "torustri/labels.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace torustri {

LabelTable compute_labels(const LabeledTriangulation& g) {
  LabelTable t;
  const int H = g.g.num_half_edges();
  int ell = 0;
  for (int h = 0; h < H; ++h) ell = std::max(ell, g.angle_ancestor[h]);
  t.lambda_A.assign(ell + 1, 0);
  t.vertex_A.assign(ell + 1, -1);
  for (int h = 0; h < H; ++h) {
    int i = g.angle_ancestor[h];
    t.lambda_A[i] = g.lambda[h];
    t.vertex_A[i] = g.g.vertex_of(h);
  }
  t.sep_stem.assign(ell, 0);
  for (int i = 0; i < ell; ++i) t.sep_stem[i] = t.lambda_A[i + 1] > t.lambda_A[i];
  const int V = g.g.num_vertices();
  t.m.assign(V, INT32_MAX);
  t.M.assign(V, INT32_MIN);
  t.b.assign(V, INT32_MAX);
  for (int i = 0; i <= ell; ++i) {
    int v = t.vertex_A[i];
    t.m[v] = std::min(t.m[v], t.lambda_A[i]);
    t.M[v] = std::max(t.M[v], t.lambda_A[i]);
    t.b[v] = std::min(t.b[v], i);
  }
  return t;
}

int mbar(const LabelTable& t, int u, int v) {
  int lo = std::min(t.b[u], t.b[v]), hi = std::max(t.b[u], t.b[v]);
  int best = INT32_MAX;
  for (int i = lo; i <= hi; ++i) best = std::min(best, t.lambda_A[i]);
  return best;
}

std::vector<EdgeClass> classify_edges(const UnicellularMap& t) {
  const RotMap& m = t.map;
  std::vector<EdgeClass> cls(m.num_edges(), EdgeClass::Normal);
  std::vector<char> proper_vertex(m.num_vertices(), 0);
  std::vector<char> proper_edge(m.num_edges(), 0);
  for (const Cycle& c : t.cycles()) {
    for (int h : c) {
      proper_edge[m.edge_id(h)] = 1;
      proper_vertex[m.vertex_of(h)] = 1;
      proper_vertex[m.vertex_of(m.twin(h))] = 1;
    }
  }
  for (int e = 0; e < m.num_edges(); ++e)
    if (proper_edge[e]) cls[e] = EdgeClass::Proper;
  // root path: unique tree path from the root vertex to the nearest proper
  // vertex through non-proper edges
  if (!t.root_angle) throw MissingRoot();
  int v0 = m.vertex_of(*t.root_angle);
  if (!proper_vertex[v0]) {
    std::vector<int> parent_half(m.num_vertices(), -1);
    std::vector<char> vis(m.num_vertices(), 0);
    std::queue<int> q;
    q.push(v0);
    vis[v0] = 1;
    int hit = -1;
    while (!q.empty() && hit < 0) {
      int v = q.front();
      q.pop();
      for (int h : m.vertex_orbit(m.vertex_rep(v))) {
        if (m.is_stem(h) || proper_edge[m.edge_id(h)]) continue;
        int u = m.vertex_of(m.twin(h));
        if (vis[u]) continue;
        vis[u] = 1;
        parent_half[u] = h;
        if (proper_vertex[u]) {
          hit = u;
          break;
        }
        q.push(u);
      }
    }
    if (hit < 0) throw UnclassifiedEdge();
    for (int v = hit; v != v0;) {
      int h = parent_half[v];
      cls[m.edge_id(h)] = EdgeClass::RootPath;
      v = m.vertex_of(h);
    }
  }
  return cls;
}

std::pair<int, int> edge_label_variation(const UnicellularMap& t, const LabelTable& lt,
                                         int edge) {
  // positions of the two sides of the edge in the clockwise angle walk
  if (!t.root_angle) throw MissingRoot();
  auto [gmap, r] = with_root_half_edge(t);
  AngleSequence seq = clockwise_angles(gmap, r);
  int h_v = -1, h_u = -1;  // first- and second-met sides
  for (size_t k = 0; k < seq.separator_half.size(); ++k) {
    int h = seq.separator_half[k];
    if (gmap.is_stem(h)) continue;
    if (t.map.edge_id(h) != edge) continue;
    if (h_v == -1) {
      h_v = static_cast<int>(k);
    } else {
      h_u = static_cast<int>(k);
      break;
    }
  }
  if (h_u == -1) throw UnclassifiedEdge();
  // separator k sits between angles k and k+1; first side is traversed from v
  int i = h_v, j = h_u;
  return {lt.lambda_A[j + 1] - lt.lambda_A[i], lt.lambda_A[i + 1] - lt.lambda_A[j]};
}

std::vector<int> bfs_distances(const RotMap& g, int source) {
  std::vector<int> dist(g.num_vertices(), -1);
  std::queue<int> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int h : g.vertex_orbit(g.vertex_rep(v))) {
      if (g.is_stem(h)) continue;
      int u = g.vertex_of(g.twin(h));
      if (dist[u] == -1) {
        dist[u] = dist[v] + 1;
        q.push(u);
      }
    }
  }
  return dist;
}

namespace {

// rightmost outgoing out-half after arriving at the head of `out_half`:
// the first outgoing half-edge counterclockwise after the reversed edge
int rightmost_next(const LabeledTriangulation& g, int out_half) {
  const RotMap& m = g.g;
  int in_h = m.twin(out_half);
  for (int x = m.next_ccw(in_h);; x = m.next_ccw(x)) {
    if (!m.is_stem(x) && g.orient.outgoing(m, x)) return x;
    if (x == in_h) throw MapError("vertex without outgoing edge");
  }
}

}  // namespace

std::vector<int> rightmost_cycle(const LabeledTriangulation& g, int out_half) {
  const RotMap& m = g.g;
  std::map<int, int> seen;  // half -> position
  std::vector<int> halves;
  int h = out_half;
  while (!seen.count(h)) {
    seen[h] = static_cast<int>(halves.size());
    halves.push_back(h);
    h = rightmost_next(g, h);
  }
  return std::vector<int>(halves.begin() + seen[h], halves.end());
}

RightmostWalk rightmost_walk(const LabeledTriangulation& g, int out_half) {
  const RotMap& m = g.g;
  const int v0 = g.root_vertex();
  RightmostWalk out;
  int h = out_half;
  out.walk_vertices.push_back(m.vertex_of(h));
  long long guard = 8LL * m.num_half_edges() + 64;
  while (true) {
    if (--guard < 0) throw MapError("rightmost walk does not reach the root");
    out.walk_halves.push_back(h);
    int w = m.vertex_of(m.twin(h));
    out.walk_vertices.push_back(w);
    if (w == v0) break;
    h = rightmost_next(g, h);
  }
  // pruning: repeatedly delete the span between the first repeated vertex's
  // first and last occurrences
  std::vector<int> pv = out.walk_vertices;
  std::vector<int> ph = out.walk_halves;
  while (true) {
    std::map<int, int> count;
    for (int v : pv) count[v]++;
    size_t i = 0;
    while (i < pv.size() && count[pv[i]] < 2) ++i;
    if (i == pv.size()) break;
    int v = pv[i];
    size_t mpos = i, Mpos = i;
    for (size_t k = 0; k < pv.size(); ++k)
      if (pv[k] == v) Mpos = k;
    std::vector<int> nv(pv.begin(), pv.begin() + mpos + 1);
    nv.insert(nv.end(), pv.begin() + Mpos + 1, pv.end());
    std::vector<int> nh(ph.begin(), ph.begin() + mpos);
    nh.insert(nh.end(), ph.begin() + Mpos, ph.end());
    pv = std::move(nv);
    ph = std::move(nh);
  }
  out.path_vertices = pv;
  out.path_halves = ph;
  // inner vertices with outgoing edges strictly on the right of P_R
  for (size_t i = 1; i + 1 < pv.size(); ++i) {
    int in_h = m.twin(ph[i - 1]);
    int out_h = ph[i];
    for (int x = m.next_ccw(in_h); x != out_h; x = m.next_ccw(x)) {
      if (!m.is_stem(x) && g.orient.outgoing(m, x)) {
        out.h_set.push_back(pv[i]);
        break;
      }
    }
  }
  return out;
}

std::optional<bool> contractible_disk_side(const RotMap& g,
                                           const std::vector<int>& cycle_halves) {
  auto lab = g.homology_labels();
  long long s0 = 0, s1 = 0;
  for (int h : cycle_halves) {
    int e = g.edge_id(h);
    int sgn = (h == g.edge_half(e)) ? 1 : -1;
    s0 += sgn * lab[e][0];
    s1 += sgn * lab[e][1];
  }
  if (s0 != 0 || s1 != 0) return std::nullopt;
  // flood faces on each side without crossing the cycle
  std::set<int> cyc_edges;
  for (int h : cycle_halves) cyc_edges.insert(g.edge_id(h));
  auto flood = [&](int start_face) {
    std::set<int> region;
    std::queue<int> q;
    region.insert(start_face);
    q.push(start_face);
    while (!q.empty()) {
      int f = q.front();
      q.pop();
      for (int h : g.face_orbit(g.face_rep(f))) {
        int e = g.edge_id(h);
        if (e < 0 || cyc_edges.count(e)) continue;
        int f2 = g.face_of(g.twin(h));
        if (!region.count(f2)) {
          region.insert(f2);
          q.push(f2);
        }
      }
    }
    return region;
  };
  auto euler = [&](const std::set<int>& region) {
    std::set<int> edges, verts;
    for (int f : region)
      for (int h : g.face_orbit(g.face_rep(f))) {
        if (g.edge_id(h) >= 0) edges.insert(g.edge_id(h));
        verts.insert(g.vertex_of(h));
      }
    return static_cast<long long>(verts.size()) - static_cast<long long>(edges.size()) +
           static_cast<long long>(region.size());
  };
  // left of a half-edge h is face_of(h) under the phi (ccw) convention
  int left_face = g.face_of(cycle_halves[0]);
  int right_face = g.face_of(g.twin(cycle_halves[0]));
  std::set<int> left_region = flood(left_face);
  if (!left_region.count(right_face) && euler(left_region) == 1) return true;
  std::set<int> right_region = flood(right_face);
  if (!right_region.count(left_face) && euler(right_region) == 1) return false;
  // cycle is null-homologous but one flood swallowed everything: corrupt
  throw MapError("null-homologous cycle without a disk side");
}

int disk_leaving_edges(const LabeledTriangulation& g, const std::vector<int>& cycle_halves,
                       bool disk_on_left) {
  const RotMap& m = g.g;
  const int L = static_cast<int>(cycle_halves.size());
  int y = 0;
  for (int i = 0; i < L; ++i) {
    int out_h = cycle_halves[i];
    int in_h = m.twin(cycle_halves[(i + L - 1) % L]);
    if (disk_on_left) {
      for (int x = m.next_ccw(out_h); x != in_h; x = m.next_ccw(x))
        if (!m.is_stem(x) && g.orient.outgoing(m, x)) ++y;
    } else {
      for (int x = m.next_ccw(in_h); x != out_h; x = m.next_ccw(x))
        if (!m.is_stem(x) && g.orient.outgoing(m, x)) ++y;
    }
  }
  return y;
}

std::string SubpathType::name() const {
  std::string s;
  s += leave;
  s += enter;
  s += '_';
  s += region;
  if (has_h) s += 'h';
  return s;
}

SubpathType classify_subpath_type(const LabeledTriangulation& g,
                                  const RightmostWalk& pr,
                                  const std::vector<int>& s_halves, int i, int j) {
  const RotMap& m = g.g;
  const auto& pv = pr.path_vertices;
  const auto& ph = pr.path_halves;
  const int k = static_cast<int>(pv.size()) - 1;
  if (s_halves.empty() || i >= j) throw MapError("degenerate subpath");
  SubpathType t{};
  // leaving side at u_i: is the first S-half in the right sector of P_R?
  auto right_sector = [&](int idx, int x_half) {
    // sector ccw strictly from twin(ph[idx-1]) to ph[idx]
    int in_h = m.twin(ph[idx - 1]);
    int out_h = ph[idx];
    for (int x = m.next_ccw(in_h); x != out_h; x = m.next_ccw(x))
      if (x == x_half) return true;
    return false;
  };
  if (i == 0) {
    t.leave = 'L';
  } else {
    t.leave = right_sector(i, s_halves.front()) ? 'R' : 'L';
  }
  if (j == k) {
    t.enter = 'L';
  } else {
    t.enter = right_sector(j, m.twin(s_halves.back())) ? 'R' : 'L';
  }
  // cycle C = S then P_R[i..j] reversed
  std::vector<int> cyc = s_halves;
  for (int x = j - 1; x >= i; --x) cyc.push_back(m.twin(ph[x]));
  auto side = contractible_disk_side(m, cyc);
  if (!side) {
    t.region = 'n';
  } else {
    t.region = *side ? 'l' : 'r';
  }
  std::set<int> hset(pr.h_set.begin(), pr.h_set.end());
  t.has_h = false;
  for (int h : cyc)
    if (hset.count(m.vertex_of(h))) t.has_h = true;
  static const std::map<std::string, int> kC = {
      {"LR_l", -2}, {"RR_l", 0},  {"RL_l", -3}, {"LL_l", -5},
      {"LR_r", 4},  {"RR_r", 6},  {"RL_r", 3},  {"LL_r", 1},
      {"LR_n", 1},  {"RR_n", 3},  {"RL_n", 0},  {"LL_n", -2},
      {"LR_lh", -10}, {"RR_lh", -8},  {"RL_lh", -11}, {"LL_lh", -13},
      {"LR_rh", -4},  {"RR_rh", -2},  {"RL_rh", -5},  {"LL_rh", -7},
      {"LR_nh", -3},  {"RR_nh", -1},  {"RL_nh", -4},  {"LL_nh", -6}};
  t.c = kC.at(t.name());
  return t;
}

std::vector<int> shortest_path_max_common(const LabeledTriangulation& g, int u,
                                          const RightmostWalk& pr) {
  const RotMap& m = g.g;
  const int v0 = g.root_vertex();
  std::vector<int> dist = bfs_distances(m, v0);
  std::set<long long> pr_edges;
  for (int h : pr.path_halves) {
    int e = m.edge_id(h);
    pr_edges.insert(e);
  }
  // DP over the shortest-path DAG from u toward v0, maximizing common edges
  std::vector<int> order;
  for (int v = 0; v < m.num_vertices(); ++v) order.push_back(v);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return dist[a] < dist[b]; });
  std::vector<long long> best(m.num_vertices(), -1);
  std::vector<int> via(m.num_vertices(), -1);  // half-edge toward v0
  best[v0] = 0;
  for (int v : order) {
    if (v == v0 || dist[v] < 0) continue;
    for (int h : m.vertex_orbit(m.vertex_rep(v))) {
      if (m.is_stem(h)) continue;
      int w = m.vertex_of(m.twin(h));
      if (dist[w] != dist[v] - 1 || best[w] < 0) continue;
      long long cand = best[w] + (pr_edges.count(m.edge_id(h)) ? 1 : 0);
      if (cand > best[v]) {
        best[v] = cand;
        via[v] = h;
      }
    }
  }
  std::vector<int> path;
  for (int v = u; v != v0; v = m.vertex_of(m.twin(via[v]))) path.push_back(v);
  path.push_back(v0);
  return path;
}

// --- closure output verification ---

ClosureReport verify_closure_output(const LabeledTriangulation& g) {
  ClosureReport rep;
  const RotMap& m = g.g;
  const int n = m.num_vertices();
  auto fault = [&](const std::string& s) { rep.violations.push_back(s); };
  if (m.num_edges() != 3 * n) fault("edge count is not 3n");
  if (m.num_faces() != 2 * n) fault("face count is not 2n");
  for (const auto& face : m.faces()) {
    int deg = 0;
    for (int h : face)
      if (!m.is_stem(h)) ++deg;
    if (deg != 3) fault("face of degree != 3");
  }
  try {
    if (!m.is_essentially_simple()) fault("not essentially simple");
  } catch (const MapError& e) {
    fault(std::string("simplicity check failed: ") + e.what());
  }
  std::vector<int> outdeg(n, 0);
  for (int h = 0; h < m.num_half_edges(); ++h)
    if (!m.is_stem(h) && g.orient.outgoing(m, h)) outdeg[m.vertex_of(h)]++;
  for (int v = 0; v < n; ++v)
    if (outdeg[v] != 3) fault("vertex with outdegree != 3");
  // gamma = 0 on two independent non-contractible cycles (tree path + each
  // homology generator)
  try {
    auto lab = m.homology_labels();
    std::vector<int> parent_half(n, -1);
    std::vector<int> dist = bfs_distances(m, 0);
    std::vector<char> vis(n, 0);
    std::queue<int> q;
    q.push(0);
    vis[0] = 1;
    std::vector<char> in_tree(m.num_edges(), 0);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int h : m.vertex_orbit(m.vertex_rep(v))) {
        if (m.is_stem(h)) continue;
        int w = m.vertex_of(m.twin(h));
        if (!vis[w]) {
          vis[w] = 1;
          parent_half[w] = h;
          in_tree[m.edge_id(h)] = 1;
          q.push(w);
        }
      }
    }
    int found = 0;
    for (int e = 0; e < m.num_edges() && found < 2; ++e) {
      if (in_tree[e]) continue;
      if (lab[e][0] == 0 && lab[e][1] == 0) continue;
      // build the cycle tree-path + e as directed halves
      int h = m.edge_half(e);
      int a = m.vertex_of(h), b = m.vertex_of(m.twin(h));
      // path b -> a through the tree
      std::vector<int> up_b, up_a;
      {
        std::vector<char> on_b(n, 0);
        for (int v = b;; v = m.vertex_of(parent_half[v])) {
          on_b[v] = 1;
          if (parent_half[v] == -1) break;
        }
        int meet = a;
        while (!on_b[meet]) meet = m.vertex_of(parent_half[meet]);
        for (int v = b; v != meet; v = m.vertex_of(parent_half[v]))
          up_b.push_back(m.twin(parent_half[v]));  // step v -> parent
        for (int v = a; v != meet; v = m.vertex_of(parent_half[v]))
          up_a.push_back(parent_half[v]);  // will be reversed: parent -> v
      }
      std::vector<int> cyc;
      cyc.push_back(h);  // a -> b
      for (int x : up_b) cyc.push_back(x);
      for (auto it = up_a.rbegin(); it != up_a.rend(); ++it) cyc.push_back(*it);
      // cycle may repeat vertices only at the meet point; it is a simple
      // cycle by construction (tree paths up to the meet)
      // gamma over the directed cycle
      int right = 0, left = 0;
      const int L = static_cast<int>(cyc.size());
      bool ok = true;
      for (int ii = 0; ii < L; ++ii) {
        int out_h = cyc[ii];
        int in_h = m.twin(cyc[(ii + L - 1) % L]);
        if (m.vertex_of(out_h) != m.vertex_of(in_h)) ok = false;
      }
      if (!ok) continue;
      for (int ii = 0; ii < L; ++ii) {
        int out_h = cyc[ii];
        int in_h = m.twin(cyc[(ii + L - 1) % L]);
        for (int x = m.next_ccw(in_h); x != out_h; x = m.next_ccw(x))
          if (!m.is_stem(x) && g.orient.outgoing(m, x)) ++right;
        for (int x = m.next_ccw(out_h); x != in_h; x = m.next_ccw(x))
          if (!m.is_stem(x) && g.orient.outgoing(m, x)) ++left;
      }
      if (right != left) fault("gamma nonzero on a non-contractible cycle");
      ++found;
    }
    if (found < 2) fault("could not find two independent cycles");
  } catch (const MapError& e) {
    fault(std::string("balance check failed: ") + e.what());
  }
  // rightmost walks end on the root triangle with its interior on the right
  try {
    const int root_face = m.face_of(g.root_half);
    for (int h = 0; h < m.num_half_edges(); ++h) {
      if (m.is_stem(h) || !g.orient.outgoing(m, h)) continue;
      std::vector<int> cyc = rightmost_cycle(g, h);
      if (cyc.size() != 3) {
        fault("rightmost walk does not end on a triangle");
        break;
      }
      auto side = contractible_disk_side(m, cyc);
      if (!side || *side) {
        fault("rightmost ending triangle does not bound a disk on its right");
        break;
      }
      // the disk on the right must contain the root face
      std::set<int> cyc_edges;
      for (int x : cyc) cyc_edges.insert(m.edge_id(x));
      std::set<int> region;
      std::queue<int> q;
      int start = m.face_of(m.twin(cyc[0]));
      region.insert(start);
      q.push(start);
      while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (int x : m.face_orbit(m.face_rep(f))) {
          int e = m.edge_id(x);
          if (e < 0 || cyc_edges.count(e)) continue;
          int f2 = m.face_of(m.twin(x));
          if (!region.count(f2)) {
            region.insert(f2);
            q.push(f2);
          }
        }
      }
      if (!region.count(root_face)) {
        fault("rightmost ending triangle does not contain the root face");
        break;
      }
    }
  } catch (const MapError& e) {
    fault(std::string("rightmost check failed: ") + e.what());
  }
  return rep;
}

}  // namespace torustri
