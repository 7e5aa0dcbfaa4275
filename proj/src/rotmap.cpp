#include "torustri/rotmap.hpp"

#include <algorithm>
#include <array>
#include <queue>

#include "json.hpp"

namespace torustri {

RotMap RotMap::build(const std::vector<std::pair<int, int>>& table,
                     std::optional<int> declared_genus) {
  const int H = static_cast<int>(table.size());
  RotMap m;
  m.twin_.resize(H);
  m.next_.resize(H);
  for (int h = 0; h < H; ++h) {
    m.twin_[h] = table[h].first;
    m.next_[h] = table[h].second;
  }
  // validate twin
  for (int h = 0; h < H; ++h) {
    int t = m.twin_[h];
    if (t == kNoTwin) continue;
    if (t < 0 || t >= H || t == h || m.twin_[t] != h) throw NonInvolutionTwin();
  }
  // validate permutation
  std::vector<int> seen(H, 0);
  for (int h = 0; h < H; ++h) {
    int nx = m.next_[h];
    if (nx < 0 || nx >= H || seen[nx]++) throw BrokenPermutation();
  }
  m.prev_.resize(H);
  for (int h = 0; h < H; ++h) m.prev_[m.next_[h]] = h;
  m.compute_orbits();
  if (declared_genus && *declared_genus != m.genus_) throw GenusMismatch(*declared_genus, m.genus_);
  return m;
}

void RotMap::compute_orbits() {
  const int H = num_half_edges();
  vertex_.assign(H, -1);
  vertex_first_.clear();
  vertex_degree_.clear();
  for (int h = 0; h < H; ++h) {
    if (vertex_[h] != -1) continue;
    int v = static_cast<int>(vertex_first_.size());
    vertex_first_.push_back(h);
    int deg = 0;
    for (int x = h; vertex_[x] == -1; x = next_[x]) {
      vertex_[x] = v;
      ++deg;
    }
    vertex_degree_.push_back(deg);
  }
  face_.assign(H, -1);
  face_first_.clear();
  for (int h = 0; h < H; ++h) {
    if (face_[h] != -1) continue;
    int f = static_cast<int>(face_first_.size());
    face_first_.push_back(h);
    for (int x = h; face_[x] == -1; x = phi(x)) face_[x] = f;
  }
  edge_id_.assign(H, -1);
  edge_half_.clear();
  num_edges_ = 0;
  num_stems_ = 0;
  for (int h = 0; h < H; ++h) {
    if (twin_[h] == kNoTwin) {
      ++num_stems_;
    } else if (h < twin_[h]) {
      edge_id_[h] = edge_id_[twin_[h]] = num_edges_;
      edge_half_.push_back(h);
      ++num_edges_;
    }
  }
  // V - E + F = 2 - 2g per connected component; for a single component:
  int euler = num_vertices() - num_edges_ + num_faces();
  genus_ = (2 - euler) / 2;
}

std::vector<int> RotMap::face_orbit(int h) const {
  std::vector<int> orbit;
  int x = h;
  do {
    orbit.push_back(x);
    x = phi(x);
  } while (x != h);
  return orbit;
}

std::vector<std::vector<int>> RotMap::faces() const {
  std::vector<std::vector<int>> out(num_faces());
  for (int f = 0; f < num_faces(); ++f) out[f] = face_orbit(face_first_[f]);
  return out;
}

std::vector<int> RotMap::vertex_orbit(int h) const {
  std::vector<int> orbit;
  int x = h;
  do {
    orbit.push_back(x);
    x = next_[x];
  } while (x != h);
  return orbit;
}

bool RotMap::connected() const {
  if (num_vertices() == 0) return true;
  std::vector<char> vis(num_vertices(), 0);
  std::queue<int> q;
  q.push(0);
  vis[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int h : vertex_orbit(vertex_first_[v])) {
      if (twin_[h] == kNoTwin) continue;
      int u = vertex_[twin_[h]];
      if (!vis[u]) {
        vis[u] = 1;
        ++count;
        q.push(u);
      }
    }
  }
  return count == num_vertices();
}

std::vector<std::array<long long, 2>> RotMap::homology_labels() const {
  if (!connected()) throw Disconnected();
  const int E = num_edges_;
  const int V = num_vertices();
  const int F = num_faces();
  // Spanning tree over vertices (BFS on edges).
  std::vector<char> in_tree(E, 0);
  std::vector<char> vis(V, 0);
  std::queue<int> q;
  if (V > 0) {
    vis[0] = 1;
    q.push(0);
  }
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int h : vertex_orbit(vertex_first_[v])) {
      if (twin_[h] == kNoTwin) continue;
      int u = vertex_[twin_[h]];
      if (!vis[u]) {
        vis[u] = 1;
        in_tree[edge_id_[h]] = 1;
        q.push(u);
      }
    }
  }
  // Dual spanning tree over faces using only cotree edges.
  std::vector<char> in_dual(E, 0);
  std::vector<char> fvis(F, 0);
  std::vector<int> parent_edge(F, -1);  // cotree edge linking face to dual parent
  std::vector<int> forder;
  std::queue<int> fq;
  fvis[0] = 1;
  fq.push(0);
  while (!fq.empty()) {
    int f = fq.front();
    fq.pop();
    forder.push_back(f);
    for (int h : face_orbit(face_first_[f])) {
      int e = edge_id_[h];
      if (e < 0 || in_tree[e] || in_dual[e]) continue;
      int g = face_[twin_[h]];
      if (!fvis[g]) {
        fvis[g] = 1;
        in_dual[e] = 1;
        parent_edge[g] = e;
        fq.push(g);
      }
    }
  }
  // Leftover edges are the homology generators; there must be 2g of them.
  std::vector<std::array<long long, 2>> label(E, {0, 0});
  int gen = 0;
  for (int e = 0; e < E; ++e) {
    if (in_tree[e] || in_dual[e]) continue;
    if (gen == 0)
      label[e] = {1, 0};
    else if (gen == 1)
      label[e] = {0, 1};
    ++gen;
  }
  if (gen != 2 * genus_)
    throw MapError("tree-cotree decomposition left " + std::to_string(gen) + " generators");
  // Peel dual-tree faces from the leaves: the parent edge of each face is the
  // unique unknown in that face's boundary sum.
  for (auto it = forder.rbegin(); it != forder.rend(); ++it) {
    int f = *it;
    int pe = parent_edge[f];
    if (pe < 0) continue;
    std::array<long long, 2> sum = {0, 0};
    long long coeff = 0;  // signed multiplicity of pe around this face
    for (int h : face_orbit(face_first_[f])) {
      int e = edge_id_[h];
      if (e < 0) continue;
      long long sgn = (h == edge_half_[e]) ? 1 : -1;
      if (e == pe) {
        coeff += sgn;
      } else {
        sum[0] += sgn * label[e][0];
        sum[1] += sgn * label[e][1];
      }
    }
    if (coeff == 0) throw MapError("degenerate dual tree edge");
    if ((sum[0] % coeff) || (sum[1] % coeff)) throw MapError("non-integral homology solve");
    label[pe] = {-sum[0] / coeff, -sum[1] / coeff};
  }
  return label;
}

bool RotMap::is_essentially_simple() const {
  if (genus_ != 1) throw NotGenusOne();
  auto lab = homology_labels();
  for (int e = 0; e < num_edges_; ++e) {
    int h = edge_half_[e];
    int u = vertex_[h], v = vertex_[twin_[h]];
    if (u == v && lab[e][0] == 0 && lab[e][1] == 0) return false;  // contractible loop
  }
  for (int e = 0; e < num_edges_; ++e) {
    int h = edge_half_[e];
    int u = vertex_[h], v = vertex_[twin_[h]];
    for (int e2 = e + 1; e2 < num_edges_; ++e2) {
      int h2 = edge_half_[e2];
      int u2 = vertex_[h2], v2 = vertex_[twin_[h2]];
      std::array<long long, 2> l1 = lab[e], l2 = lab[e2];
      bool parallel = false;
      if (u == u2 && v == v2) {
        parallel = true;
      } else if (u == v2 && v == u2) {
        l2 = {-l2[0], -l2[1]};
        parallel = u != v;  // aligned loops already covered by the first form
      }
      if (u == v && u2 == v2 && u == u2) parallel = true;  // two loops at the same vertex
      if (!parallel) continue;
      if (u == v) {
        // loops at the same vertex: homotopic iff labels agree up to sign
        if ((l1 == l2) || (l1[0] == -l2[0] && l1[1] == -l2[1])) return false;
      } else if (l1 == l2) {
        return false;
      }
    }
  }
  return true;
}

std::string RotMap::to_json(std::optional<int> root) const {
  nlohmann::json j;
  j["genus"] = genus_;
  auto arr = nlohmann::json::array();
  for (int h = 0; h < num_half_edges(); ++h) {
    nlohmann::json he;
    he["id"] = h;
    if (twin_[h] == kNoTwin)
      he["twin"] = nullptr;
    else
      he["twin"] = twin_[h];
    he["next_ccw"] = next_[h];
    arr.push_back(he);
  }
  j["half_edges"] = arr;
  if (root)
    j["root_half_edge"] = *root;
  else
    j["root_half_edge"] = nullptr;
  return j.dump();
}

RotMap RotMap::from_json(const std::string& text, std::optional<int>* root_out) {
  auto j = nlohmann::json::parse(text);
  const auto& arr = j.at("half_edges");
  std::vector<std::pair<int, int>> table(arr.size());
  for (const auto& he : arr) {
    int id = he.at("id").get<int>();
    int tw = he.at("twin").is_null() ? kNoTwin : he.at("twin").get<int>();
    table.at(id) = {tw, he.at("next_ccw").get<int>()};
  }
  std::optional<int> genus;
  if (j.contains("genus")) genus = j["genus"].get<int>();
  if (root_out) {
    if (j.contains("root_half_edge") && !j["root_half_edge"].is_null())
      *root_out = j["root_half_edge"].get<int>();
    else
      *root_out = std::nullopt;
  }
  return build(table, genus);
}

}  // namespace torustri
