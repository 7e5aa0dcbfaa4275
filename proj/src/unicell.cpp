#include "torustri/unicell.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace torustri {

bool UnicellularMap::is_unicellular() const {
  return map.num_faces() == 1 && map.genus() == 1 &&
         map.num_edges() == map.num_vertices() + 1;
}

namespace {

// graph degrees ignoring stems; loops count twice
std::vector<int> edge_degrees(const RotMap& m) {
  std::vector<int> deg(m.num_vertices(), 0);
  for (int h = 0; h < m.num_half_edges(); ++h)
    if (!m.is_stem(h)) deg[m.vertex_of(h)]++;
  return deg;
}

// 2-core vertex mask (strip degree<=1 vertices iteratively)
std::vector<char> core_mask(const RotMap& m) {
  std::vector<int> deg = edge_degrees(m);
  std::vector<char> alive(m.num_vertices(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < m.num_vertices(); ++v) {
      if (alive[v] && deg[v] <= 1) {
        alive[v] = 0;
        changed = true;
        for (int h : m.vertex_orbit(m.vertex_rep(v))) {
          if (m.is_stem(h)) continue;
          int u = m.vertex_of(m.twin(h));
          if (alive[u]) deg[u]--;
        }
        deg[v] = 0;
      }
    }
  }
  return alive;
}

}  // namespace

std::vector<int> UnicellularMap::special_vertices() const {
  auto alive = core_mask(map);
  std::vector<int> deg(map.num_vertices(), 0);
  for (int h = 0; h < map.num_half_edges(); ++h) {
    if (map.is_stem(h)) continue;
    int v = map.vertex_of(h), u = map.vertex_of(map.twin(h));
    if (alive[v] && alive[u]) deg[v]++;
  }
  std::vector<int> out;
  for (int v = 0; v < map.num_vertices(); ++v)
    if (alive[v] && deg[v] >= 3) out.push_back(v);
  return out;
}

Shape UnicellularMap::shape() const {
  auto sp = special_vertices();
  if (sp.size() == 1) return Shape::Square;
  if (sp.size() == 2) return Shape::Hexagonal;
  throw NotUnicellular();
}

std::vector<Cycle> UnicellularMap::cycles() const {
  auto alive = core_mask(map);
  std::vector<int> sp = special_vertices();
  std::set<int> special(sp.begin(), sp.end());
  // chains: maximal core paths between special vertices
  auto core_edge = [&](int h) {
    return !map.is_stem(h) && alive[map.vertex_of(h)] && alive[map.vertex_of(map.twin(h))];
  };
  std::vector<Cycle> chains;
  std::set<int> used;  // starting half-edges already consumed
  for (int v : sp) {
    for (int h0 : map.vertex_orbit(map.vertex_rep(v))) {
      if (!core_edge(h0) || used.count(h0)) continue;
      Cycle chain;
      int h = h0;
      while (true) {
        chain.push_back(h);
        int u = map.vertex_of(map.twin(h));
        if (special.count(u)) break;
        // inner chain vertex: continue along the other core port
        int next = -1;
        for (int x : map.vertex_orbit(map.twin(h))) {
          if (x != map.twin(h) && core_edge(x)) {
            next = x;
            break;
          }
        }
        if (next == -1) throw NotUnicellular();
        h = next;
      }
      used.insert(h0);
      used.insert(map.twin(chain.back()));
      chains.push_back(chain);
    }
  }
  if (special.size() == 1) {
    if (chains.size() != 2) throw NotUnicellular();
    return chains;  // each loop chain is a cycle
  }
  if (special.size() != 2 || chains.size() != 3) throw NotUnicellular();
  for (const Cycle& c : chains)
    if (map.vertex_of(c.front()) == map.vertex_of(map.twin(c.back())))
      throw NotUnicellular();  // loop chain: not a theta core
  // hexagonal: cycles are W_i followed by reversed W_j
  std::vector<Cycle> out;
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = i + 1; j < 3; ++j) {
      Cycle c = chains[i];
      const Cycle& wj = chains[j];
      // append W_j reversed; align endpoints (both chains run special->special)
      bool same_start = map.vertex_of(chains[i][0]) == map.vertex_of(wj[0]);
      if (same_start) {
        for (auto it = wj.rbegin(); it != wj.rend(); ++it) c.push_back(map.twin(*it));
      } else {
        for (int h : wj) c.push_back(h);
      }
      out.push_back(c);
    }
  }
  return out;
}

bool UnicellularMap::stem_degrees_ok(bool rooted) const {
  if (!is_unicellular()) return false;
  std::vector<int> stems(map.num_vertices(), 0);
  for (int h = 0; h < map.num_half_edges(); ++h)
    if (map.is_stem(h)) stems[map.vertex_of(h)]++;
  std::vector<int> sp = special_vertices();
  std::set<int> special(sp.begin(), sp.end());
  bool hex = sp.size() == 2;
  if (!hex && sp.size() != 1) return false;
  int root_vertex = -1;
  if (rooted) {
    if (!root_angle) return false;
    int ra = *root_angle;
    if (!map.is_stem(map.next_ccw(ra))) return false;  // root stem just after
    root_vertex = map.vertex_of(ra);
  }
  for (int v = 0; v < map.num_vertices(); ++v) {
    int want = special.count(v) ? (hex ? 1 : 0) : 2;
    if (v == root_vertex) want += 1;
    if (stems[v] != want) return false;
  }
  return true;
}

void UnicellularMap::validate(bool rooted) const {
  if (!is_unicellular()) throw NotUnicellular();
  if (!stem_degrees_ok(rooted)) throw MapError("stem degree rules violated");
}

AngleSequence clockwise_angles(const RotMap& m, int start_angle) {
  AngleSequence seq;
  const int H = m.num_half_edges();
  seq.angles.reserve(H);
  seq.angles.push_back(start_angle);
  int item = m.alpha(start_angle);  // the item whose crossing is start_angle
  for (int i = 1; i < H; ++i) {
    item = m.phi(item);
    seq.separator_half.push_back(item);
    seq.separator_is_stem.push_back(m.is_stem(item));
    seq.angles.push_back(m.alpha(item));
  }
  return seq;
}

CanonicalOrientation canonical_orientation(const UnicellularMap& t) {
  if (!t.root_angle) throw MissingRoot();
  CanonicalOrientation o;
  o.out_half.assign(t.map.num_edges(), -1);
  AngleSequence seq = clockwise_angles(t.map, *t.root_angle);
  for (int h : seq.separator_half) {
    if (t.map.is_stem(h)) continue;
    int e = t.map.edge_id(h);
    if (o.out_half[e] == -1) o.out_half[e] = t.map.twin(h);
  }
  return o;
}

int gamma(const UnicellularMap& u, const Cycle& cycle, GammaMode mode,
          const CanonicalOrientation* orient) {
  const RotMap& m = u.map;
  if (cycle.empty()) throw NotACycleOfMap();
  if (mode == GammaMode::EdgesAndStems && orient == nullptr)
    throw MapError("EdgesAndStems gamma needs an orientation");
  auto counts = [&](int x) {
    if (m.is_stem(x)) return true;
    if (mode == GammaMode::StemsOnly) return false;
    return orient->outgoing(m, x);
  };
  int right = 0, left = 0;
  const int L = static_cast<int>(cycle.size());
  for (int i = 0; i < L; ++i) {
    int out_h = cycle[i];
    int in_h = m.twin(cycle[(i + L - 1) % L]);
    if (m.vertex_of(out_h) != m.vertex_of(in_h)) throw NotACycleOfMap();
    // right sector: strictly ccw from in_h to out_h
    for (int x = m.next_ccw(in_h); x != out_h; x = m.next_ccw(x))
      if (counts(x)) ++right;
    // left sector: strictly ccw from out_h to in_h
    for (int x = m.next_ccw(out_h); x != in_h; x = m.next_ccw(x))
      if (counts(x)) ++left;
  }
  return right - left;
}

bool is_balanced(const UnicellularMap& u) {
  std::optional<CanonicalOrientation> orient;
  GammaMode mode = GammaMode::StemsOnly;
  if (u.root_angle) {
    orient = canonical_orientation(u);
    mode = GammaMode::EdgesAndStems;
  }
  for (const Cycle& c : u.cycles()) {
    if (gamma(u, c, mode, orient ? &*orient : nullptr) != 0) return false;
  }
  return true;
}

UnicellularMap strip_root(const UnicellularMap& t) {
  if (!t.root_angle) throw MissingRoot();
  const RotMap& m = t.map;
  int stem = m.next_ccw(*t.root_angle);
  if (!m.is_stem(stem)) throw MapError("root stem missing");
  // rebuild without the root stem
  std::vector<int> remap(m.num_half_edges(), -1);
  int id = 0;
  for (int h = 0; h < m.num_half_edges(); ++h)
    if (h != stem) remap[h] = id++;
  std::vector<std::pair<int, int>> table(id);
  for (int h = 0; h < m.num_half_edges(); ++h) {
    if (h == stem) continue;
    int nx = m.next_ccw(h);
    if (nx == stem) nx = m.next_ccw(stem);
    int tw = m.twin(h);
    table[remap[h]] = {tw == kNoTwin ? kNoTwin : remap[tw], remap[nx]};
  }
  UnicellularMap u;
  u.map = RotMap::build(table, 1);
  return u;
}

}  // namespace torustri
