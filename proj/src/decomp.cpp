#include "torustri/decomp.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"
#include "torustri/labels.hpp"

namespace torustri {

namespace {

const KernelSpec kSpecs[10] = {
    {0, 2, 0, 0, {0, 0, 0, 0, 0, 0}},
    {1, 3, 1, 0, {0, 0, 0, 1, 1, 0}},
    {2, 3, 1, 1, {0, 0, 0, 0, 1, 1}},
    {3, 3, 0, 0, {0, 1, 0, 0, 1, 0}},
    {4, 3, 0, -1, {0, 0, 1, 1, 0, 0}},
    {5, 3, 0, 0, {0, 0, 1, 0, 0, 1}},
    {6, 3, -1, -1, {0, 1, 1, 0, 0, 0}},
    {7, 3, 0, 0, {1, 0, 0, 1, 0, 0}},
    {8, 3, 0, 1, {1, 0, 0, 0, 0, 1}},
    {9, 3, -1, 0, {1, 1, 0, 0, 0, 0}},
};

}  // namespace

const KernelSpec& kernel_spec(int k) {
  if (k < 0 || k > 9) throw InconsistentParameters();
  return kSpecs[k];
}

long long ParameterVector::n() const {
  long long s = t() - 1;
  for (long long r : rho) s += r;
  for (int i = 0; i < t(); ++i) s += sigma[i];
  return s;
}

void ParameterVector::validate(int nn) const {
  const KernelSpec& spec = kernel_spec(k);
  const int tt = spec.t;
  if (static_cast<int>(rho.size()) != 2 * tt || static_cast<int>(tau.size()) != 2 * tt ||
      static_cast<int>(gamma.size()) != 2 * tt || static_cast<int>(sigma.size()) != 2 * tt)
    throw InconsistentParameters();
  for (int i = 0; i < 2 * tt; ++i)
    if (rho[i] < 0 || tau[i] < 1 || sigma[i] < 0) throw InconsistentParameters();
  for (int i = 0; i < tt; ++i) {
    if (sigma[i + tt] != sigma[i] || gamma[i + tt] != -gamma[i])
      throw InconsistentParameters();
    if (std::abs(gamma[i]) > sigma[i]) throw InconsistentParameters();
    if (tau[i] != 2 * sigma[i] + gamma[i] + spec.c[i] + 1) throw InconsistentParameters();
    if (tau[i + tt] != 2 * sigma[i] - gamma[i] + spec.c[i + tt] + 1)
      throw InconsistentParameters();
  }
  if (k == 0) {
    if (gamma[0] != 0 || gamma[1] != 0) throw InconsistentParameters();
  } else {
    if (gamma[0] + gamma[1] != spec.gamma12 || gamma[1] + gamma[2] != spec.gamma23)
      throw InconsistentParameters();
  }
  if (n() != nn) throw InconsistentParameters();
}

ParameterVector DecomposedMap::params() const {
  const KernelSpec& spec = kernel_spec(k);
  const int tt = spec.t;
  if (static_cast<int>(forests.size()) != 2 * tt || static_cast<int>(motzkin.size()) != tt)
    throw InconsistentParameters();
  ParameterVector p;
  p.k = k;
  p.rho.resize(2 * tt);
  p.tau.resize(2 * tt);
  p.gamma.resize(2 * tt);
  p.sigma.resize(2 * tt);
  for (int i = 0; i < 2 * tt; ++i) {
    p.rho[i] = forests[i].rho();
    p.tau[i] = forests[i].tau();
  }
  for (int i = 0; i < tt; ++i) {
    p.sigma[i] = p.sigma[i + tt] = motzkin[i].length();
    p.gamma[i] = motzkin[i].endpoint();
    p.gamma[i + tt] = -p.gamma[i];
  }
  return p;
}

namespace {

struct Builder {
  std::vector<std::vector<int>> rot;
  std::vector<int> twin;
  std::vector<int> vert;

  int new_vertex() {
    rot.push_back({});
    return static_cast<int>(rot.size()) - 1;
  }
  int new_half(int v) {
    twin.push_back(-2);
    vert.push_back(v);
    return static_cast<int>(twin.size()) - 1;
  }
  void pair(int a, int b) {
    twin[a] = b;
    twin[b] = a;
  }
  RotMap finish() const {
    std::vector<std::pair<int, int>> table(twin.size());
    for (size_t h = 0; h < twin.size(); ++h) {
      if (twin[h] == -2) throw InconsistentParameters();
      table[h].first = twin[h];
    }
    for (const auto& r : rot) {
      for (size_t i = 0; i < r.size(); ++i)
        table[r[i]].second = r[(i + 1) % r.size()];
      if (r.empty()) throw InconsistentParameters();
    }
    return RotMap::build(table, 1);
  }
};

// Builds the subtree of forest node u hanging at map vertex parent_v;
// returns the half-edge at parent_v. node_vertex records map vertices.
int build_tree(Builder& b, const WellLabeledForest& wf, int u, int parent_v,
               std::vector<int>& node_vertex) {
  int mv = b.new_vertex();
  node_vertex[u] = mv;
  int h_parent = b.new_half(parent_v);
  int h_self = b.new_half(mv);
  b.pair(h_parent, h_self);
  b.rot[mv].push_back(h_self);
  std::vector<int> gaps = wf.stem_gaps(u);
  const auto& ch = wf.forest.children[u];
  for (size_t j = 0; j <= ch.size(); ++j) {
    for (int s = 0; s < gaps[j]; ++s) {
      int st = b.new_half(mv);
      b.twin[st] = kNoTwin;
      b.rot[mv].push_back(st);
    }
    if (j < ch.size()) {
      int hc = build_tree(b, wf, ch[j], mv, node_vertex);
      b.rot[mv].push_back(hc);
    }
  }
  return h_parent;
}

// The per-part slot walk shared by assemble and decompose. For each part:
// floor 0 sits at the start special sector; a c-stem splits that sector;
// inner vertices contribute one slot after their edge plus one per stem.
struct PartPlan {
  int chain;          // 0-based chain index
  bool forward;       // sweeping along the chain direction (right side)
  int c;              // stem flag at the part's start angle
  std::vector<int> stems_at;  // per swept inner vertex, stems on this side
  long long tau() const {
    long long t = 1 + c;
    for (int s : stems_at) t += 1 + s;
    return t;
  }
};

std::vector<PartPlan> make_plans(const ParameterVector& p) {
  const KernelSpec& spec = kernel_spec(p.k);
  const int tt = spec.t;
  std::vector<PartPlan> plans(2 * tt);
  for (int part = 0; part < 2 * tt; ++part) {
    PartPlan& pl = plans[part];
    pl.chain = part % tt;
    pl.forward = part < tt;
    pl.c = spec.c[part];
    int sg = static_cast<int>(p.sigma[pl.chain]);
    pl.stems_at.resize(sg);
    (void)sg;
  }
  return plans;
}

}  // namespace

UnicellularMap assemble(const DecomposedMap& d, std::vector<std::vector<int>>* part_vertex) {
  ParameterVector p = d.params();
  const int n = static_cast<int>(p.n());
  p.validate(n);
  for (const auto& wf : d.forests) wf.validate();
  for (const auto& m : d.motzkin)
    if (!m.valid()) throw InconsistentParameters();
  const KernelSpec& spec = kernel_spec(d.k);
  const int tt = spec.t;
  const bool hex = d.k != 0;

  Builder b;
  // special vertices
  int v0 = b.new_vertex();
  int v1 = hex ? b.new_vertex() : v0;

  // chains: directions alternate; chain i runs start[i] -> end[i]
  std::vector<int> cstart(tt), cend(tt);
  if (hex) {
    for (int i = 0; i < tt; ++i) {
      cstart[i] = (i % 2 == 0) ? v0 : v1;
      cend[i] = (i % 2 == 0) ? v1 : v0;
    }
  } else {
    cstart = {v0, v0};
    cend = {v0, v0};
  }
  // per chain: inner vertices and the direction halves
  std::vector<std::vector<int>> inner(tt);
  struct ChainHalves {
    int start_half;                 // at start vertex
    int end_half;                   // at end vertex
    std::vector<int> in_half, out_half;  // per inner vertex
  };
  std::vector<ChainHalves> ch(tt);
  for (int i = 0; i < tt; ++i) {
    int sg = static_cast<int>(p.sigma[i]);
    inner[i].resize(sg);
    for (int j = 0; j < sg; ++j) inner[i][j] = b.new_vertex();
    ch[i].in_half.resize(sg);
    ch[i].out_half.resize(sg);
    int prev_v = cstart[i];
    int prev_half = b.new_half(prev_v);
    ch[i].start_half = prev_half;
    for (int j = 0; j < sg; ++j) {
      int hin = b.new_half(inner[i][j]);
      b.pair(prev_half, hin);
      ch[i].in_half[j] = hin;
      prev_half = b.new_half(inner[i][j]);
      ch[i].out_half[j] = prev_half;
    }
    int hend = b.new_half(cend[i]);
    b.pair(prev_half, hend);
    ch[i].end_half = hend;
  }

  // content lists: per inner vertex two sides, per special sector one list
  std::vector<std::vector<std::vector<int>>> right_content(tt), left_content(tt);
  for (int i = 0; i < tt; ++i) {
    right_content[i].assign(inner[i].size(), {});
    left_content[i].assign(inner[i].size(), {});
  }
  std::vector<std::vector<int>> sector_content(2 * tt);  // per part start angle

  if (part_vertex) part_vertex->assign(2 * tt, {});

  std::vector<PartPlan> plans = make_plans(p);
  for (int part = 0; part < 2 * tt; ++part) {
    PartPlan& pl = plans[part];
    const MotzkinPath& M = d.motzkin[pl.chain];
    int sg = static_cast<int>(p.sigma[pl.chain]);
    for (int j = 0; j < sg; ++j) {
      int step = M.values[j + 1] - M.values[j];
      pl.stems_at[j] = pl.forward ? 1 + step : 1 - M.values[sg - j] + M.values[sg - j - 1];
    }
    const WellLabeledForest& wf = d.forests[part];
    if (pl.tau() != wf.tau()) throw InconsistentParameters();
    // slot -> (content list, core vertex)
    std::vector<std::pair<std::vector<int>*, int>> slots;
    int start_vertex = pl.forward ? cstart[pl.chain] : cend[pl.chain];
    slots.push_back({&sector_content[part], start_vertex});
    if (pl.c == 1) {
      int st = b.new_half(start_vertex);
      b.twin[st] = kNoTwin;
      sector_content[part].push_back(st);
      slots.push_back({&sector_content[part], start_vertex});
    }
    for (int j = 0; j < sg; ++j) {
      int x = pl.forward ? j : sg - 1 - j;
      auto* content = pl.forward ? &right_content[pl.chain][x] : &left_content[pl.chain][x];
      slots.push_back({content, inner[pl.chain][x]});
      for (int s = 0; s < pl.stems_at[j]; ++s) {
        int st = b.new_half(inner[pl.chain][x]);
        b.twin[st] = kNoTwin;
        content->push_back(st);
        slots.push_back({content, inner[pl.chain][x]});
      }
    }
    if (static_cast<int>(slots.size()) != wf.tau()) throw InconsistentParameters();
    // attach trees floor by floor
    std::vector<int> node_vertex(wf.forest.size(), -1);
    for (int f = 0; f < wf.tau(); ++f) {
      node_vertex[f] = slots[f].second;
      for (int child : wf.forest.children[f]) {
        int h = build_tree(b, wf, child, slots[f].second, node_vertex);
        slots[f].first->push_back(h);
      }
    }
    // the childless last floor lives at the next part's start vertex
    int end_vertex = pl.forward ? cend[pl.chain] : cstart[pl.chain];
    node_vertex[wf.tau()] = end_vertex;
    if (part_vertex) {
      ContourPair cp = contour_pair(wf);
      auto& pv = (*part_vertex)[part];
      pv.reserve(cp.vertex.size());
      for (int node : cp.vertex) pv.push_back(node_vertex[node]);
    }
  }

  // assemble special vertex rotations
  if (hex) {
    // v0: (a, S5, b, S3, c, S1); sectors at v0 are parts 4, 2, 0 (0-based)
    b.rot[v0].push_back(ch[0].start_half);
    for (int h : sector_content[4]) b.rot[v0].push_back(h);
    b.rot[v0].push_back(ch[1].end_half);
    for (int h : sector_content[2]) b.rot[v0].push_back(h);
    b.rot[v0].push_back(ch[2].start_half);
    for (int h : sector_content[0]) b.rot[v0].push_back(h);
    // v1: (a', S2, b', S6, c', S4) -> parts 1, 5, 3 (0-based)
    b.rot[v1].push_back(ch[0].end_half);
    for (int h : sector_content[1]) b.rot[v1].push_back(h);
    b.rot[v1].push_back(ch[1].start_half);
    for (int h : sector_content[5]) b.rot[v1].push_back(h);
    b.rot[v1].push_back(ch[2].end_half);
    for (int h : sector_content[3]) b.rot[v1].push_back(h);
  } else {
    // square: (h0, S4, h1, S3, h2, S2, h3, S1) -> parts 3, 2, 1, 0 (0-based)
    b.rot[v0].push_back(ch[0].start_half);
    for (int h : sector_content[3]) b.rot[v0].push_back(h);
    b.rot[v0].push_back(ch[1].end_half);
    for (int h : sector_content[2]) b.rot[v0].push_back(h);
    b.rot[v0].push_back(ch[0].end_half);
    for (int h : sector_content[1]) b.rot[v0].push_back(h);
    b.rot[v0].push_back(ch[1].start_half);
    for (int h : sector_content[0]) b.rot[v0].push_back(h);
  }
  // inner vertex rotations
  for (int i = 0; i < tt; ++i) {
    for (size_t j = 0; j < inner[i].size(); ++j) {
      int x = inner[i][j];
      b.rot[x].push_back(ch[i].in_half[j]);
      for (int h : right_content[i][j]) b.rot[x].push_back(h);
      b.rot[x].push_back(ch[i].out_half[j]);
      for (int h : left_content[i][j]) b.rot[x].push_back(h);
    }
  }

  UnicellularMap u;
  u.map = b.finish();
  u.root_half = ch[0].start_half;
  if (u.map.num_vertices() != n || !u.is_unicellular())
    throw InconsistentParameters();
  return u;
}

namespace {

// Parse the subtree hanging at core half h (at the core side); label is the
// node's label, computed by the caller from the parent's stem gaps.
int parse_tree(const RotMap& m, int h, WellLabeledForest& wf, int parent_node,
               int label, std::vector<int>& node_vertex) {
  int node = wf.forest.size();
  wf.forest.parent.push_back(parent_node);
  wf.forest.children.push_back({});
  wf.label.push_back(label);
  node_vertex.push_back(m.vertex_of(m.twin(h)));
  wf.forest.children[parent_node].push_back(node);
  int self = m.twin(h);
  std::vector<int> gap_of_stem;
  std::vector<int> child_halves;
  for (int x = m.next_ccw(self); x != self; x = m.next_ccw(x)) {
    if (m.is_stem(x))
      gap_of_stem.push_back(static_cast<int>(child_halves.size()));
    else
      child_halves.push_back(x);
  }
  if (gap_of_stem.size() != 2) throw UnknownKernel();
  std::vector<int> in_gap(child_halves.size() + 1, 0);
  for (int g : gap_of_stem) in_gap[g]++;
  int cur = label - 1;
  for (size_t j = 0; j < child_halves.size(); ++j) {
    cur += in_gap[j];
    parse_tree(m, child_halves[j], wf, node, cur, node_vertex);
  }
  return node;
}

}  // namespace

DecomposedMap decompose(const UnicellularMap& u, std::vector<std::vector<int>>* part_vertex) {
  const RotMap& m = u.map;
  if (!u.root_half) throw MissingRoot();
  int r0 = *u.root_half;
  if (m.is_stem(r0)) throw UnknownKernel();
  std::vector<int> specials = u.special_vertices();
  std::set<int> special(specials.begin(), specials.end());
  const bool hex = specials.size() == 2;
  const int tt = hex ? 3 : 2;
  if (!special.count(m.vertex_of(r0))) throw UnknownKernel();

  // core mask: vertices on cycles
  std::vector<char> is_core(m.num_vertices(), 0);
  {
    // 2-core: strip leaves
    std::vector<int> deg(m.num_vertices(), 0);
    for (int h = 0; h < m.num_half_edges(); ++h)
      if (!m.is_stem(h)) deg[m.vertex_of(h)]++;
    std::vector<char> alive(m.num_vertices(), 1);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < m.num_vertices(); ++v) {
        if (alive[v] && deg[v] <= 1) {
          alive[v] = 0;
          changed = true;
          for (int h : m.vertex_orbit(m.vertex_rep(v)))
            if (!m.is_stem(h) && alive[m.vertex_of(m.twin(h))]) deg[m.vertex_of(m.twin(h))]--;
        }
      }
    }
    for (int v = 0; v < m.num_vertices(); ++v) is_core[v] = alive[v];
  }
  auto core_half = [&](int h) {
    return !m.is_stem(h) && is_core[m.vertex_of(h)] && is_core[m.vertex_of(m.twin(h))];
  };
  // walk a chain from its starting half; returns direction halves
  auto walk_chain = [&](int h0) {
    std::vector<int> halves;
    int h = h0;
    while (true) {
      halves.push_back(h);
      int v = m.vertex_of(m.twin(h));
      if (special.count(v)) break;
      int nxt = -1;
      for (int x : m.vertex_orbit(m.twin(h)))
        if (x != m.twin(h) && core_half(x)) nxt = x;
      if (nxt == -1) throw UnknownKernel();
      h = nxt;
    }
    return halves;
  };
  // chain halves around a special vertex in ccw order starting from h0
  auto chain_ports_from = [&](int h0) {
    std::vector<int> ports;
    for (int x = h0;;) {
      if (core_half(x)) ports.push_back(x);
      x = m.next_ccw(x);
      if (x == h0) break;
    }
    return ports;
  };

  std::vector<std::vector<int>> W(tt);  // direction halves per chain
  if (hex) {
    if (!core_half(r0)) throw UnknownKernel();
    W[0] = walk_chain(r0);
    int v0 = m.vertex_of(r0);
    int w0 = m.vertex_of(m.twin(W[0].back()));
    if (w0 == v0) throw UnknownKernel();
    auto pv = chain_ports_from(r0);
    if (pv.size() != 3) throw UnknownKernel();
    int a_end = m.twin(W[0].back());
    auto pw = chain_ports_from(a_end);
    if (pw.size() != 3) throw UnknownKernel();
    // rotation (a, b, c) at v and (a', b', c') at w; W2 runs w -> v from b',
    // W3 runs v -> w from c
    int b_half = pv[1], c_half = pv[2];
    int bp_half = pw[1], cp_half = pw[2];
    W[1] = walk_chain(bp_half);
    if (m.twin(W[1].back()) != b_half) throw UnknownKernel();
    W[2] = walk_chain(c_half);
    if (m.twin(W[2].back()) != cp_half) throw UnknownKernel();
  } else {
    if (!core_half(r0)) throw UnknownKernel();
    auto pv = chain_ports_from(r0);
    if (pv.size() != 4) throw UnknownKernel();
    W[0] = walk_chain(r0);
    if (m.twin(W[0].back()) != pv[2]) throw UnknownKernel();
    W[1] = walk_chain(pv[3]);
    if (m.twin(W[1].back()) != pv[1]) throw UnknownKernel();
  }

  // inner vertices in chain order, sigma, Motzkin paths
  DecomposedMap d;
  std::vector<std::vector<int>> inner(tt);
  d.motzkin.resize(tt);
  for (int i = 0; i < tt; ++i) {
    for (size_t j = 0; j + 1 < W[i].size(); ++j) inner[i].push_back(m.vertex_of(m.twin(W[i][j])));
    MotzkinPath M;
    M.values.push_back(0);
    for (size_t j = 0; j < inner[i].size(); ++j) {
      int in_h = m.twin(W[i][j]);
      int out_h = W[i][j + 1];
      int right = 0;
      for (int x = m.next_ccw(in_h); x != out_h; x = m.next_ccw(x))
        if (m.is_stem(x)) ++right;
      int step = right - 1;
      if (step < -1 || step > 1) throw UnknownKernel();
      M.values.push_back(M.values.back() + step);
    }
    d.motzkin[i] = M;
  }

  // type from the stems at the special sectors
  std::array<int, 6> cflag{};
  std::vector<std::vector<int>> sector_items(2 * tt);
  // start port of each part's sector and the bounding halves
  // part p starts at the angle before its sweep; collect items strictly
  // between the bounding chain ports in ccw order
  auto sector_between = [&](int from_half, int to_half) {
    std::vector<int> items;
    for (int x = m.next_ccw(from_half); x != to_half; x = m.next_ccw(x))
      items.push_back(x);
    return items;
  };
  std::vector<int> part_start_vertex(2 * tt);
  if (hex) {
    int a = r0, b = chain_ports_from(r0)[1], c = chain_ports_from(r0)[2];
    int ap = m.twin(W[0].back());
    int bp = chain_ports_from(ap)[1], cp = chain_ports_from(ap)[2];
    // alpha_1 = (c, a) at v; alpha_2 = (a', b') at w; alpha_3 = (b, c) at v;
    // alpha_4 = (c', a') at w; alpha_5 = (a, b) at v; alpha_6 = (b', c') at w
    sector_items[0] = sector_between(c, a);
    sector_items[1] = sector_between(ap, bp);
    sector_items[2] = sector_between(b, c);
    sector_items[3] = sector_between(cp, ap);
    sector_items[4] = sector_between(a, b);
    sector_items[5] = sector_between(bp, cp);
    int v0 = m.vertex_of(a), w0 = m.vertex_of(ap);
    part_start_vertex = {v0, w0, v0, w0, v0, w0};
  } else {
    auto pv = chain_ports_from(r0);
    sector_items[0] = sector_between(pv[3], pv[0]);
    sector_items[1] = sector_between(pv[2], pv[3]);
    sector_items[2] = sector_between(pv[1], pv[2]);
    sector_items[3] = sector_between(pv[0], pv[1]);
    int v0 = m.vertex_of(r0);
    part_start_vertex = {v0, v0, v0, v0};
  }
  for (int p = 0; p < 2 * tt; ++p) {
    int stems = 0;
    for (int x : sector_items[p])
      if (m.is_stem(x)) ++stems;
    if (stems > 1) throw UnknownKernel();
    cflag[p] = stems;
  }
  int type = -1;
  for (int k = hex ? 1 : 0; k <= (hex ? 9 : 0); ++k) {
    const KernelSpec& spec = kernel_spec(k);
    bool match = true;
    for (int i = 0; i < 2 * tt; ++i)
      if (spec.c[i] != cflag[i]) match = false;
    if (match) {
      type = k;
      break;
    }
  }
  if (type == -1) throw UnknownKernel();
  d.k = type;
  {
    const KernelSpec& spec = kernel_spec(type);
    if (hex) {
      int g1 = d.motzkin[0].endpoint(), g2 = d.motzkin[1].endpoint(),
          g3 = d.motzkin[2].endpoint();
      if (g1 + g2 != spec.gamma12 || g2 + g3 != spec.gamma23) throw UnknownKernel();
    } else {
      if (d.motzkin[0].endpoint() != 0 || d.motzkin[1].endpoint() != 0)
        throw UnknownKernel();
    }
  }

  // forests per part
  if (part_vertex) part_vertex->assign(2 * tt, {});
  d.forests.resize(2 * tt);
  for (int part = 0; part < 2 * tt; ++part) {
    int ci = part % tt;
    bool forward = part < tt;
    int sg = static_cast<int>(inner[ci].size());
    // slot sequence: (core vertex, hanging halves)
    std::vector<std::pair<int, std::vector<int>>> slots;
    {
      std::vector<int> pre, post;
      bool seen_stem = false;
      for (int x : sector_items[part]) {
        if (m.is_stem(x)) {
          seen_stem = true;
          continue;
        }
        (seen_stem ? post : pre).push_back(x);
      }
      slots.push_back({part_start_vertex[part], pre});
      if (cflag[part]) slots.push_back({part_start_vertex[part], post});
      else if (!post.empty()) throw UnknownKernel();
    }
    for (int j = 0; j < sg; ++j) {
      int x = forward ? j : sg - 1 - j;
      int xv = inner[ci][x];
      int from_h, to_h;
      if (forward) {
        from_h = m.twin(W[ci][x]);
        to_h = W[ci][x + 1];
      } else {
        from_h = W[ci][x + 1];
        to_h = m.twin(W[ci][x]);
      }
      std::vector<int> cur;
      slots.push_back({xv, {}});
      for (int y = m.next_ccw(from_h); y != to_h; y = m.next_ccw(y)) {
        if (m.is_stem(y)) {
          slots.back().second = cur;
          cur.clear();
          slots.push_back({xv, {}});
        } else {
          cur.push_back(y);
        }
      }
      slots.back().second = cur;
    }
    // build the forest
    WellLabeledForest wf;
    int taup = static_cast<int>(slots.size());
    wf.forest.tau = taup;
    wf.forest.parent.assign(taup + 1, -1);
    wf.forest.children.assign(taup + 1, {});
    wf.label.assign(taup + 1, 0);
    std::vector<int> node_vertex(taup + 1, -1);
    for (int f = 0; f < taup; ++f) {
      node_vertex[f] = slots[f].first;
      for (int h : slots[f].second) parse_tree(m, h, wf, f, -1, node_vertex);
    }
    int end_vertex = forward ? m.vertex_of(m.twin(W[ci].back())) : m.vertex_of(W[ci][0]);
    node_vertex[taup] = end_vertex;
    wf.validate();
    d.forests[part] = wf;
    if (part_vertex) {
      ContourPair cp = contour_pair(wf);
      auto& pv = (*part_vertex)[part];
      for (int node : cp.vertex) pv.push_back(node_vertex[node]);
    }
  }
  ParameterVector p = d.params();
  p.validate(u.n());
  return d;
}

ShiftedLabeling shifted_labeling(const DecomposedMap& d) {
  ParameterVector p = d.params();
  const int tt = p.t();
  const KernelSpec& spec = kernel_spec(d.k);
  std::vector<std::vector<int>> part_vertex;
  assemble(d, &part_vertex);  // contour-position -> vertex tables
  ShiftedLabeling out;
  std::vector<char> after_stem;
  std::vector<int> rP;
  int shift = 0;
  for (int part = 0; part < 2 * tt; ++part) {
    const WellLabeledForest& wf = d.forests[part];
    ContourPair cp = contour_pair(wf);
    MotzkinPath base = d.motzkin[part % tt];
    if (part >= tt) base = inverse(base);
    MotzkinPath shifted = c_shift(extend(base), spec.c[part]);
    int cmax = 0;
    int last = 0;
    for (size_t s = 0; s < cp.C.size(); ++s) {
      cmax = std::max(cmax, cp.C[s]);
      int value = cp.L[s] + shifted.values[cmax];
      last = value;
      if (part == 0 || s > 0) {
        out.S_bullet.push_back(shift + value);
        rP.push_back(part_vertex[part][s]);
        // a floor advance whose shifted-path step goes up crosses a core stem
        bool stem_sep = false;
        if (s > 0 && cp.vertex[s] <= wf.forest.tau &&
            cp.vertex[s - 1] == cp.vertex[s] - 1 && cp.C[s] == cp.C[s - 1] + 1)
          stem_sep = shifted.values[cmax] > shifted.values[cmax - 1];
        after_stem.push_back(stem_sep);
      }
    }
    shift += last;
  }
  if (out.S_bullet.front() != 0) throw InconsistentParameters();
  // drop the values just after a core stem, and the closing duplicate of
  // the start angle
  for (size_t i = 0; i + 1 < out.S_bullet.size(); ++i) {
    if (!after_stem[i]) {
      out.S.push_back(out.S_bullet[i]);
      out.rQ.push_back(rP[i]);
    }
  }
  return out;
}

int pseudo_distance_d0(const ShiftedLabeling& s, const LabelTable& lt, int i, int j) {
  int u = s.rQ[i], v = s.rQ[j];
  return lt.m[u] + lt.m[v] - 2 * mbar(lt, u, v);
}

std::string DecomposedMap::to_json() const {
  nlohmann::json j;
  ParameterVector p = params();
  j["k"] = k;
  j["rho"] = p.rho;
  j["tau"] = p.tau;
  j["gamma"] = p.gamma;
  j["sigma"] = p.sigma;
  auto fo = nlohmann::json::array();
  for (const auto& wf : forests) {
    ContourPair cp = contour_pair(wf);
    fo.push_back(nlohmann::json{{"C", cp.C}, {"L", cp.L}});
  }
  j["forests"] = fo;
  auto mo = nlohmann::json::array();
  for (const auto& m : motzkin) mo.push_back(m.to_ascii());
  j["motzkin"] = mo;
  return j.dump();
}

DecomposedMap DecomposedMap::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  DecomposedMap d;
  d.k = j.at("k").get<int>();
  for (const auto& f : j.at("forests")) {
    std::vector<int> C = f.at("C").get<std::vector<int>>();
    std::vector<int> L = f.at("L").get<std::vector<int>>();
    d.forests.push_back(from_contour(C, L));
  }
  for (const auto& m : j.at("motzkin"))
    d.motzkin.push_back(MotzkinPath::from_ascii(m.get<std::string>()));
  return d;
}

}  // namespace torustri
