#include "torustri/closure.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "json.hpp"

namespace torustri {

std::pair<RotMap, int> with_root_half_edge(const UnicellularMap& t) {
  if (!t.root_angle) throw MissingRoot();
  const RotMap& m = t.map;
  int h_star = *t.root_angle;
  int r = m.num_half_edges();
  std::vector<std::pair<int, int>> table(r + 1);
  for (int h = 0; h < r; ++h) {
    int nx = m.next_ccw(h);
    if (h == h_star) nx = r;
    table[h] = {m.twin(h), nx};
  }
  table[r] = {kNoTwin, m.next_ccw(h_star)};
  return {RotMap::build(table, 1), r};
}

namespace {

// Mutable closure state. Border items of the special face form a circular
// doubly linked list in face (phi) order; anc[h] tracks, for the angle
// (h, next[h]), the original angle of the base map it split from.
struct ClosureState {
  std::vector<int> twin, next, vert;
  std::vector<int> lnext, lprev;
  std::vector<int> anc;
  std::vector<char> on_border;
  int border_edges = 0, border_stems = 0;

  bool is_stem(int h) const { return twin[h] == kNoTwin; }
  int alpha(int h) const { return twin[h] == kNoTwin ? h : twin[h]; }

  static ClosureState from(const RotMap& m) {
    ClosureState s;
    const int H = m.num_half_edges();
    s.twin.resize(H);
    s.next.resize(H);
    s.vert.resize(H);
    s.anc.resize(H);
    for (int h = 0; h < H; ++h) {
      s.twin[h] = m.twin(h);
      s.next[h] = m.next_ccw(h);
      s.vert[h] = m.vertex_of(h);
      s.anc[h] = h;
    }
    if (m.num_faces() != 1) throw NotUnicellular();
    s.lnext.assign(H, -1);
    s.lprev.assign(H, -1);
    s.on_border.assign(H, 1);
    std::vector<int> orbit = m.face_orbit(0);
    for (int i = 0; i < H; ++i) {
      int a = orbit[i], b = orbit[(i + 1) % H];
      s.lnext[a] = b;
      s.lprev[b] = a;
    }
    for (int h = 0; h < H; ++h) {
      if (s.is_stem(h))
        s.border_stems++;
      else
        s.border_edges++;
    }
    return s;
  }

  // Requires lnext[s], lnext[lnext[s]] to be edge items. root_item, if >= 0,
  // must not be consumed. Returns the ancestor of the attachment angle.
  int close(int s, int root_item) {
    int n1 = lnext[s], n2 = lnext[n1];
    if (n1 == root_item || n2 == root_item) throw SafetyViolation();
    if (is_stem(n1) || is_stem(n2) || n1 == s || n2 == s) throw NoAdmissibleTriple();
    int x = alpha(n2);  // attachment angle is (x, next[x]) at vertex u
    int sp = static_cast<int>(twin.size());
    twin.push_back(s);
    next.push_back(next[x]);
    vert.push_back(vert[x]);
    anc.push_back(anc[x]);  // both halves of the split keep the ancestor
    lnext.push_back(-1);
    lprev.push_back(-1);
    on_border.push_back(0);
    twin[s] = sp;
    next[x] = sp;
    int after = lnext[n2];
    lnext[s] = after;
    lprev[after] = s;
    on_border[n1] = on_border[n2] = 0;
    border_edges -= 1;
    border_stems -= 1;
    return anc[sp];
  }

  RotMap to_map() const {
    std::vector<std::pair<int, int>> table(twin.size());
    for (size_t h = 0; h < twin.size(); ++h) table[h] = {twin[h], next[h]};
    return RotMap::build(table);
  }

  std::vector<int> border_items() const {
    int start = -1;
    for (size_t h = 0; h < on_border.size(); ++h) {
      if (on_border[h]) {
        start = static_cast<int>(h);
        break;
      }
    }
    std::vector<int> items;
    if (start < 0) return items;
    int x = start;
    do {
      items.push_back(x);
      x = lnext[x];
    } while (x != start && items.size() <= twin.size());
    return items;
  }
};

struct SweepResult {
  ClosureState state;
  std::vector<std::pair<int, int>> closures;  // (stem, ancestor angle)
};

// Counterclockwise sweep from the root angle (the angle after root_item in
// phi order): items are visited backward from root_item; every stem met is
// closed on the two edges that follow it in phi order.
SweepResult sweep_closure(const RotMap& gamma_map, int root_item) {
  SweepResult out{ClosureState::from(gamma_map), {}};
  ClosureState& st = out.state;
  const int to_close = st.border_stems - 1;  // the root half-edge never closes
  int cursor = root_item;
  while (true) {
    int prev = st.lprev[cursor];
    if (st.is_stem(cursor) && cursor != root_item) {
      int attach = st.close(cursor, root_item);
      out.closures.push_back({cursor, attach});
    }
    if (prev == root_item) break;
    cursor = prev;
  }
  if (static_cast<int>(out.closures.size()) != to_close) throw NoAdmissibleTriple();
  return out;
}

// Closes admissible stems in an arbitrary order, waking blocked stems when
// their forward neighbors close. root_item < 0 for the rootless U-class
// closure.
SweepResult free_closure(const RotMap& m, int root_item, Philox* rng) {
  SweepResult out{ClosureState::from(m), {}};
  ClosureState& st = out.state;
  std::vector<int> stems;
  for (int h = 0; h < m.num_half_edges(); ++h)
    if (st.is_stem(h) && h != root_item) stems.push_back(h);
  const size_t expected = stems.size();
  if (rng) {
    for (int i = static_cast<int>(stems.size()) - 1; i > 0; --i)
      std::swap(stems[i], stems[rng->below(i + 1)]);
  }
  std::vector<int> stack(stems.rbegin(), stems.rend());
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    if (!st.is_stem(s) || s == root_item) continue;
    int n1 = st.lnext[s], n2 = st.lnext[n1];
    if (st.is_stem(n1) || st.is_stem(n2) || n1 == root_item || n2 == root_item)
      continue;  // woken again when the blocker closes
    int attach = st.close(s, root_item);
    out.closures.push_back({s, attach});
    int y1 = st.lprev[s];
    if (y1 != root_item) {
      if (st.is_stem(y1)) {
        stack.push_back(y1);
      } else {
        int y2 = st.lprev[y1];
        if (y2 != root_item && st.is_stem(y2)) stack.push_back(y2);
      }
    }
  }
  if (out.closures.size() != expected) {
    // distinguish a root wrap from corruption
    for (int h = 0; h < static_cast<int>(st.twin.size()); ++h) {
      if (st.is_stem(h) && h != root_item &&
          (st.lnext[h] == root_item || st.lnext[st.lnext[h]] == root_item))
        throw SafetyViolation();
    }
    throw NoAdmissibleTriple();
  }
  return out;
}

std::pair<LabeledTriangulation, ClosureTrace> finish(const UnicellularMap& t,
                                                     const RotMap& gamma_map,
                                                     SweepResult&& res, int root_item) {
  AngleSequence seq = clockwise_angles(gamma_map, root_item);
  const int H0 = gamma_map.num_half_edges();
  std::vector<int> a_index(H0, -1);
  std::vector<int> lambda_a(H0, 0);
  int cur = 3;
  for (int i = 0; i < H0; ++i) {
    a_index[seq.angles[i]] = i;
    lambda_a[i] = cur;
    if (i < H0 - 1) cur += seq.separator_is_stem[i] ? 1 : -1;
  }
  LabeledTriangulation out;
  out.g = res.state.to_map();
  out.root_half = root_item;
  out.root_angle = root_item;
  out.angle_ancestor.resize(out.g.num_half_edges());
  out.lambda.resize(out.g.num_half_edges());
  for (int h = 0; h < out.g.num_half_edges(); ++h) {
    int i = a_index[res.state.anc[h]];
    out.angle_ancestor[h] = i;
    out.lambda[h] = lambda_a[i];
  }
  out.orient.out_half.assign(out.g.num_edges(), -1);
  CanonicalOrientation base = canonical_orientation(t);
  for (int e = 0; e < t.map.num_edges(); ++e) {
    int oh = base.out_half[e];
    out.orient.out_half[out.g.edge_id(oh)] = oh;
  }
  for (auto [stem, attach] : res.closures) {
    (void)attach;
    out.orient.out_half[out.g.edge_id(stem)] = stem;  // stems close outgoing
  }
  ClosureTrace trace;
  int k = 1;
  for (auto [stem, attach] : res.closures)
    trace.steps.push_back({k++, stem, a_index[attach]});
  return {std::move(out), std::move(trace)};
}

}  // namespace

std::pair<LabeledTriangulation, ClosureTrace> complete_closure(const UnicellularMap& t) {
  t.validate(true);
  auto [gmap, r] = with_root_half_edge(t);
  SweepResult res = sweep_closure(gmap, r);
  return finish(t, gmap, std::move(res), r);
}

std::pair<LabeledTriangulation, ClosureTrace> complete_closure_random_order(
    const UnicellularMap& t, Philox& rng) {
  t.validate(true);
  auto [gmap, r] = with_root_half_edge(t);
  SweepResult res = free_closure(gmap, r, &rng);
  return finish(t, gmap, std::move(res), r);
}

bool is_safe(const UnicellularMap& t) {
  t.validate(true);
  auto [gmap, r] = with_root_half_edge(t);
  try {
    sweep_closure(gmap, r);
    return true;
  } catch (const SafetyViolation&) {
    return false;
  }
}

std::array<int, 4> root_slots(const UnicellularMap& u) {
  SweepResult res = free_closure(u.map, -1, nullptr);
  std::vector<int> items = res.state.border_items();
  if (items.size() != 4) throw MapError("stemless closure did not end on a quadrangle");
  std::array<int, 4> slots{};
  for (int i = 0; i < 4; ++i) slots[i] = res.state.anc[res.state.alpha(items[i])];
  std::sort(slots.begin(), slots.end());
  if (std::unique(slots.begin(), slots.end()) != slots.end())
    throw MapError("root slots not distinct");
  return slots;
}

UnicellularMap add_root(const UnicellularMap& u, int slot) {
  if (slot < 0 || slot > 3) throw InvalidSlot();
  std::array<int, 4> slots = root_slots(u);
  int x0 = slots[slot];
  const RotMap& m = u.map;
  int s = m.num_half_edges();
  std::vector<std::pair<int, int>> table(s + 1);
  for (int h = 0; h < s; ++h) {
    int nx = m.next_ccw(h);
    if (h == x0) nx = s;
    table[h] = {m.twin(h), nx};
  }
  table[s] = {kNoTwin, m.next_ccw(x0)};
  UnicellularMap t;
  t.map = RotMap::build(table, 1);
  t.root_angle = x0;
  return t;
}

std::string canonical_form(const RotMap& m, int root_half) {
  const int H = m.num_half_edges();
  std::vector<int> relabel(H, -1);
  std::vector<int> order;
  order.reserve(H);
  relabel[root_half] = 0;
  order.push_back(root_half);
  for (size_t i = 0; i < order.size(); ++i) {
    int h = order[i];
    for (int nb : {m.next_ccw(h), m.alpha(h)}) {
      if (relabel[nb] == -1) {
        relabel[nb] = static_cast<int>(order.size());
        order.push_back(nb);
      }
    }
  }
  std::ostringstream os;
  for (int h : order) {
    int tw = m.twin(h);
    os << (tw == kNoTwin ? -1 : relabel[tw]) << "," << relabel[m.next_ccw(h)] << ";";
  }
  return os.str();
}

std::string LabeledTriangulation::to_json() const {
  nlohmann::json j = nlohmann::json::parse(g.to_json(root_half));
  j["lambda"] = lambda;
  j["angle_ancestor"] = angle_ancestor;
  auto dir = nlohmann::json::array();
  for (int e = 0; e < g.num_edges(); ++e)
    dir.push_back(orient.out_half[e] == g.edge_half(e) ? "fwd" : "rev");
  j["orientation"] = dir;
  return j.dump();
}

}  // namespace torustri
