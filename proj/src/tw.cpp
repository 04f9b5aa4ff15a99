#include "pohp/tw.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include <boost/container_hash/hash.hpp>

namespace pohp::tw {

using segments::BlockSummary;
using segments::Kind;
using pw::Form;
using pw::LocalSignature;
using pw::Role;

namespace {

// Connection between consecutive anchors of a fragment: a direct edge or a
// run of forgotten vertices. p1/p2 hold the run before and after the wrap.
struct Link {
  bool wrap = false;
  BlockSummary p1, p2;
  bool direct() const { return p1.set.none() && p2.set.none(); }
};

struct Frag {
  std::vector<int> anchors;  // bag vertices in traversal order
  std::vector<Link> links;   // links[i] joins anchors[i] and anchors[i + 1]
  BlockSummary sum;
  int front() const { return anchors.front(); }
  int back() const { return anchors.back(); }
  bool trivial() const { return anchors.size() == 1; }
};

struct State {
  std::vector<Frag> frags;  // empty for a complete cycle
  Weight weight = 0;
  int rec = -1;
  bool cycle = false;
  int d = -1;
  VertexSet covered;
  std::vector<std::pair<int, int>> sources;  // measure mode: (left, right) indices in the child rows
};

struct Rec {
  int prev[2] = {-1, -1};
  int e[4] = {-1, -1, -1, -1};
  int wrap_a = -1, wrap_b = -1;
};

struct Row {
  std::vector<State> states;
  std::vector<int> bag;
  RowFilter filter;
  std::uint32_t base = 0;  // global id of the first entry
};

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& k) const { return boost::hash_range(k.begin(), k.end()); }
};

int nontrivial(const State& s) {
  int c = 0;
  for (const auto& f : s.frags) c += !f.trivial();
  return c;
}

bool terminal(const State& s, int v) {
  for (const auto& f : s.frags)
    if (f.front() == v || f.back() == v) return true;
  return false;
}

}  // namespace

struct Table::Impl {
  const Instance& inst;
  Options opt;
  int n;
  std::vector<BlockSummary> solo;
  BlockSummary empty;
  std::vector<Row> rows;
  std::vector<Rec> recs;
  Stats stats;

  std::vector<int> g_node;
  std::vector<std::uint64_t> g_sig, g_map;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> g_edges;

  std::vector<State> next;
  std::unordered_map<std::vector<std::uint64_t>, int, KeyHash> index;

  Impl(const Instance& i, Options o) : inst(i), opt(o), n(i.size()) {
    const auto N = static_cast<std::size_t>(n);
    empty.set = empty.succ = empty.pred = empty.tail = empty.tail_succ = empty.head = empty.head_pred = VertexSet(N);
    for (int v = 0; v < n; ++v) {
      auto s = segments::solo_summary(inst.order, v);
      s.tail = s.tail_succ = s.head = s.head_pred = VertexSet(N);
      solo.push_back(std::move(s));
    }
  }

  Link direct_link(bool wrap) const { return Link{wrap, empty, empty}; }

  static void unite(BlockSummary& a, const BlockSummary& b) {
    a.set |= b.set;
    a.succ |= b.succ;
    a.pred |= b.pred;
  }

  // Summary of an open fragment from its pieces; false when not forward.
  bool summarize(const Frag& f, BlockSummary& out) const {
    BlockSummary s = solo[static_cast<std::size_t>(f.anchors[0])], t;
    bool pending = false;
    auto push = [&](const BlockSummary& b) {
      if (b.set.none()) return true;
      if (!segments::concat_summary(s, b, pending, t)) return false;
      std::swap(s, t);
      pending = false;
      return true;
    };
    for (std::size_t i = 0; i < f.links.size(); ++i) {
      const auto& l = f.links[i];
      if (!push(l.p1)) return false;
      if (l.wrap) pending = true;
      if (!push(l.p2)) return false;
      if (!push(solo[static_cast<std::size_t>(f.anchors[i + 1])])) return false;
    }
    out = std::move(s);
    return true;
  }

  // A closed cycle given by anchors and a link per anchor (the last link
  // returns to anchors[0]) is valid iff it has one wrap and λ read from the
  // wrap is forward.
  bool cycle_valid(const std::vector<int>& anchors, const std::vector<Link>& links) const {
    std::size_t wrap = links.size();
    for (std::size_t i = 0; i < links.size(); ++i)
      if (links[i].wrap) {
        if (wrap != links.size()) return false;
        wrap = i;
      }
    if (wrap == links.size()) return false;
    const std::size_t m = anchors.size();
    std::vector<const BlockSummary*> seq;
    seq.push_back(&links[wrap].p2);
    for (std::size_t k = 1; k <= m; ++k) {
      const std::size_t i = (wrap + k) % m;
      seq.push_back(&solo[static_cast<std::size_t>(anchors[i])]);
      if (k < m) {
        seq.push_back(&links[i].p1);
        seq.push_back(&links[i].p2);
      }
    }
    seq.push_back(&links[wrap].p1);
    BlockSummary s, t;
    bool first = true;
    for (const auto* b : seq) {
      if (b->set.none()) continue;
      if (first) {
        s = *b;
        first = false;
        continue;
      }
      if (!segments::concat_summary(s, *b, false, t)) return false;
      std::swap(s, t);
    }
    return s.set.count() == static_cast<std::size_t>(n);
  }

  bool consistent(const std::vector<Frag>& frags) const {
    const BlockSummary* ptr[8];
    std::vector<const BlockSummary*> big;
    int closes = 0;
    for (const auto& f : frags) closes += f.sum.kind == Kind::close;
    if (closes > 1) return false;
    if (frags.size() <= 8) {
      for (std::size_t i = 0; i < frags.size(); ++i) ptr[i] = &frags[i].sum;
      return segments::blocks_consistent(std::span<const BlockSummary* const>(ptr, frags.size()));
    }
    for (const auto& f : frags) big.push_back(&f.sum);
    return segments::blocks_consistent(std::span<const BlockSummary* const>(big));
  }

  std::vector<std::uint64_t> key(const State& s) const {
    std::vector<std::uint64_t> k;
    k.push_back(s.cycle);
    if (s.cycle) return k;
    k.push_back(static_cast<std::uint64_t>(s.d + 1));
    std::vector<std::size_t> idx(s.frags.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s.frags[a].front() < s.frags[b].front(); });
    auto put = [&](const VertexSet& v) {
      for (std::size_t w = 0; w < v.word_count(); ++w) k.push_back(v.word(w));
    };
    // As in the path table, a run carrying the wrap is keyed by its set only;
    // a wrap on a direct edge stays visible because a join may share it.
    for (auto i : idx) {
      const auto& f = s.frags[i];
      k.push_back((f.sum.kind == Kind::close ? 1u : 0u) | (f.anchors.size() << 1));
      for (int a : f.anchors) k.push_back(static_cast<std::uint64_t>(a));
      for (const auto& l : f.links) {
        if (l.direct()) {
          k.push_back(l.wrap ? 2 : 1);
          continue;
        }
        k.push_back(3);
        put(l.p1.set | l.p2.set);
      }
    }
    return k;
  }

  void emit(State&& cand, int rec_index, std::pair<int, int> source) {
    ++stats.transitions;
    auto k = key(cand);
    auto it = index.find(k);
    if (it == index.end()) {
      cand.rec = rec_index;
      if (opt.measure) cand.sources.push_back(source);
      index.emplace(std::move(k), static_cast<int>(next.size()));
      next.push_back(std::move(cand));
      return;
    }
    auto& have = next[static_cast<std::size_t>(it->second)];
    if (opt.measure) have.sources.push_back(source);
    if (cand.weight < have.weight) {
      have.weight = cand.weight;
      have.rec = rec_index;
    }
  }

  int push_rec(int p0, int p1, int a = -1, int b = -1, int c = -1, int d = -1, int wa = -1, int wb = -1) {
    Rec r;
    r.prev[0] = p0;
    r.prev[1] = p1;
    r.e[0] = a;
    r.e[1] = b;
    r.e[2] = c;
    r.e[3] = d;
    r.wrap_a = wa;
    r.wrap_b = wb;
    recs.push_back(r);
    return static_cast<int>(recs.size()) - 1;
  }

  void offer(const State& from, int si, std::vector<Frag>&& frags, Weight add, int a, int b, int c, int d, int wa,
             int wb, int w) {
    if (!consistent(frags)) return;
    State s;
    s.frags = std::move(frags);
    s.weight = from.weight + add;
    s.covered = from.covered;
    s.covered.set(w);
    s.d = nontrivial(s) == 2 ? std::max(from.d, 0) : -1;
    emit(std::move(s), push_rec(from.rec, -1, a, b, c, d, wa, wb), {si, -1});
  }

  // Every way of adding w next to the fragments of s.
  void introduce(const State& s, int si, int w) {
    const auto& g = inst.graph;
    const auto& sw = solo[static_cast<std::size_t>(w)];
    const std::size_t k = s.frags.size();
    {
      auto fr = s.frags;
      fr.push_back(Frag{{w}, {}, sw});
      offer(s, si, std::move(fr), 0, -1, -1, -1, -1, -1, -1, w);
    }
    BlockSummary tmp, tmp2;
    for (std::size_t j = 0; j < k; ++j) {
      const auto& f = s.frags[j];
      for (int flag = 0; flag < 2; ++flag) {
        if (g.adjacent(f.back(), w) && segments::concat_summary(f.sum, sw, flag, tmp)) {
          auto fr = s.frags;
          auto& nf = fr[j];
          nf.anchors.push_back(w);
          nf.links.push_back(direct_link(flag));
          nf.sum = tmp;
          offer(s, si, std::move(fr), g.weight(f.back(), w), f.back(), w, -1, -1, flag ? f.back() : -1,
                flag ? w : -1, w);
        }
        if (g.adjacent(w, f.front()) && segments::concat_summary(sw, f.sum, flag, tmp)) {
          auto fr = s.frags;
          auto& nf = fr[j];
          nf.anchors.insert(nf.anchors.begin(), w);
          nf.links.insert(nf.links.begin(), direct_link(flag));
          nf.sum = tmp;
          offer(s, si, std::move(fr), g.weight(w, f.front()), w, f.front(), -1, -1, flag ? w : -1,
                flag ? f.front() : -1, w);
        }
      }
    }
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) {
        if (j == l) continue;
        const auto& a = s.frags[j];
        const auto& b = s.frags[l];
        if (!g.adjacent(a.back(), w) || !g.adjacent(w, b.front())) continue;
        for (int flags = 0; flags < 3; ++flags) {
          const bool f1 = flags == 1, f2 = flags == 2;
          if (!segments::concat_summary(a.sum, sw, f1, tmp)) continue;
          if (!segments::concat_summary(tmp, b.sum, f2, tmp2)) continue;
          Frag m;
          m.anchors = a.anchors;
          m.anchors.push_back(w);
          m.anchors.insert(m.anchors.end(), b.anchors.begin(), b.anchors.end());
          m.links = a.links;
          m.links.push_back(direct_link(f1));
          m.links.push_back(direct_link(f2));
          m.links.insert(m.links.end(), b.links.begin(), b.links.end());
          m.sum = tmp2;
          std::vector<Frag> fr;
          for (std::size_t x = 0; x < k; ++x)
            if (x != j && x != l) fr.push_back(s.frags[x]);
          fr.push_back(std::move(m));
          int wa = -1, wb = -1;
          if (f1) wa = a.back(), wb = w;
          if (f2) wa = w, wb = b.front();
          offer(s, si, std::move(fr), g.weight(a.back(), w) + g.weight(w, b.front()), a.back(), w, w, b.front(), wa,
                wb, w);
        }
      }
    // closing the cycle through w
    if (k == 1 && !s.frags[0].trivial() && s.covered.count() + 1 == static_cast<std::size_t>(n)) {
      const auto& f = s.frags[0];
      if (!g.adjacent(f.back(), w) || !g.adjacent(w, f.front())) return;
      const Weight add = g.weight(f.back(), w) + g.weight(w, f.front());
      const bool has_wrap = f.sum.kind == Kind::close;
      for (int flags = 0; flags < 3; ++flags) {
        const bool f1 = flags == 1, f2 = flags == 2;
        if (has_wrap == (f1 || f2)) continue;
        auto anchors = f.anchors;
        anchors.push_back(w);
        auto links = f.links;
        links.push_back(direct_link(f1));
        links.push_back(direct_link(f2));
        if (!cycle_valid(anchors, links)) continue;
        State c;
        c.cycle = true;
        c.weight = s.weight + add;
        c.covered = s.covered;
        c.covered.set(w);
        int wa = -1, wb = -1;
        if (f1) wa = f.back(), wb = w;
        if (f2) wa = w, wb = f.front();
        emit(std::move(c), push_rec(s.rec, -1, f.back(), w, w, f.front(), wa, wb), {si, -1});
      }
    }
  }

  // u becomes part of the run between its neighbours; false if u is a terminal.
  bool forget(State& s, int u) const {
    if (s.cycle) return true;
    for (auto& f : s.frags) {
      auto it = std::find(f.anchors.begin(), f.anchors.end(), u);
      if (it == f.anchors.end()) continue;
      const auto j = static_cast<std::size_t>(it - f.anchors.begin());
      if (j == 0 || j + 1 == f.anchors.size()) return false;
      const Link& a = f.links[j - 1];
      const Link& b = f.links[j];
      Link m;
      m.wrap = a.wrap || b.wrap;
      m.p1 = a.p1;
      m.p2 = empty;
      BlockSummary& rest = a.wrap ? m.p2 : m.p1;
      if (a.wrap) rest = a.p2;
      unite(rest, solo[static_cast<std::size_t>(u)]);
      unite(rest, b.p1);
      if (b.wrap)
        m.p2 = b.p2;
      else
        unite(rest, b.p2);
      f.links[j - 1] = std::move(m);
      f.links.erase(f.links.begin() + static_cast<long>(j));
      f.anchors.erase(it);
      return true;
    }
    return false;
  }

  // ---------------------------------------------------------------- join

  void join_pair(const State& L, int li, const State& R, int ri, const std::vector<int>& bag) {
    if (L.cycle || R.cycle) return;
    const auto& g = inst.graph;
    const std::size_t B = bag.size();
    auto pos = [&](int v) { return static_cast<std::size_t>(std::find(bag.begin(), bag.end(), v) - bag.begin()); };
    struct Out {
      int to = -1;
      int side = -1;
      const Link* link = nullptr;
      bool shared = false;
    };
    std::vector<Out> out(B);
    std::vector<int> in(B, -1);  // source anchor
    Weight shared_weight = 0;
    for (int side = 0; side < 2; ++side) {
      const State& s = side ? R : L;
      for (const auto& f : s.frags)
        for (std::size_t i = 0; i < f.links.size(); ++i) {
          const int a = f.anchors[i], b = f.anchors[i + 1];
          auto pa = pos(a), pb = pos(b);
          const Link& l = f.links[i];
          if (out[pa].to >= 0) {
            // the same bag edge used by both children
            if (out[pa].side == side || out[pa].to != b || !l.direct() || !out[pa].link->direct()) return;
            out[pa].shared = true;
            shared_weight += g.weight(a, b);
            continue;
          }
          if (in[pb] >= 0) return;
          out[pa] = Out{b, side, &l, false};
          in[pb] = a;
        }
    }
    for (std::size_t p = 0; p < B; ++p) {
      // one edge traversed in both directions
      if (out[p].to < 0 || !out[p].link->direct()) continue;
      const auto q = pos(out[p].to);
      if (out[q].to == bag[p] && out[q].link->direct()) return;
    }

    auto link_of = [&](std::size_t p) {
      Link l = *out[p].link;
      if (out[p].shared) {
        // the other child's copy of the edge may carry the wrap
        const State& o = out[p].side ? L : R;
        for (const auto& f : o.frags)
          for (std::size_t i = 0; i < f.links.size(); ++i)
            if (f.anchors[i] == bag[p] && f.anchors[i + 1] == out[p].to) l.wrap = l.wrap || f.links[i].wrap;
      }
      return l;
    };

    std::vector<char> seen(B, 0);
    std::vector<Frag> frags;
    int first_side = -1;
    for (std::size_t p = 0; p < B; ++p) {
      if (in[p] >= 0) continue;
      Frag f;
      std::size_t cur = p;
      f.anchors.push_back(bag[cur]);
      seen[cur] = 1;
      while (out[cur].to >= 0) {
        if (frags.empty() && first_side < 0 && !out[cur].shared) first_side = out[cur].side;
        f.links.push_back(link_of(cur));
        cur = pos(out[cur].to);
        f.anchors.push_back(bag[cur]);
        seen[cur] = 1;
      }
      frags.push_back(std::move(f));
    }
    const Weight weight = L.weight + R.weight - shared_weight;
    VertexSet covered = L.covered | R.covered;

    std::size_t unseen = 0;
    for (std::size_t p = 0; p < B; ++p) unseen += !seen[p];
    if (unseen) {
      // a complete cycle: it has to be the only structure and cover V
      if (!frags.empty() || covered.count() != static_cast<std::size_t>(n)) return;
      std::vector<int> anchors;
      std::vector<Link> links;
      std::size_t cur = 0;
      do {
        anchors.push_back(bag[cur]);
        links.push_back(link_of(cur));
        cur = pos(out[cur].to);
      } while (cur != 0);
      if (anchors.size() != B || !cycle_valid(anchors, links)) return;
      State c;
      c.cycle = true;
      c.weight = weight;
      c.covered = covered;
      emit(std::move(c), push_rec(L.rec, R.rec), {li, ri});
      return;
    }
    for (auto& f : frags)
      if (!summarize(f, f.sum)) return;
    if (!consistent(frags)) return;
    State s;
    s.frags = std::move(frags);
    s.weight = weight;
    s.covered = std::move(covered);
    if (nontrivial(s) == 2) s.d = first_side < 0 ? 0 : first_side;
    emit(std::move(s), push_rec(L.rec, R.rec), {li, ri});
  }

  // ---------------------------------------------------------------- rows

  int finish_row(std::vector<int> bag, RowFilter f, bool from_join) {
    std::vector<State> kept;
    kept.reserve(next.size());
    for (auto& s : next) {
      if (f.root && !s.cycle) continue;
      if (f.parent_forgets >= 0 && !s.cycle && terminal(s, f.parent_forgets)) continue;
      if (!from_join || nontrivial(s) != 2) s.d = nontrivial(s) == 2 ? std::max(s.d, 0) : -1;
      kept.push_back(std::move(s));
    }
    next.clear();
    index.clear();
    Row r;
    r.states = std::move(kept);
    r.bag = std::move(bag);
    r.filter = f;
    r.base = static_cast<std::uint32_t>(g_node.size());
    stats.states += r.states.size();
    stats.max_row = std::max<std::uint64_t>(stats.max_row, r.states.size());
    const int id = static_cast<int>(rows.size());
    rows.push_back(std::move(r));
    if (opt.measure) record(id);
    return id;
  }

  LocalSignature local(const State& s, const std::vector<int>& bag_in) const {
    auto bag = bag_in;
    std::sort(bag.begin(), bag.end());
    LocalSignature sig;
    sig.bag = bag;
    sig.path.assign(bag.size(), 1);
    sig.role.assign(bag.size(), Role::interior);
    if (s.cycle) {
      sig.kind[0] = Kind::close;
      sig.form = Form::cycle;
      return sig;
    }
    std::vector<int> id(s.frags.size(), 0);
    int used = 0, solos = 0;
    for (std::size_t j = 0; j < bag.size(); ++j) {
      const int v = bag[j];
      for (std::size_t f = 0; f < s.frags.size(); ++f) {
        const auto& fr = s.frags[f];
        if (std::find(fr.anchors.begin(), fr.anchors.end(), v) == fr.anchors.end()) continue;
        if (!id[f]) {
          id[f] = ++used;
          if (used <= 3) sig.kind[static_cast<std::size_t>(used - 1)] = fr.sum.kind;
        }
        sig.path[j] = static_cast<std::uint8_t>(std::min(id[f], 255));
        if (fr.trivial()) {
          sig.role[j] = Role::solo;
          ++solos;
        } else if (v == fr.front()) {
          sig.role[j] = Role::start;
        } else if (v == fr.back()) {
          sig.role[j] = Role::end;
        }
        break;
      }
    }
    const int nt = nontrivial(s);
    sig.form = nt == 1 ? Form::one_path : nt == 2 && solos == 0 ? Form::two_paths : Form::other;
    return sig;
  }

  void record(int id) {
    const auto& r = rows[static_cast<std::size_t>(id)];
    for (std::size_t i = 0; i < r.states.size(); ++i) {
      const auto& s = r.states[i];
      const auto l = local(s, r.bag);
      std::size_t sig = 0, map = 0;
      boost::hash_combine(sig, l.code());
      boost::hash_combine(sig, s.d);
      // fragments in order of first appearance in the sorted bag
      std::vector<const Frag*> order;
      for (int v : l.bag)
        for (const auto& f : s.frags)
          if (std::find(f.anchors.begin(), f.anchors.end(), v) != f.anchors.end()) {
            if (std::find(order.begin(), order.end(), &f) == order.end()) order.push_back(&f);
            break;
          }
      for (const auto* f : order) boost::hash_combine(map, f->sum.set.hash());
      if (s.cycle) boost::hash_combine(map, s.covered.hash());
      g_node.push_back(id);
      g_sig.push_back(sig);
      g_map.push_back(map);
      if (nontrivial(s) == 2 && !r.filter.parent_join) ++stats.two_path_misplaced;
      for (auto [a, b] : s.sources) {
        const auto gid = r.base + static_cast<std::uint32_t>(i);
        if (a >= 0 && child_a >= 0)
          g_edges.emplace_back(rows[static_cast<std::size_t>(child_a)].base + static_cast<std::uint32_t>(a), gid);
        if (b >= 0 && child_b >= 0)
          g_edges.emplace_back(rows[static_cast<std::size_t>(child_b)].base + static_cast<std::uint32_t>(b), gid);
      }
    }
  }

  int child_a = -1, child_b = -1;

  Stats finish(int root) {
    if (!opt.measure) return stats;
    const std::size_t total = g_node.size();
    std::vector<char> useful(total, 0);
    std::vector<std::vector<std::uint32_t>> into(total);
    for (auto [a, b] : g_edges) into[b].push_back(a);
    std::vector<std::uint32_t> stack;
    const auto& rr = rows[static_cast<std::size_t>(root)];
    for (std::size_t i = 0; i < rr.states.size(); ++i)
      if (rr.states[i].cycle) {
        useful[rr.base + i] = 1;
        stack.push_back(rr.base + static_cast<std::uint32_t>(i));
      }
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto p : into[v])
        if (!useful[p]) {
          useful[p] = 1;
          stack.push_back(p);
        }
    }
    auto pair_hash = [](int a, std::uint64_t b) {
      std::size_t h = 0;
      boost::hash_combine(h, a);
      boost::hash_combine(h, b);
      return h;
    };
    std::unordered_set<std::size_t> raw, use;
    std::unordered_map<std::size_t, std::uint64_t> seen;
    std::unordered_set<std::size_t> conflicted;
    for (std::size_t i = 0; i < total; ++i) {
      raw.insert(pair_hash(g_node[i], g_map[i]));
      if (useful[i]) {
        use.insert(pair_hash(g_node[i], g_map[i]));
        ++stats.useful_states;
      }
      auto key = pair_hash(g_node[i], g_sig[i]);
      auto [it, fresh] = seen.emplace(key, g_map[i]);
      if (!fresh && it->second != g_map[i]) conflicted.insert(key);
    }
    stats.distinct_mappings = use.size();
    stats.distinct_mappings_raw = raw.size();
    stats.mapping_conflicts = conflicted.size();
    return stats;
  }

  std::optional<Solution> best_cycle(int row) const {
    const State* best = nullptr;
    for (const auto& s : rows[static_cast<std::size_t>(row)].states)
      if (s.cycle && (!best || s.weight < best->weight)) best = &s;
    if (!best) return std::nullopt;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    std::unordered_set<std::uint64_t> edges;
    int va = -1, vb = -1;
    std::vector<int> stack{best->rec};
    while (!stack.empty()) {
      int r = stack.back();
      stack.pop_back();
      if (r < 0) continue;
      const auto& rc = recs[static_cast<std::size_t>(r)];
      for (int e = 0; e < 4; e += 2) {
        if (rc.e[e] < 0) continue;
        const int a = std::min(rc.e[e], rc.e[e + 1]), b = std::max(rc.e[e], rc.e[e + 1]);
        if (!edges.insert(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(b)).second) continue;
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
      }
      if (rc.wrap_a >= 0) va = rc.wrap_a, vb = rc.wrap_b;
      stack.push_back(rc.prev[0]);
      stack.push_back(rc.prev[1]);
    }
    if (va < 0) throw Error("cycle entry without a wrap edge");
    Solution sol;
    sol.kind = ProblemKind::cycle;
    sol.weight = best->weight;
    int prev = va, cur = vb;
    for (int step = 0; step < n; ++step) {
      sol.order.push_back(cur);
      const auto& nb = adj[static_cast<std::size_t>(cur)];
      if (nb.size() != 2) throw Error("reconstructed edge set is not a cycle");
      const int nxt = nb[0] == prev ? nb[1] : nb[0];
      prev = cur;
      cur = nxt;
    }
    return sol;
  }
};

Table::Table(const Instance& inst, Options opt) : impl_(std::make_unique<Impl>(inst, opt)) {}
Table::~Table() = default;
Table::Table(Table&&) noexcept = default;

int Table::leaf(const std::vector<int>& bag_vertices, RowFilter f) {
  auto& m = *impl_;
  std::vector<State> row(1);
  row[0].covered = VertexSet(static_cast<std::size_t>(m.n));
  for (std::size_t i = 0; i < bag_vertices.size(); ++i) {
    for (std::size_t si = 0; si < row.size(); ++si) m.introduce(row[si], -1, bag_vertices[i]);
    row.swap(m.next);
    m.next.clear();
    m.index.clear();
  }
  for (auto& s : row) s.sources.clear();
  m.next = std::move(row);
  m.child_a = m.child_b = -1;
  return m.finish_row(bag_vertices, f, false);
}

int Table::exchange(int child, int u, int w, RowFilter f) {
  auto& m = *impl_;
  const auto& c = m.rows[static_cast<std::size_t>(child)];
  for (std::size_t si = 0; si < c.states.size(); ++si) {
    State s = c.states[si];
    s.sources.clear();
    if (!m.forget(s, u)) {
      ++m.stats.forgotten_terminal;
      continue;
    }
    if (s.cycle) continue;  // nothing remains to introduce into a complete cycle
    m.introduce(s, static_cast<int>(si), w);
  }
  auto bag = c.bag;
  bag.erase(std::find(bag.begin(), bag.end(), u));
  bag.push_back(w);
  m.child_a = child;
  m.child_b = -1;
  return m.finish_row(std::move(bag), f, false);
}

int Table::join(int left, int right, RowFilter f) {
  auto& m = *impl_;
  const auto& l = m.rows[static_cast<std::size_t>(left)];
  const auto& r = m.rows[static_cast<std::size_t>(right)];
  for (std::size_t i = 0; i < l.states.size(); ++i)
    for (std::size_t j = 0; j < r.states.size(); ++j)
      m.join_pair(l.states[i], static_cast<int>(i), r.states[j], static_cast<int>(j), l.bag);
  m.child_a = left;
  m.child_b = right;
  return m.finish_row(l.bag, f, true);
}

std::vector<Table::Entry> Table::entries(int row) const {
  const auto& r = impl_->rows[static_cast<std::size_t>(row)];
  std::vector<Entry> out;
  for (const auto& s : r.states) {
    Entry e;
    e.signature.local = impl_->local(s, r.bag);
    if (s.d >= 0) e.signature.d = s.d ? Side::right : Side::left;
    e.weight = s.weight;
    e.placed = s.covered;
    e.cycle = s.cycle;
    out.push_back(std::move(e));
  }
  return out;
}

std::size_t Table::size(int row) const { return impl_->rows[static_cast<std::size_t>(row)].states.size(); }
std::optional<Solution> Table::best_cycle(int row) const { return impl_->best_cycle(row); }
Stats Table::finish(int root) { return impl_->finish(root); }

// ---------------------------------------------------------------- solvers

Result solve_cycle_tw3(const Instance& inst, const decomp::NormalTreeDecomposition& d, Options opt) {
  auto chk = decomp::validate(d, inst.graph);
  if (!chk.ok) throw decomp::DecompositionInvalid(chk.violation);
  if (chk.width > 3) throw decomp::DecompositionInvalid("tree decomposition is wider than 3");
  Result res;
  const int n = inst.size();
  if (n < 3 || d.nodes.empty()) return res;
  Instance ci = inst;
  ci.kind = ProblemKind::cycle;

  std::vector<int> parent(d.nodes.size(), -1);
  for (std::size_t i = 0; i < d.nodes.size(); ++i)
    for (int c : d.nodes[i].children) parent[static_cast<std::size_t>(c)] = static_cast<int>(i);
  auto filter = [&](int v) {
    RowFilter f;
    const int p = parent[static_cast<std::size_t>(v)];
    if (p < 0) {
      f.root = true;
      return f;
    }
    const auto& pn = d.nodes[static_cast<std::size_t>(p)];
    if (pn.kind == decomp::NodeKind::join)
      f.parent_join = true;
    else
      f.parent_forgets = pn.forgotten;
    return f;
  };

  Table t(ci, opt);
  std::vector<int> row(d.nodes.size(), -1);
  for (int v : d.postorder()) {
    const auto& nd = d.nodes[static_cast<std::size_t>(v)];
    switch (nd.kind) {
      case decomp::NodeKind::leaf:
        row[static_cast<std::size_t>(v)] = t.leaf(nd.bag.members(), filter(v));
        break;
      case decomp::NodeKind::exchange:
        row[static_cast<std::size_t>(v)] =
            t.exchange(row[static_cast<std::size_t>(nd.children[0])], nd.forgotten, nd.introduced, filter(v));
        break;
      case decomp::NodeKind::join:
        row[static_cast<std::size_t>(v)] = t.join(row[static_cast<std::size_t>(nd.children[0])],
                                                  row[static_cast<std::size_t>(nd.children[1])], filter(v));
        break;
    }
  }
  const int root = row[static_cast<std::size_t>(d.root)];
  res.solution = t.best_cycle(root);
  res.stats = t.finish(root);
  if (res.solution) {
    auto rep = validate_solution(ci, *res.solution);
    if (!rep.valid()) throw Error("solver produced an invalid cycle: " + rep.message);
  }
  return res;
}

Result solve_path_tw2(const Instance& inst, const decomp::TreeDecomposition& d, Options opt) {
  auto chk = decomp::validate(d, inst.graph);
  if (!chk.ok) throw decomp::DecompositionInvalid(chk.violation);
  if (chk.width > 2) throw decomp::DecompositionInvalid("tree decomposition is wider than 2");
  const int n = inst.size();
  Result res;
  if (n == 0) return res;
  if (n == 1) {
    res.solution = Solution{{0}, 0, ProblemKind::path};
    return res;
  }
  const int u = n;
  Instance ext;
  for (int v = 0; v < n; ++v) ext.graph.add_vertex(inst.graph.name(v));
  std::string uname = "universal";
  while (inst.graph.find(uname)) uname += "'";
  ext.graph.add_vertex(uname);
  for (auto [a, b] : inst.graph.edges()) ext.graph.add_edge(a, b, inst.graph.weight(a, b));
  for (int v = 0; v < n; ++v) ext.graph.add_edge(v, u, 0);
  auto pairs = inst.order.pairs();
  for (int v = 0; v < n; ++v) pairs.emplace_back(v, u);
  ext.order = close_order(n + 1, pairs);
  ext.kind = ProblemKind::cycle;
  ext.objective = inst.objective;

  auto ed = decomp::with_vertex(d, u, static_cast<std::size_t>(n + 1));
  auto nd = n + 1 <= 4 ? decomp::single_leaf(n + 1) : decomp::normalize_tree(ed, ext.graph);
  auto cyc = solve_cycle_tw3(ext, nd, opt);
  res.stats = cyc.stats;
  if (!cyc.solution) return res;
  Solution sol;
  sol.kind = ProblemKind::path;
  sol.weight = cyc.solution->weight;
  for (int v : cyc.solution->order)
    if (v != u) sol.order.push_back(v);
  auto rep = validate_solution(inst, sol);
  if (!rep.valid()) throw Error("solver produced an invalid path: " + rep.message);
  res.solution = std::move(sol);
  return res;
}

}  // namespace pohp::tw
