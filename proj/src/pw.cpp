#include "pohp/pw.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <boost/container_hash/hash.hpp>

namespace pohp::pw {

using segments::BlockSummary;
using segments::Kind;

// ---------------------------------------------------------------- signatures

std::uint64_t LocalSignature::code() const {
  std::uint64_t c = 0;
  for (std::size_t j = 0; j < bag.size() && j < 8; ++j) {
    c |= static_cast<std::uint64_t>((path[j] - 1) & 3) << (4 * j);
    c |= static_cast<std::uint64_t>(role[j]) << (4 * j + 2);
  }
  for (std::size_t p = 0; p < 3; ++p)
    if (kind[p] == Kind::close) c |= std::uint64_t{1} << (32 + p);
  c |= static_cast<std::uint64_t>(form) << 35;
  c |= static_cast<std::uint64_t>(bag.size()) << 40;
  return c;
}

int LocalSignature::path_count() const {
  int m = 0;
  for (auto p : path) m = std::max(m, static_cast<int>(p));
  return m;
}

int LocalSignature::nontrivial_count() const {
  int c = 0;
  for (auto r : role) c += r == Role::start;
  return c;
}

namespace {

// Structural validity of a role/path assignment; sets the form.
bool classify(LocalSignature& s, bool last_bag) {
  const int paths = s.path_count();
  int solos = 0, interior = 0, nontrivial = 0, closes = 0;
  for (int p = 1; p <= paths; ++p) {
    int members = 0, starts = 0, ends = 0, sol = 0;
    for (std::size_t j = 0; j < s.bag.size(); ++j) {
      if (s.path[j] != p) continue;
      ++members;
      starts += s.role[j] == Role::start;
      ends += s.role[j] == Role::end;
      sol += s.role[j] == Role::solo;
    }
    const auto kind = s.kind[static_cast<std::size_t>(p - 1)];
    if (sol) {
      if (members != 1 || kind != Kind::mid) return false;
      ++solos;
      continue;
    }
    if (starts == 0 && ends == 0) {
      // a path with no terminals in the bag is a closed cycle
      if (!last_bag || paths != 1 || kind != Kind::close) return false;
      s.form = Form::cycle;
      return true;
    }
    if (starts != 1 || ends != 1) return false;
    ++nontrivial;
    closes += kind == Kind::close;
    interior += members - 2;
  }
  if (nontrivial == 1 && solos <= 2) {
    s.form = Form::one_path;
    return true;
  }
  if (nontrivial == 2 && solos == 0 && interior == 1 && closes < 2) {
    s.form = Form::two_paths;
    return true;
  }
  return false;
}

void enumerate_local(LocalSignature& s, std::size_t j, int used, bool last_bag, std::vector<LocalSignature>& out) {
  if (j == s.bag.size()) {
    // kinds of paths beyond `used` stay mid; branch over the rest
    for (int mask = 0; mask < (1 << used); ++mask) {
      LocalSignature t = s;
      for (int p = 0; p < used; ++p) t.kind[static_cast<std::size_t>(p)] = (mask >> p) & 1 ? Kind::close : Kind::mid;
      if (classify(t, last_bag)) out.push_back(std::move(t));
    }
    return;
  }
  for (int p = 1; p <= std::min(used + 1, 3); ++p) {
    s.path[j] = static_cast<std::uint8_t>(p);
    for (Role r : {Role::start, Role::end, Role::interior, Role::solo}) {
      s.role[j] = r;
      enumerate_local(s, j + 1, std::max(used, p), last_bag, out);
    }
  }
}

std::vector<int> bag_list(const VertexSet& b) { return b.members(); }

}  // namespace

std::vector<LocalSignature> local_signatures(const std::vector<int>& bag, bool last_bag) {
  LocalSignature s;
  s.bag = bag;
  std::sort(s.bag.begin(), s.bag.end());
  s.path.assign(bag.size(), 0);
  s.role.assign(bag.size(), Role::solo);
  std::vector<LocalSignature> out;
  enumerate_local(s, 0, 0, last_bag, out);
  return out;
}

std::vector<PwSignature> enumerate_signatures(const decomp::NormalPathDecomposition& d, int i) {
  const int k = static_cast<int>(d.bags.size());
  if (i < 1 || i > k) throw std::out_of_range("bag index out of range");
  std::vector<PwSignature> out;
  std::vector<std::vector<LocalSignature>> earlier;
  for (int l = 1; l < i; ++l) {
    std::vector<LocalSignature> two;
    for (auto& s : local_signatures(bag_list(d.bags[static_cast<std::size_t>(l - 1)]), false))
      if (s.form == Form::two_paths) two.push_back(std::move(s));
    earlier.push_back(std::move(two));
  }
  for (auto& s : local_signatures(bag_list(d.bags[static_cast<std::size_t>(i - 1)]), i == k)) {
    if (s.form != Form::two_paths) {
      out.push_back({s, 0, std::nullopt});
      continue;
    }
    out.push_back({s, i, std::nullopt});
    for (int l = 1; l < i; ++l)
      for (const auto& t : earlier[static_cast<std::size_t>(l - 1)]) out.push_back({s, l, t});
  }
  return out;
}

std::uint64_t count_signatures(const decomp::NormalPathDecomposition& d, int i) {
  const int k = static_cast<int>(d.bags.size());
  if (i < 1 || i > k) throw std::out_of_range("bag index out of range");
  auto tally = [&](int b, bool last, std::uint64_t& others, std::uint64_t& two) {
    others = two = 0;
    for (const auto& s : local_signatures(bag_list(d.bags[static_cast<std::size_t>(b - 1)]), last))
      (s.form == Form::two_paths ? two : others) += 1;
  };
  std::uint64_t earlier = 0, o = 0, t = 0;
  for (int l = 1; l < i; ++l) {
    tally(l, false, o, t);
    earlier += t;
  }
  tally(i, i == k, o, t);
  return o + t * (1 + earlier);
}

// ---------------------------------------------------------------- table

namespace {

struct PFrag {
  int front = -1, back = -1;
  BlockSummary sum;
};

struct State {
  std::vector<PFrag> frags;
  Weight weight = 0;
  int rec = -1;
  int ell = 0;
  std::uint64_t origin = 0;
  bool cycle = false;
  std::vector<int> sources;  // measure mode: indices into the previous row
};

struct Rec {
  int prev = -1;
  int e[4] = {-1, -1, -1, -1};  // up to two edges
  int wrap_a = -1, wrap_b = -1;  // wrap edge, oriented (v_n, v_1)
};

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& k) const { return boost::hash_range(k.begin(), k.end()); }
};

int nontrivial(const State& s) {
  int c = 0;
  for (const auto& f : s.frags) c += f.front != f.back;
  return c;
}

}  // namespace

struct Table::Impl {
  const Instance& inst;
  Options opt;
  int n;
  std::vector<int> bag;
  int bag_index = 0;  // 1-based once the first bag is complete
  bool last = false;
  std::vector<State> row;
  std::vector<Rec> recs;
  Stats stats;
  std::unordered_map<std::uint64_t, LocalSignature> decoded;

  // measure mode, indexed by global entry id
  std::vector<int> g_bag;
  std::vector<std::uint64_t> g_sig, g_map, g_local;
  std::vector<char> g_two_old;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> g_edges;  // (source, target)
  static constexpr std::uint32_t no_row = ~std::uint32_t{0};
  std::uint32_t prev_base = no_row;

  // scratch for the row under construction
  std::vector<State> next;
  std::unordered_map<std::vector<std::uint64_t>, int, KeyHash> index;

  Impl(const Instance& i, Options o) : inst(i), opt(o), n(i.size()) {}

  std::vector<std::uint64_t> key(const State& s) const {
    std::vector<std::uint64_t> k;
    k.reserve(4 + s.frags.size() * 12);
    k.push_back(s.cycle);
    k.push_back(static_cast<std::uint64_t>(s.ell));
    k.push_back(s.origin);
    std::vector<std::size_t> idx(s.frags.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s.frags[a].front < s.frags[b].front; });
    auto put = [&](const VertexSet& v) {
      for (std::size_t w = 0; w < v.word_count(); ++w) k.push_back(v.word(w));
    };
    // A consistent close fragment has an up-closed tail and a down-closed
    // head, so vertices added later cannot tell two of its splits apart: the
    // vertex set alone identifies it.
    for (auto i : idx) {
      const auto& f = s.frags[i];
      k.push_back(f.sum.kind == Kind::close);
      k.push_back(static_cast<std::uint64_t>(f.front));
      k.push_back(static_cast<std::uint64_t>(f.back));
      put(f.sum.set);
    }
    return k;
  }

  bool consistent(const std::vector<PFrag>& frags) const {
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

  void emit(const State& from, int from_index, std::vector<PFrag>&& frags, Weight add, Rec rec, bool cycle) {
    if (!consistent(frags)) return;
    ++stats.transitions;
    State cand;
    cand.frags = std::move(frags);
    cand.weight = from.weight + add;
    cand.cycle = cycle;
    if (!cycle && nontrivial(cand) == 2) {
      if (nontrivial(from) == 2 && from.ell > 0) {
        cand.ell = from.ell;
        cand.origin = from.origin;
      } else {
        cand.ell = std::max(bag_index, 1);
      }
    }
    auto k = key(cand);
    auto it = index.find(k);
    if (it == index.end()) {
      rec.prev = from.rec;
      cand.rec = static_cast<int>(recs.size());
      recs.push_back(rec);
      if (opt.measure) cand.sources.push_back(from_index);
      index.emplace(std::move(k), static_cast<int>(next.size()));
      next.push_back(std::move(cand));
      return;
    }
    auto& have = next[static_cast<std::size_t>(it->second)];
    if (opt.measure) have.sources.push_back(from_index);
    if (cand.weight < have.weight) {
      rec.prev = from.rec;
      have.weight = cand.weight;
      have.rec = static_cast<int>(recs.size());
      recs.push_back(rec);
    }
  }

  static Rec edges(int a, int b, int c = -1, int d = -1) {
    Rec r;
    r.e[0] = a;
    r.e[1] = b;
    r.e[2] = c;
    r.e[3] = d;
    return r;
  }

  // All ways of adding w to state s (index si of the current row).
  void expand(const State& s, int si, int w) {
    const auto& g = inst.graph;
    const auto solo = segments::solo_summary(inst.order, w);
    const PFrag wf{w, w, solo};
    const std::size_t k = s.frags.size();
    std::size_t placed = 0;
    for (const auto& f : s.frags) placed += f.sum.set.count();
    const bool covers = placed + 1 == static_cast<std::size_t>(n);

    {
      auto fr = s.frags;
      fr.push_back(wf);
      emit(s, si, std::move(fr), 0, Rec{}, false);
    }

    BlockSummary tmp, tmp2;
    for (std::size_t j = 0; j < k; ++j) {
      const auto& f = s.frags[j];
      for (int flag = 0; flag < 2; ++flag) {
        if (g.adjacent(f.back, w) && segments::concat_summary(f.sum, solo, flag, tmp)) {
          auto fr = s.frags;
          fr[j] = PFrag{f.front, w, tmp};
          Rec r = edges(f.back, w);
          if (flag) r.wrap_a = f.back, r.wrap_b = w;
          emit(s, si, std::move(fr), g.weight(f.back, w), r, false);
        }
        if (g.adjacent(w, f.front) && segments::concat_summary(solo, f.sum, flag, tmp)) {
          auto fr = s.frags;
          fr[j] = PFrag{w, f.back, tmp};
          Rec r = edges(w, f.front);
          if (flag) r.wrap_a = w, r.wrap_b = f.front;
          emit(s, si, std::move(fr), g.weight(w, f.front), r, false);
        }
      }
    }

    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) {
        if (j == l) continue;
        const auto& a = s.frags[j];
        const auto& b = s.frags[l];
        if (!g.adjacent(a.back, w) || !g.adjacent(w, b.front)) continue;
        for (int flags = 0; flags < 3; ++flags) {
          const bool f1 = flags == 1, f2 = flags == 2;
          if (!segments::concat_summary(a.sum, solo, f1, tmp)) continue;
          if (!segments::concat_summary(tmp, b.sum, f2, tmp2)) continue;
          std::vector<PFrag> fr;
          fr.reserve(k - 1);
          for (std::size_t x = 0; x < k; ++x)
            if (x != j && x != l) fr.push_back(s.frags[x]);
          fr.push_back(PFrag{a.front, b.back, tmp2});
          Rec r = edges(a.back, w, w, b.front);
          if (f1) r.wrap_a = a.back, r.wrap_b = w;
          if (f2) r.wrap_a = w, r.wrap_b = b.front;
          emit(s, si, std::move(fr), g.weight(a.back, w) + g.weight(w, b.front), r, false);
        }
      }

    if (covers && k == 1 && s.frags[0].front != s.frags[0].back) {
      const auto& f = s.frags[0];
      if (g.adjacent(f.back, w) && g.adjacent(w, f.front)) {
        const Weight add = g.weight(f.back, w) + g.weight(w, f.front);
        if (f.sum.kind == Kind::close) {
          if (segments::concat_summary(f.sum, solo, false, tmp))
            emit(s, si, {PFrag{f.front, w, tmp}}, add, edges(f.back, w, w, f.front), true);
        } else {
          // the wrap is the new edge into w or the closing edge out of it
          if (segments::concat_summary(f.sum, solo, true, tmp)) {
            Rec r = edges(f.back, w, w, f.front);
            r.wrap_a = f.back, r.wrap_b = w;
            emit(s, si, {PFrag{f.front, w, tmp}}, add, r, true);
          }
          if (segments::concat_summary(f.sum, solo, false, tmp)) {
            Rec r = edges(f.back, w, w, f.front);
            r.wrap_a = w, r.wrap_b = f.front;
            emit(s, si, {PFrag{f.front, w, tmp}}, add, r, true);
          }
        }
      }
    }
  }

  static bool terminal(const State& s, int v) {
    for (const auto& f : s.frags)
      if (f.front == v || f.back == v) return true;
    return false;
  }

  void introduce(int u, int w, int next_forget, bool full_bag) {
    next.clear();
    index.clear();
    if (row.empty() && bag.empty() && u < 0) {
      // very first vertex of the first bag
      State root;
      row.push_back(root);
    }
    for (std::size_t si = 0; si < row.size(); ++si) {
      const auto& s = row[si];
      if (u >= 0 && terminal(s, u)) {
        ++stats.forgotten_terminal;
        continue;
      }
      expand(s, static_cast<int>(si), w);
    }
    if (u >= 0) bag.erase(std::find(bag.begin(), bag.end(), u));
    bag.insert(std::upper_bound(bag.begin(), bag.end(), w), w);

    if (full_bag) {
      std::vector<State> kept;
      kept.reserve(next.size());
      for (auto& s : next) {
        if (next_forget >= 0 ? terminal(s, next_forget) : (last && !s.cycle)) continue;
        kept.push_back(std::move(s));
      }
      next.swap(kept);
      for (auto& s : next)
        if (!s.cycle && s.ell == bag_index && nontrivial(s) == 2) s.origin = local(s).code();
    }
    if (opt.measure) record(full_bag);
    row.swap(next);
    next.clear();
    if (full_bag) {
      stats.states += row.size();
      stats.max_row = std::max<std::uint64_t>(stats.max_row, row.size());
    }
  }

  LocalSignature local(const State& s) const {
    LocalSignature sig;
    sig.bag = bag;
    sig.path.assign(bag.size(), 0);
    sig.role.assign(bag.size(), Role::interior);
    std::vector<int> id(s.frags.size(), 0);
    int used = 0;
    for (std::size_t j = 0; j < bag.size(); ++j) {
      const int v = bag[j];
      for (std::size_t f = 0; f < s.frags.size(); ++f) {
        const auto& fr = s.frags[f];
        if (!fr.sum.set.test(v)) continue;
        if (!id[f]) {
          id[f] = ++used;
          if (used <= 3) sig.kind[static_cast<std::size_t>(used - 1)] = fr.sum.kind;
        }
        sig.path[j] = static_cast<std::uint8_t>(std::min(id[f], 255));
        const int a = fr.front, b = fr.back;
        if (s.cycle)
          sig.role[j] = Role::interior;
        else if (a == b)
          sig.role[j] = Role::solo;
        else if (v == a)
          sig.role[j] = Role::start;
        else if (v == b)
          sig.role[j] = Role::end;
        break;
      }
    }
    const int nt = nontrivial(s);
    int solos = 0;
    for (auto r : sig.role) solos += r == Role::solo;
    if (s.cycle)
      sig.form = Form::cycle;
    else if (used <= 3 && nt == 1 && solos <= 2)
      sig.form = Form::one_path;
    else if (used == 2 && nt == 2)
      sig.form = Form::two_paths;
    else
      sig.form = Form::other;
    return sig;
  }

  std::uint64_t full_code(const State& s, const LocalSignature& l) const {
    std::size_t h = 0;
    boost::hash_combine(h, l.code());
    if (l.form == Form::two_paths) {
      boost::hash_combine(h, s.ell);
      if (s.ell < bag_index) boost::hash_combine(h, s.origin);
    }
    return h;
  }

  std::uint64_t mapping(const State& s) const {
    // fragments in order of first appearance in the bag
    std::vector<std::size_t> order;
    for (int v : bag)
      for (std::size_t f = 0; f < s.frags.size(); ++f)
        if (s.frags[f].sum.set.test(v)) {
          if (std::find(order.begin(), order.end(), f) == order.end()) order.push_back(f);
          break;
        }
    std::size_t h = 0;
    for (auto f : order) boost::hash_combine(h, s.frags[f].sum.set.hash());
    return h;
  }

  void record(bool full_bag) {
    const auto base = static_cast<std::uint32_t>(g_bag.size());
    for (std::size_t i = 0; i < next.size(); ++i) {
      const auto& s = next[i];
      int b = full_bag ? bag_index : 0;
      std::uint64_t sig = 0, map = 0, loc = 0;
      bool two_old = false;
      if (full_bag) {
        auto l = local(s);
        sig = full_code(s, l);
        map = mapping(s);
        two_old = l.form == Form::two_paths && s.ell < bag_index;
        loc = l.code();
        decoded.emplace(l.code(), l);
      }
      g_bag.push_back(b);
      g_sig.push_back(sig);
      g_map.push_back(map);
      g_local.push_back(loc);
      g_two_old.push_back(two_old);
      if (prev_base != no_row)
        for (int src : s.sources)
          g_edges.emplace_back(prev_base + static_cast<std::uint32_t>(src), base + static_cast<std::uint32_t>(i));
    }
    prev_base = base;
  }

  Stats finish() {
    if (!opt.measure) return stats;
    const std::size_t total = g_bag.size();
    std::vector<char> useful(total, 0);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t i = prev_base == no_row ? 0 : prev_base; i < total; ++i)
      if (last && g_bag[i] == bag_index) {
        useful[i] = 1;
        stack.push_back(i);
      }
    std::vector<std::vector<std::uint32_t>> into(total);
    for (auto [a, b] : g_edges) into[b].push_back(a);
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto p : into[v])
        if (!useful[p]) {
          useful[p] = 1;
          stack.push_back(p);
        }
    }
    auto pair_hash = [](int b, std::uint64_t x) {
      std::size_t h = 0;
      boost::hash_combine(h, b);
      boost::hash_combine(h, x);
      return h;
    };
    std::unordered_set<std::size_t> raw, use;
    std::unordered_map<std::size_t, std::uint64_t> seen;
    std::unordered_set<std::size_t> conflicted;
    for (std::size_t i = 0; i < total; ++i) {
      if (g_bag[i] < 1) continue;
      raw.insert(pair_hash(g_bag[i], g_map[i]));
      if (useful[i]) {
        use.insert(pair_hash(g_bag[i], g_map[i]));
        ++stats.useful_states;
      }
      auto key = pair_hash(g_bag[i], g_sig[i]);
      auto [it, fresh] = seen.emplace(key, g_map[i]);
      if (!fresh && it->second != g_map[i]) conflicted.insert(key);
    }
    stats.distinct_mappings = use.size();
    stats.distinct_mappings_raw = raw.size();
    stats.mapping_conflicts = conflicted.size();
    // predecessor signatures feeding each old two-path signature
    // predecessors that differ in more than the mid/close labels are conflicts
    constexpr std::uint64_t kind_bits = std::uint64_t{7} << 32;
    std::unordered_map<std::size_t, std::unordered_set<std::uint64_t>> feeders, shapes;
    for (auto [a, b] : g_edges)
      if (g_two_old[b] && g_bag[a] >= 1) {
        auto k = pair_hash(g_bag[b], g_sig[b]);
        feeders[k].insert(g_sig[a]);
        shapes[k].insert(g_local[a] & ~kind_bits);
      }
    for (const auto& [k, f] : shapes) stats.predecessor_conflicts += f.size() > 1;
    for (const auto& [k, f] : feeders) stats.kind_only_predecessors += f.size() > 1 && shapes[k].size() == 1;
    return stats;
  }

  PwSignature signature_of(const State& s) const {
    auto l = local(s);
    PwSignature sig{l, 0, std::nullopt};
    if (l.form == Form::two_paths) {
      sig.ell = s.ell;
      if (s.ell < bag_index) {
        auto it = decoded.find(s.origin);
        if (it != decoded.end()) sig.tau = it->second;
      }
    }
    return sig;
  }

  std::optional<Solution> best_cycle() const {
    const State* best = nullptr;
    for (const auto& s : row)
      if (s.cycle && (!best || s.weight < best->weight)) best = &s;
    if (!best) return std::nullopt;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    std::vector<std::pair<int, int>> seen_edges;
    int va = -1, vb = -1;
    for (int r = best->rec; r >= 0; r = recs[static_cast<std::size_t>(r)].prev) {
      const auto& rc = recs[static_cast<std::size_t>(r)];
      for (int e = 0; e < 4; e += 2) {
        if (rc.e[e] < 0) continue;
        std::pair<int, int> p{std::min(rc.e[e], rc.e[e + 1]), std::max(rc.e[e], rc.e[e + 1])};
        if (std::find(seen_edges.begin(), seen_edges.end(), p) != seen_edges.end()) continue;
        seen_edges.push_back(p);
        adj[static_cast<std::size_t>(p.first)].push_back(p.second);
        adj[static_cast<std::size_t>(p.second)].push_back(p.first);
      }
      if (rc.wrap_a >= 0) va = rc.wrap_a, vb = rc.wrap_b;
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
      int nxt = nb[0] == prev ? nb[1] : nb[0];
      prev = cur;
      cur = nxt;
    }
    return sol;
  }
};

Table::Table(const Instance& inst, Options opt) : impl_(std::make_unique<Impl>(inst, opt)) {}
Table::~Table() = default;
Table::Table(Table&&) noexcept = default;

void Table::start(const std::vector<int>& bag_vertices, int next_forget) {
  auto& m = *impl_;
  m.last = next_forget < 0;
  m.bag.clear();
  m.row.clear();
  m.bag_index = 0;
  m.prev_base = Impl::no_row;
  for (std::size_t i = 0; i < bag_vertices.size(); ++i) {
    const bool full = i + 1 == bag_vertices.size();
    if (full) m.bag_index = 1;
    m.introduce(-1, bag_vertices[i], next_forget, full);
  }
}

void Table::step(int u, int w, int next_forget) {
  auto& m = *impl_;
  m.last = next_forget < 0;
  ++m.bag_index;
  m.introduce(u, w, next_forget, true);
}

std::vector<Table::Entry> Table::entries() const {
  std::vector<Entry> out;
  for (const auto& s : impl_->row) {
    Entry e;
    e.signature = impl_->signature_of(s);
    e.weight = s.weight;
    e.placed = VertexSet(static_cast<std::size_t>(impl_->n));
    for (const auto& f : s.frags) e.placed |= f.sum.set;
    e.cycle = s.cycle;
    out.push_back(std::move(e));
  }
  return out;
}

std::size_t Table::size() const { return impl_->row.size(); }
std::optional<Solution> Table::best_cycle() const { return impl_->best_cycle(); }
Stats Table::finish() { return impl_->finish(); }

// ---------------------------------------------------------------- solvers

Result solve_cycle_pw4(const Instance& inst, const decomp::NormalPathDecomposition& d, Options opt) {
  auto chk = decomp::validate(d, inst.graph);
  if (!chk.ok) throw decomp::DecompositionInvalid(chk.violation);
  if (chk.width > 4) throw decomp::DecompositionInvalid("path decomposition is wider than 4");
  Result res;
  const int n = inst.size();
  if (n < 3 || d.bags.empty()) return res;
  Instance ci = inst;
  ci.kind = ProblemKind::cycle;

  Table t(ci, opt);
  const std::size_t k = d.bags.size();
  auto nf = [&](std::size_t i) { return i < k ? d.forgotten[i] : -1; };
  t.start(d.bags[0].members(), nf(1));
  for (std::size_t i = 1; i < k; ++i) t.step(d.forgotten[i], d.introduced[i], nf(i + 1));
  res.solution = t.best_cycle();
  res.stats = t.finish();
  if (res.solution) {
    auto rep = validate_solution(ci, *res.solution);
    if (!rep.valid()) throw Error("solver produced an invalid cycle: " + rep.message);
  }
  return res;
}

Result solve_path_pw3(const Instance& inst, const decomp::PathDecomposition& d, Options opt) {
  auto chk = decomp::validate(d, inst.graph);
  if (!chk.ok) throw decomp::DecompositionInvalid(chk.violation);
  if (chk.width > 3) throw decomp::DecompositionInvalid("path decomposition is wider than 3");
  const int n = inst.size();
  Result res;
  if (n == 0) return res;
  if (n == 1) {
    res.solution = Solution{{0}, 0, ProblemKind::path};
    return res;
  }

  // G + u, u adjacent to everything at weight 0 and the unique maximum of π
  const int u = n;
  Instance ext;
  ext.graph = Graph(0);
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
  auto nd = n + 1 <= 5 ? decomp::single_bag(n + 1) : decomp::normalize_path(ed, ext.graph);
  auto cyc = solve_cycle_pw4(ext, nd, opt);
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

}  // namespace pohp::pw
