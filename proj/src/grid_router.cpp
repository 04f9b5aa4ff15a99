#include "grid_router.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace pohp::forge::detail {

namespace {

// Frontier of height + 1 plugs, 6 bits each: plug r < height is the
// horizontal edge into row r, plug `height` the vertical edge into the
// current cell. Low 4 bits hold a label (equal labels mark the two open ends
// of one fragment; a label seen once belongs to a fragment whose other end is
// a path end), the top 2 bits the phase of the cell the edge leaves.
//
// Phases stay monotone along the path because edges may only join equal or
// consecutive phases and each consecutive pair is joined by exactly one edge:
// starting in phase 0, the path can then never step back.
constexpr int kBits = 6;
constexpr int kMaxPlugs = 10;
constexpr std::uint64_t kDone = 1ull << 60;
constexpr std::uint64_t kEndUsed = 1ull << 61;
constexpr std::uint64_t kStep0 = 1ull << 62;  // the 0-1 edge is placed
constexpr std::uint64_t kStep1 = 1ull << 63;  // the 1-2 edge is placed
constexpr std::uint64_t kFlags = kDone | kEndUsed | kStep0 | kStep1;

// history entry: parent index in the previous layer, choice in the top two
// bits (bit 30: edge right, bit 31: edge down)
using Back = std::uint32_t;
constexpr Back kParentMask = (1u << 30) - 1;

// open-addressing map from state to slot in the layer being built
class StateIndex {
 public:
  void reset(std::size_t expected) {
    std::size_t cap = 64;
    while (cap < expected * 2) cap <<= 1;
    if (keys_.size() < cap) {
      keys_.assign(cap, kEmpty);
      vals_.resize(cap);
    } else {
      std::fill(keys_.begin(), keys_.end(), kEmpty);
    }
    used_ = 0;
  }
  // slot of `key`, inserting `fresh` when absent; second = inserted
  std::pair<int, bool> find_or_insert(std::uint64_t key, int fresh) {
    if ((used_ + 1) * 2 > keys_.size()) grow();
    const std::size_t m = keys_.size() - 1;
    std::size_t h = hash(key) & m;
    while (keys_[h] != kEmpty) {
      if (keys_[h] == key) return {vals_[h], false};
      h = (h + 1) & m;
    }
    keys_[h] = key;
    vals_[h] = fresh;
    ++used_;
    return {fresh, true};
  }

 private:
  static constexpr std::uint64_t kEmpty = ~0ull;  // never a real state: kDone excludes open plugs
  static std::size_t hash(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
  void grow() {
    std::vector<std::uint64_t> k(keys_.size() * 2, kEmpty);
    std::vector<int> v(k.size());
    const std::size_t m = k.size() - 1;
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      if (keys_[i] == kEmpty) continue;
      std::size_t h = hash(keys_[i]) & m;
      while (k[h] != kEmpty) h = (h + 1) & m;
      k[h] = keys_[i];
      v[h] = vals_[i];
    }
    keys_.swap(k);
    vals_.swap(v);
  }
  std::vector<std::uint64_t> keys_;
  std::vector<int> vals_;
  std::size_t used_ = 0;
};

int field(std::uint64_t s, int i) { return static_cast<int>((s >> (kBits * i)) & 0x3F); }
int label(std::uint64_t s, int i) { return field(s, i) & 0xF; }
int phase(std::uint64_t s, int i) { return field(s, i) >> 4; }
std::uint64_t with_field(std::uint64_t s, int i, int v) {
  s &= ~(0x3Full << (kBits * i));
  return s | (static_cast<std::uint64_t>(v) << (kBits * i));
}
std::uint64_t with_label(std::uint64_t s, int i, int v) { return with_field(s, i, (field(s, i) & 0x30) | v); }

std::uint64_t normalize(std::uint64_t s, int plugs) {
  std::array<int, 16> map{};
  int next = 0;
  std::uint64_t out = s & kFlags;
  for (int i = 0; i < plugs; ++i) {
    const int v = label(s, i);
    if (!v) continue;
    if (!map[static_cast<std::size_t>(v)]) map[static_cast<std::size_t>(v)] = ++next;
    out = with_field(out, i, (field(s, i) & 0x30) | map[static_cast<std::size_t>(v)]);
  }
  return out;
}

int count(std::uint64_t s, int plugs, int lab) {
  int c = 0;
  for (int i = 0; i < plugs; ++i) c += label(s, i) == lab;
  return c;
}

bool any_plug(std::uint64_t s, int plugs) {
  for (int i = 0; i < plugs; ++i)
    if (label(s, i)) return true;
  return false;
}

}  // namespace

std::optional<std::vector<Cell>> route(const RouteRequest& req) {
  const int H = req.height, W = req.width, P = H + 1, K = req.phases;
  if (P > kMaxPlugs) throw std::invalid_argument("grid router supports at most 9 rows");
  if (K < 1 || K > 3) throw std::invalid_argument("grid router supports 1 to 3 phases");
  auto is_free = [&](int r, int c) {
    return r >= 0 && c >= 0 && r < H && c < W && req.free[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  };
  auto may_end = [&](int r, int c) {
    return req.end.empty() || req.end[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  };
  const int all_phases = (1 << K) - 1;
  auto mask_of = [&](int r, int c) {
    int m = req.allowed.empty() ? all_phases
                                : req.allowed[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] & all_phases;
    if (Cell{r, c} == req.start) m &= 1;
    return m;
  };
  const std::uint64_t all_steps = (K >= 2 ? kStep0 : 0) | (K >= 3 ? kStep1 : 0);
  int cells = 0;
  for (int r = 0; r < H; ++r)
    for (int c = 0; c < W; ++c) cells += is_free(r, c);
  if (!is_free(req.start.first, req.start.second)) return std::nullopt;
  if (cells == 1) return K == 1 ? std::optional<std::vector<Cell>>{{req.start}} : std::nullopt;

  // an edge from `from` (phase q) into `to` (phase p); returns the step flag it
  // sets, 0 for none, or ~0 when the edge is illegal
  auto step = [&](Cell from, int q, Cell to, int p) -> std::uint64_t {
    if (q == p) return 0;
    if (std::abs(q - p) != 1) return ~0ull;
    const int k = std::min(p, q);
    const Cell low = q < p ? from : to;
    const auto& g = req.gate[static_cast<std::size_t>(k)];
    if (g && *g != low) return ~0ull;
    return k == 0 ? kStep0 : kStep1;
  };

  std::vector<std::vector<Back>> history;
  std::vector<std::uint64_t> cur_state{0}, next_state;
  std::vector<Weight> cur_weight{0}, next_weight;
  StateIndex index;

  for (int c = 0; c < W; ++c)
    for (int r = 0; r < H; ++r) {
      std::vector<Back> back;
      next_state.clear();
      next_weight.clear();
      index.reset(cur_state.size());
      auto push = [&](std::uint64_t s, Weight w, int parent, int choice) {
        s = normalize(s, P);
        const Back b = static_cast<Back>(parent) | static_cast<Back>(choice) << 30;
        auto [slot, fresh] = index.find_or_insert(s, static_cast<int>(next_state.size()));
        if (fresh) {
          next_state.push_back(s);
          next_weight.push_back(w);
          back.push_back(b);
        } else if (w < next_weight[static_cast<std::size_t>(slot)]) {
          next_weight[static_cast<std::size_t>(slot)] = w;
          back[static_cast<std::size_t>(slot)] = b;
        }
      };
      const bool here = is_free(r, c);
      const bool canR = here && is_free(r, c + 1);
      const bool canD = here && is_free(r + 1, c);
      const bool is_start = Cell{r, c} == req.start;
      const int mask = here ? mask_of(r, c) : 0;
      for (int pi = 0; pi < static_cast<int>(cur_state.size()); ++pi) {
        const std::uint64_t s = cur_state[static_cast<std::size_t>(pi)];
        const Weight w0 = cur_weight[static_cast<std::size_t>(pi)];
        const int L = label(s, r), U = label(s, H);
        if (!here) {
          if (L || U) continue;
          push(s, w0, pi, 0);
          continue;
        }
        if (s & kDone) continue;
        Weight add = 0;
        if (L) add += req.weight({r, c - 1}, {r, c});
        if (U) add += req.weight({r - 1, c}, {r, c});
        const int in = (L != 0) + (U != 0);
        // degree options: 2 for path interiors, 1 for the start and one far end
        std::array<std::pair<int, bool>, 2> degs{};
        int nd = 0;
        if (is_start) {
          degs[nd++] = {1, false};
        } else {
          degs[nd++] = {2, false};
          if (!(s & kEndUsed) && may_end(r, c)) degs[nd++] = {1, true};
        }
        for (int p = 0; p < K; ++p) {
          if (!(mask >> p & 1)) continue;
          std::uint64_t flags = s & (kStep0 | kStep1);
          bool legal = true;
          auto enter = [&](int plug_index, Cell from) {
            const std::uint64_t f = step(from, phase(s, plug_index), {r, c}, p);
            if (f == ~0ull || (f & flags)) {
              legal = false;
              return;
            }
            flags |= f;
          };
          if (L) enter(r, {r, c - 1});
          if (U && legal) enter(H, {r - 1, c});
          if (!legal) continue;
          for (int di = 0; di < nd; ++di) {
            const int deg = degs[static_cast<std::size_t>(di)].first;
            std::uint64_t base = (s & ~(kStep0 | kStep1)) | flags;
            if (degs[static_cast<std::size_t>(di)].second) base |= kEndUsed;
            for (int choice = 0; choice < 4; ++choice) {
              const bool outR = choice & 1, outD = choice & 2;
              if ((outR && !canR) || (outD && !canD)) continue;
              if (in + outR + outD != deg) continue;
              std::uint64_t t = with_field(with_field(base, r, 0), H, 0);
              const int ink = p << 4;
              bool complete = false;
              if (in == 0) {
                const int fresh = 15;  // renamed by normalize
                if (outR) t = with_field(t, r, ink | fresh);
                if (outD) t = with_field(t, H, ink | fresh);
              } else if (in == 1) {
                const int a = L ? L : U;
                if (outR) t = with_field(t, r, ink | a);
                if (outD) t = with_field(t, H, ink | a);
                if (!outR && !outD && count(s, P, a) == 1) complete = true;
              } else {
                if (L == U) continue;  // closing a cycle
                const bool single = count(s, P, L) == 1 && count(s, P, U) == 1;
                for (int i = 0; i < P; ++i)
                  if (label(t, i) == U) t = with_label(t, i, L);
                if (single) complete = true;
              }
              if (complete) {
                if (any_plug(t, P)) continue;
                if ((t & all_steps) != all_steps) continue;
                t |= kDone;
              }
              push(t, w0 + add, pi, choice);
            }
          }
        }
      }
      if (next_state.size() > kParentMask) throw std::length_error("grid router frontier too large");
      history.push_back(std::move(back));
      cur_state.swap(next_state);
      cur_weight.swap(next_weight);
    }

  int best = -1;
  for (int i = 0; i < static_cast<int>(cur_state.size()); ++i)
    if ((cur_state[static_cast<std::size_t>(i)] & kDone) &&
        (best < 0 || cur_weight[static_cast<std::size_t>(i)] < cur_weight[static_cast<std::size_t>(best)]))
      best = i;
  if (best < 0) return std::nullopt;

  // collect chosen edges walking back through the layers
  std::vector<std::vector<Cell>> adj(static_cast<std::size_t>(H * W));
  auto link = [&](Cell a, Cell b) {
    adj[static_cast<std::size_t>(a.first * W + a.second)].push_back(b);
    adj[static_cast<std::size_t>(b.first * W + b.second)].push_back(a);
  };
  int idx = best;
  for (int cell = static_cast<int>(history.size()) - 1; cell >= 0; --cell) {
    const Back b = history[static_cast<std::size_t>(cell)][static_cast<std::size_t>(idx)];
    const int c = cell / H, r = cell % H;
    if (b >> 30 & 1) link({r, c}, {r, c + 1});
    if (b >> 31 & 1) link({r, c}, {r + 1, c});
    idx = static_cast<int>(b & kParentMask);
  }
  std::vector<Cell> path{req.start};
  Cell prev{-1, -1}, at = req.start;
  while (static_cast<int>(path.size()) < cells) {
    const auto& nb = adj[static_cast<std::size_t>(at.first * W + at.second)];
    Cell nxt{-1, -1};
    for (auto x : nb)
      if (x != prev) nxt = x;
    if (nxt.first < 0) return std::nullopt;
    prev = at;
    at = nxt;
    path.push_back(at);
  }
  return path;
}

}  // namespace pohp::forge::detail
