#pragma once

#include <initializer_list>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pohp/core.hpp"

namespace testing_helpers {

struct E {
  const char* u;
  const char* v;
  pohp::Weight w = 0;
};

inline pohp::Instance make(std::initializer_list<const char*> names, std::initializer_list<E> edges,
                           std::initializer_list<std::pair<const char*, const char*>> prec,
                           pohp::ProblemKind kind = pohp::ProblemKind::path) {
  pohp::Instance inst;
  for (auto n : names) inst.graph.add_vertex(n);
  for (const auto& e : edges) inst.graph.add_edge(inst.graph.index_of(e.u), inst.graph.index_of(e.v), e.w);
  std::vector<std::pair<int, int>> pairs;
  for (auto [a, b] : prec) pairs.emplace_back(inst.graph.index_of(a), inst.graph.index_of(b));
  inst.order = pohp::close_order(inst.size(), pairs);
  inst.kind = kind;
  return inst;
}

inline std::vector<int> seq(const pohp::Instance& inst, std::initializer_list<const char*> names) {
  std::vector<int> out;
  for (auto n : names) out.push_back(inst.graph.index_of(n));
  return out;
}

}  // namespace testing_helpers
