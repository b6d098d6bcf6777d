#pragma once

// Fixtures shared by the unit tests and the acceptance binary.

#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "acl/anticolimit.hpp"
#include "acl/fincat.hpp"
#include "acl/poset.hpp"

namespace fx {

using namespace acl;

inline Morphism fn(int n, int m, std::vector<int> img) {
  return Morphism::function(set_object(n), set_object(m), std::move(img));
}

inline Morphism om(int n, int m, const std::string& digits_text) {
  return ord_map(n, m, parse_digits(digits_text));
}

/// Nonempty subsets of {0,1,2} ordered by reverse inclusion.
inline FinPoset subsets3_op() {
  return FinPoset::from_relations(
      {"0", "1", "2", "01", "02", "12", "012"},
      {{"01", "0"}, {"01", "1"}, {"02", "0"}, {"02", "2"}, {"12", "1"},
       {"12", "2"}, {"012", "01"}, {"012", "02"}, {"012", "12"}});
}

/// J_n as a hypergraph poset.
inline FinPoset jn(int n) {
  Hypergraph h;
  for (int v = 0; v <= n; ++v) h.vertices.push_back("v" + std::to_string(v));
  for (int e = 0; e < n; ++e) {
    h.edges.push_back("e" + std::to_string(e));
    h.incidence.push_back({e, e + 1});
  }
  return hypergraph_to_poset(h);
}

/// Every FinSet sink of `legs` legs with sources of size <= max_src into an
/// apex of size 1..max_apex.
inline std::vector<Sink> all_set_sinks(int legs, int max_src, int max_apex) {
  std::vector<Sink> out;
  for (int c = 1; c <= max_apex; ++c) {
    Object apex = set_object(c);
    std::vector<std::vector<Morphism>> per_size;
    for (int s = 0; s <= max_src; ++s) per_size.push_back(finset()->hom(set_object(s), apex));
    std::vector<Morphism> all;
    for (auto& v : per_size) all.insert(all.end(), v.begin(), v.end());
    std::vector<std::size_t> idx(legs, 0);
    for (;;) {
      Sink k{{}, apex};
      for (int l = 0; l < legs; ++l) k.legs.push_back(all[idx[l]]);
      out.push_back(std::move(k));
      int l = legs - 1;
      while (l >= 0 && ++idx[l] == all.size()) idx[l--] = 0;
      if (l < 0) break;
    }
  }
  return out;
}

// Every monotone map ord n -> ord m.
inline std::vector<std::vector<int>> monotone(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> go = [&](int lo) {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v < m; ++v) {
      cur.push_back(v);
      go(v);
      cur.pop_back();
    }
  };
  go(0);
  return out;
}

inline Morphism random_set_map(std::mt19937& rng, int n, int m) {
  std::vector<int> img(n);
  for (auto& v : img) v = static_cast<int>(rng() % m);
  return fn(n, m, img);
}

}  // namespace fx
