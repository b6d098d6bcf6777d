#include "acl/extension.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "acl/errors.hpp"

namespace acl {

namespace {

struct Search {
  const Category& cat;
  const ExtensionProblem& p;
  const SearchLimits& limits;
  ExtensionKind kind;

  int n = 0;
  std::vector<int> order;  // top-down
  std::vector<std::vector<int>> covers;
  std::vector<std::optional<Morphism>> leg_of;
  std::vector<std::optional<Object>> obj;
  std::vector<std::optional<Morphism>> arr;  // n * n
  std::vector<Object> candidates;
  std::vector<bool> free;
  std::map<std::string, Diagram> found;
  std::map<int, std::pair<Object, std::vector<Morphism>>> aut_cache;
  bool done = false;

  Search(const Category& c, const ExtensionProblem& pr, const SearchLimits& l,
         ExtensionKind k)
      : cat(c), p(pr), limits(l), kind(k) {}

  const Morphism* pinned_arrow(int a, int b) const {
    for (const auto& [x, y, f] : p.pinned_arrows)
      if (x == a && y == b) return &f;
    return nullptr;
  }

  // Fills arr[a][*] from the chosen cover arrows; false on disagreement.
  bool extend_arrows(int a, const std::vector<Morphism>& cover_arrows) {
    arr[a * n + a] = cat.identity(*obj[a]);
    for (int c = 0; c < n; ++c) {
      if (c == a || !p.shape.leq(a, c)) continue;
      std::optional<Morphism> through;
      for (std::size_t k = 0; k < covers[a].size(); ++k) {
        int b = covers[a][k];
        if (!p.shape.leq(b, c)) continue;
        Morphism m = cat.compose(*arr[b * n + c], cover_arrows[k]);
        if (!through) {
          through = std::move(m);
        } else if (!(*through == m)) {
          return false;
        }
      }
      arr[a * n + c] = std::move(through);
    }
    return true;
  }

  // Relabelling a free object by an automorphism gives an isomorphic
  // extension; keep only the choice whose outgoing arrows are smallest.
  bool minimal_labelling(int a, const std::vector<Morphism>& cover_arrows) {
    if (aut_cache.find(a) == aut_cache.end() || !(aut_cache[a].first == *obj[a]))
      aut_cache[a] = {*obj[a], cat.automorphisms(*obj[a])};
    const auto& group = aut_cache[a].second;
    if (group.size() <= 1) return true;
    std::string own;
    for (const auto& f : cover_arrows) own += canonical(f) + ';';
    for (const auto& g : group) {
      std::string moved;
      for (const auto& f : cover_arrows) moved += canonical(cat.compose(f, g)) + ';';
      if (moved < own) return false;
    }
    return true;
  }

  std::optional<Morphism> leg(int a) const {
    std::optional<Morphism> out;
    for (int m : p.shape.upper_max(a)) {
      Morphism via = cat.compose(*leg_of[m], *arr[a * n + m]);
      if (!out) {
        out = std::move(via);
      } else if (!(*out == via)) {
        return std::nullopt;
      }
    }
    return out;
  }

  void clear(int a) {
    for (int c = 0; c < n; ++c) arr[a * n + c].reset();
  }

  void leaf() {
    std::vector<std::tuple<int, int, Morphism>> gens;
    for (int a = 0; a < n; ++a)
      for (int b : covers[a]) gens.emplace_back(a, b, *arr[a * n + b]);
    std::vector<Object> objects;
    for (auto& o : obj) objects.push_back(*o);
    Diagram d = Diagram::from_generators(cat, p.shape, std::move(objects), gens);
    if (kind == ExtensionKind::anticolimit) {
      std::vector<Morphism> legs;
      for (int a = 0; a < n; ++a) legs.push_back(*leg(a));
      if (!cat.is_colimit(d, p.sink.apex, legs)) return;
    }
    auto key = canonical_up_to_iso(cat, d, free);
    if (found.emplace(std::move(key), std::move(d)).second &&
        found.size() >= limits.max_results)
      done = true;
  }

  void visit(std::size_t pos) {
    if (done) return;
    if (pos == order.size()) {
      leaf();
      return;
    }
    const int a = order[pos];
    if (!free[a]) {
      visit(pos + 1);
      return;
    }
    std::vector<Object> own;
    if (p.objects[a]) own.push_back(*p.objects[a]);
    const auto& objs = p.objects[a] ? own : candidates;
    for (const auto& o : objs) {
      obj[a] = o;
      std::vector<std::vector<Morphism>> homs;
      bool empty = false;
      for (int b : covers[a]) {
        homs.push_back(cat.hom(o, *obj[b]));
        if (homs.back().empty()) empty = true;
      }
      if (empty) continue;
      std::vector<Morphism> pick(covers[a].size());
      std::function<void(std::size_t)> choose = [&](std::size_t k) {
        if (done) return;
        if (k == pick.size()) {
          if (!extend_arrows(a, pick)) return;
          if (!minimal_labelling(a, pick)) {
            clear(a);
            return;
          }
          if (kind == ExtensionKind::any || leg(a)) visit(pos + 1);
          clear(a);
          return;
        }
        for (const auto& f : homs[k]) {
          pick[k] = f;
          choose(k + 1);
          if (done) return;
        }
      };
      choose(0);
      if (done) break;
    }
    obj[a].reset();
  }

  std::vector<Diagram> run() {
    n = p.shape.size();
    if (static_cast<int>(p.objects.size()) != n ||
        static_cast<int>(p.pinned.size()) != n)
      throw ValidationError("extension problem: per-element data has wrong size");
    auto maxima = p.shape.maximal();
    if (maxima.size() != p.sink.legs.size())
      throw ValidationError("extension problem: one sink leg per maximal element");
    leg_of.assign(n, std::nullopt);
    for (std::size_t k = 0; k < maxima.size(); ++k) leg_of[maxima[k]] = p.sink.legs[k];
    covers.assign(n, {});
    for (auto [a, b] : p.shape.covering_pairs()) covers[a].push_back(b);
    free.assign(n, false);
    for (int a = 0; a < n; ++a) {
      free[a] = !p.pinned[a];
      if (p.pinned[a] && !p.objects[a])
        throw ValidationError("extension problem: pinned element without object");
      if (p.shape.is_maximal(a) && !p.pinned[a])
        throw ValidationError("extension problem: maximal elements must be pinned");
      if (p.pinned[a])
        for (int b : covers[a])
          if (!p.pinned[b])
            throw ValidationError("extension problem: pinned part is not up-closed");
    }
    auto ext = p.shape.linear_extension();
    order.assign(ext.rbegin(), ext.rend());
    obj.assign(n, std::nullopt);
    arr.assign(static_cast<std::size_t>(n) * n, std::nullopt);
    // The pinned part is fixed once, up front.
    for (int a : order) {
      if (free[a]) continue;
      obj[a] = *p.objects[a];
      std::vector<Morphism> pick;
      for (int b : covers[a]) {
        const Morphism* f = pinned_arrow(a, b);
        if (!f)
          throw ValidationError("extension problem: missing pinned arrow " +
                                p.shape.name(a) + " -> " + p.shape.name(b));
        pick.push_back(*f);
      }
      if (!extend_arrows(a, pick))
        throw ValidationError("extension problem: pinned part is not functorial");
      if (kind != ExtensionKind::any && !leg(a)) return {};
    }
    bool any_free = false;
    for (int a = 0; a < n; ++a) any_free = any_free || free[a];
    if (any_free) candidates = cat.objects_up_to(limits.bound);
    if (limits.max_results > 0) visit(0);
    std::vector<Diagram> out;
    for (auto& [key, d] : found) out.push_back(std::move(d));
    return out;
  }
};

}  // namespace

std::vector<Diagram> search_extensions(const Category& cat,
                                       const ExtensionProblem& problem,
                                       const SearchLimits& limits,
                                       ExtensionKind kind) {
  return Search(cat, problem, limits, kind).run();
}

std::string canonical_up_to_iso(const Category& cat, const Diagram& d,
                                const std::vector<bool>& free) {
  const int n = d.size();
  std::string prefix;
  for (int a = 0; a < n; ++a) prefix += canonical(d.object(a)) + ';';
  std::vector<std::vector<Morphism>> groups(n), inverses(n);
  bool symmetric = false;
  for (int a = 0; a < n; ++a) {
    if (!free[a]) continue;
    groups[a] = cat.automorphisms(d.object(a));
    if (groups[a].size() <= 1) {
      groups[a].clear();
      continue;
    }
    symmetric = true;
    const Morphism id = cat.identity(d.object(a));
    for (const auto& g : groups[a])
      for (const auto& h : groups[a])
        if (cat.compose(h, g) == id) {
          inverses[a].push_back(h);
          break;
        }
  }
  if (!symmetric) return prefix + canonical(d);

  // Top-down: relabel each element so that its outgoing arrows are smallest
  // given the labels above, branching only on ties.
  const auto ext = d.shape().linear_extension();
  const std::vector<int> order(ext.rbegin(), ext.rend());
  std::vector<std::vector<int>> covers(n);
  for (auto [x, y] : d.shape().covering_pairs()) covers[x].push_back(y);
  std::vector<std::optional<Morphism>> relabel(n);  // applied on the target side
  std::string best;
  bool first = true;
  std::string acc;
  std::function<void(std::size_t)> go = [&](std::size_t pos) {
    if (pos == order.size()) {
      if (first || acc < best) best = acc;
      first = false;
      return;
    }
    const int a = order[pos];
    auto out = [&](const std::optional<Morphism>& pre) {
      std::string s;
      for (int b : covers[a]) {
        Morphism f = d.arrow(a, b);
        if (pre) f = cat.compose(f, *pre);
        if (relabel[b]) f = cat.compose(*relabel[b], f);
        s += canonical(f);
        s += ';';
      }
      return s;
    };
    const std::size_t mark = acc.size();
    if (groups[a].empty()) {
      acc += out(std::nullopt);
      go(pos + 1);
      acc.resize(mark);
      return;
    }
    std::vector<std::string> strings;
    for (const auto& g : groups[a]) strings.push_back(out(g));
    const std::string low = *std::min_element(strings.begin(), strings.end());
    for (std::size_t k = 0; k < strings.size(); ++k) {
      if (strings[k] != low) continue;
      relabel[a] = inverses[a][k];
      acc += low;
      go(pos + 1);
      acc.resize(mark);
    }
    relabel[a].reset();
  };
  go(0);
  return prefix + best;
}

ExtensionProblem sink_problem(const FinPoset& shape, const Sink& sink) {
  ExtensionProblem p;
  p.shape = shape;
  p.objects.assign(shape.size(), std::nullopt);
  p.pinned.assign(shape.size(), false);
  auto maxima = shape.maximal();
  if (maxima.size() != sink.legs.size())
    throw ValidationError("sink has " + std::to_string(sink.legs.size()) +
                          " legs but the shape has " +
                          std::to_string(maxima.size()) + " maximal elements");
  for (std::size_t k = 0; k < maxima.size(); ++k) {
    p.objects[maxima[k]] = sink.legs[k].source();
    p.pinned[maxima[k]] = true;
  }
  p.sink = sink;
  return p;
}

}  // namespace acl
