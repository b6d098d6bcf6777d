// Times the FinSet anticolimit enumeration with and without OpenMP.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "acl/anticolimit.hpp"
#include "acl/fincat.hpp"

using namespace acl;

namespace {

struct Case {
  std::string name;
  Hypergraph shape;
  Sink sink;
  int bound;
};

Morphism fn(int n, int m, std::vector<int> img) {
  return Morphism::function(set_object(n), set_object(m), std::move(img));
}

Hypergraph path(int n) {
  Hypergraph h;
  for (int v = 0; v <= n; ++v) h.vertices.push_back("v" + std::to_string(v));
  for (int e = 0; e < n; ++e) {
    h.edges.push_back("e" + std::to_string(e));
    h.incidence.push_back({e, e + 1});
  }
  return h;
}

double seconds(const Case& c, bool parallel, std::size_t& count) {
  auto t0 = std::chrono::steady_clock::now();
  count = enumerate_set_anticolimits(c.shape, c.sink, {c.bound, static_cast<std::size_t>(-1), parallel}).size();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  std::vector<Case> cases = {
      {"J1 3+3->4", path(1), {{fn(3, 4, {0, 1, 2}), fn(3, 4, {1, 2, 3})}, set_object(4)}, 4},
      {"J1 4+4->5", path(1),
       {{fn(4, 5, {0, 1, 2, 3}), fn(4, 5, {1, 2, 3, 4})}, set_object(5)}, 5},
      {"J2 3+3+3->4", path(2),
       {{fn(3, 4, {0, 1, 2}), fn(3, 4, {1, 2, 3}), fn(3, 4, {2, 3, 0})}, set_object(4)}, 4},
      {"J3 2+2+2+2->3", path(3),
       {{fn(2, 3, {0, 1}), fn(2, 3, {1, 2}), fn(2, 3, {0, 2}), fn(2, 3, {0, 1})}, set_object(3)},
       3},
  };
  std::printf("%-16s %8s %10s %10s %8s\n", "case", "results", "serial_s", "openmp_s", "speedup");
  for (const auto& c : cases) {
    std::size_t n_serial = 0, n_parallel = 0;
    const double s = seconds(c, false, n_serial);
    const double p = seconds(c, true, n_parallel);
    std::printf("%-16s %8zu %10.4f %10.4f %8.2f%s\n", c.name.c_str(), n_serial, s, p, s / p,
                n_serial == n_parallel ? "" : "  MISMATCH");
  }
}
