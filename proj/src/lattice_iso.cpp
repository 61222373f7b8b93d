#include <algorithm>
#include <map>
#include <set>

#include "specsim/errors.hpp"
#include "specsim/polytope.hpp"

namespace specsim {

namespace {

// Per-vertex invariant: the sorted sizes of the incident facets.
std::vector<std::vector<int>> signatures_(const Polytope& p) {
  std::vector<std::vector<int>> sig(p.vertex_count());
  for (std::size_t v = 0; v < p.vertex_count(); ++v) {
    for (std::size_t f : p.incident_facets(v)) sig[v].push_back(popcount(p.facet_masks()[f]));
    std::sort(sig[v].begin(), sig[v].end());
  }
  return sig;
}

// cooc[i][j] counts facets containing both vertices.
std::vector<std::vector<int>> cooccurrence_(const Polytope& p) {
  const std::size_t n = p.vertex_count();
  std::vector<std::vector<int>> cooc(n, std::vector<int>(n, 0));
  for (VSet fm : p.facet_masks()) {
    const std::vector<std::size_t> bits = set_bits(fm);
    for (std::size_t i = 0; i < bits.size(); ++i)
      for (std::size_t j = 0; j < bits.size(); ++j) ++cooc[bits[i]][bits[j]];
  }
  return cooc;
}

template <typename T>
std::vector<T> sorted_(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v;
}

struct Searcher {
  std::size_t n;
  const std::vector<VSet>& facets_a;
  std::set<VSet> facets_b;
  std::vector<std::vector<int>> sig_a, sig_b, cooc_a, cooc_b;
  std::vector<std::size_t> order;
  std::vector<std::size_t> map;
  std::vector<bool> used;

  bool facets_match() const {
    for (VSet ma : facets_a) {
      VSet mb = 0;
      for (std::size_t v : set_bits(ma)) mb |= VSet{1} << map[v];
      if (facets_b.count(mb) == 0) return false;
    }
    return true;
  }

  bool rec(std::size_t k) {
    if (k == n) return facets_match();
    const std::size_t v = order[k];
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || sig_b[j] != sig_a[v]) continue;
      bool ok = true;
      for (std::size_t t = 0; t < k && ok; ++t) {
        const std::size_t u = order[t];
        ok = cooc_a[v][u] == cooc_b[j][map[u]];
      }
      if (!ok) continue;
      map[v] = j;
      used[j] = true;
      if (rec(k + 1)) return true;
      used[j] = false;
    }
    return false;
  }
};

}  // namespace

bool lattice_isomorphic_under(const Polytope& a, const Polytope& b,
                              const std::vector<std::size_t>& vertex_map) {
  const std::size_t n = a.vertex_count();
  if (b.vertex_count() != n || vertex_map.size() != n) return false;
  if (a.facet_count() != b.facet_count()) return false;
  std::vector<bool> hit(n, false);
  for (std::size_t j : vertex_map) {
    if (j >= n || hit[j]) return false;
    hit[j] = true;
  }
  const std::set<VSet> fb(b.facet_masks().begin(), b.facet_masks().end());
  for (VSet ma : a.facet_masks()) {
    VSet mb = 0;
    for (std::size_t v : set_bits(ma)) mb |= VSet{1} << vertex_map[v];
    if (fb.count(mb) == 0) return false;
  }
  return true;
}

LatticeIsomorphism lattice_isomorphic(const Polytope& a, const Polytope& b) {
  LatticeIsomorphism out;
  if (a.dim() != b.dim()) return out;
  if (a.vertex_count() != b.vertex_count()) return out;
  if (a.facet_count() != b.facet_count()) return out;
  if (a.f_vector() != b.f_vector()) return out;

  std::vector<int> sizes_a, sizes_b;
  for (VSet fm : a.facet_masks()) sizes_a.push_back(popcount(fm));
  for (VSet fm : b.facet_masks()) sizes_b.push_back(popcount(fm));
  if (sorted_(sizes_a) != sorted_(sizes_b)) return out;

  Searcher s{a.vertex_count(), a.facet_masks(), {},
             signatures_(a),   signatures_(b),  cooccurrence_(a),
             cooccurrence_(b), {},              {},
             {}};
  if (sorted_(s.sig_a) != sorted_(s.sig_b)) return out;

  std::vector<int> pairs_a, pairs_b;
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = i + 1; j < s.n; ++j) {
      pairs_a.push_back(s.cooc_a[i][j]);
      pairs_b.push_back(s.cooc_b[i][j]);
    }
  if (sorted_(pairs_a) != sorted_(pairs_b)) return out;

  if (s.n > 14)
    throw CapacityError("isomorphism search beyond 14 vertices");

  // Rarest signatures first; their candidate lists are shortest.
  std::map<std::vector<int>, int> freq;
  for (const auto& g : s.sig_a) ++freq[g];
  s.order.resize(s.n);
  for (std::size_t i = 0; i < s.n; ++i) s.order[i] = i;
  std::stable_sort(s.order.begin(), s.order.end(), [&](std::size_t x, std::size_t y) {
    return freq[s.sig_a[x]] < freq[s.sig_a[y]];
  });
  s.facets_b.insert(b.facet_masks().begin(), b.facet_masks().end());
  s.map.assign(s.n, 0);
  s.used.assign(s.n, false);

  if (!s.rec(0)) return out;
  if (!lattice_isomorphic_under(a, b, s.map))
    throw InternalInconsistency("isomorphism witness failed recheck");
  out.isomorphic = true;
  out.vertex_map = s.map;
  return out;
}

}  // namespace specsim
