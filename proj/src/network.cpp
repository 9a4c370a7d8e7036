#include "grn/network.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "grn/error.hpp"

namespace grn {
namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

void check_inputs(const MiPairList& pairs, std::span<const std::string> gene_ids) {
  if (pairs.entries.empty()) throw Error(ErrorKind::EmptyResult, "cannot build a network from an empty pair list");
  for (const auto& p : pairs.entries) {
    if (p.i >= p.j || p.j >= gene_ids.size()) throw Error(ErrorKind::Domain, "pair index out of range");
  }
}

}  // namespace

Network Network::from_pairs(std::span<const MiPair> pairs, std::span<const std::string> gene_ids,
                            std::size_t k_requested) {
  Network net;
  net.k_requested_ = k_requested;

  std::vector<std::size_t> used;
  for (const auto& p : pairs) {
    used.push_back(p.i);
    used.push_back(p.j);
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::stable_sort(used.begin(), used.end(),
                   [&](std::size_t x, std::size_t y) { return gene_ids[x] < gene_ids[y]; });

  std::unordered_map<std::size_t, std::size_t> node_of;
  for (std::size_t n = 0; n < used.size(); ++n) {
    node_of.emplace(used[n], n);
    net.names_.push_back(gene_ids[used[n]]);
  }
  net.source_ = std::move(used);

  const std::size_t n = net.names_.size();
  net.adjacency_.assign(n * n, 0);
  net.degrees_.assign(n, 0);
  for (const auto& p : pairs) {
    std::size_t a = node_of.at(p.i);
    std::size_t b = node_of.at(p.j);
    if (a > b) std::swap(a, b);  // node order follows names
    if (net.adjacency_[a * n + b]) throw Error(ErrorKind::Domain, "duplicate pair in network input");
    net.adjacency_[a * n + b] = net.adjacency_[b * n + a] = 1;
    ++net.degrees_[a];
    ++net.degrees_[b];
    net.edges_.push_back({a, b, p.mi});
  }
  std::stable_sort(net.edges_.begin(), net.edges_.end(), [&](const Edge& x, const Edge& y) {
    if (x.mi != y.mi) return x.mi > y.mi;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  return net;
}

Network build_top_k(const MiPairList& pairs, std::span<const std::string> gene_ids, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::Domain, "K must be at least 1");
  check_inputs(pairs, gene_ids);
  const std::size_t take = std::min(k, pairs.entries.size());
  return Network::from_pairs(std::span(pairs.entries).first(take), gene_ids, k);
}

Network build_threshold(const MiPairList& pairs, std::span<const std::string> gene_ids, double min_mi) {
  check_inputs(pairs, gene_ids);
  const auto end = std::find_if(pairs.entries.begin(), pairs.entries.end(),
                                [&](const MiPair& p) { return p.mi < min_mi; });
  const auto take = static_cast<std::size_t>(end - pairs.entries.begin());
  if (take == 0) throw Error(ErrorKind::EmptyResult, "no pair reaches the MI threshold");
  return Network::from_pairs(std::span(pairs.entries).first(take), gene_ids, take);
}

DegreeReport degree_report(const Network& net, std::size_t hub_count) {
  if (net.nodes().empty()) throw Error(ErrorKind::EmptyResult, "degree report of an empty network");
  const std::size_t n = net.nodes().size();
  DegreeReport report;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Node order is already by name, so a stable sort on degree breaks ties lexicographically.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return net.degree(x) > net.degree(y); });
  for (std::size_t r = 0; r < std::min(hub_count, n); ++r) {
    report.hubs.push_back({net.nodes()[order[r]], net.degree(order[r])});
  }

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& e : net.edges()) {
    const auto ra = find_root(parent, e.a);
    const auto rb = find_root(parent, e.b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::map<std::size_t, std::size_t> sizes;
  for (std::size_t v = 0; v < n; ++v) ++sizes[find_root(parent, v)];
  for (const auto& [root, size] : sizes) report.component_sizes.push_back(size);
  std::sort(report.component_sizes.rbegin(), report.component_sizes.rend());
  return report;
}

std::vector<SweepEntry> network_sweep(const MiPairList& pairs, std::span<const std::string> gene_ids,
                                      std::span<const std::size_t> ks, std::size_t hub_count) {
  if (ks.empty()) throw Error(ErrorKind::Domain, "network sweep needs at least one K");
  std::vector<SweepEntry> out;
  out.reserve(ks.size());
  for (std::size_t k : ks) {
    auto net = build_top_k(pairs, gene_ids, k);
    auto report = degree_report(net, hub_count);
    out.push_back({k, std::move(net), std::move(report)});
  }

  // Growth check in K order, keyed by source gene index.
  std::vector<const SweepEntry*> by_k;
  for (const auto& e : out) by_k.push_back(&e);
  std::stable_sort(by_k.begin(), by_k.end(), [](const SweepEntry* x, const SweepEntry* y) { return x->k < y->k; });
  std::vector<std::size_t> prev_degree(gene_ids.size(), 0);
  std::size_t prev_nodes = 0;
  std::size_t prev_edges = 0;
  for (const auto* entry : by_k) {
    const auto& net = entry->network;
    if (net.nodes().size() < prev_nodes || net.edges().size() < prev_edges) {
      throw std::logic_error("network sweep: node or edge count decreased with K");
    }
    std::vector<std::size_t> degree(gene_ids.size(), 0);
    for (std::size_t v = 0; v < net.nodes().size(); ++v) degree[net.source_indices()[v]] = net.degree(v);
    for (std::size_t g = 0; g < degree.size(); ++g) {
      if (degree[g] < prev_degree[g]) throw std::logic_error("network sweep: degree of '" + gene_ids[g] + "' decreased");
    }
    prev_degree = std::move(degree);
    prev_nodes = net.nodes().size();
    prev_edges = net.edges().size();
  }
  return out;
}

}  // namespace grn
