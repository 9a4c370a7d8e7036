#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "grn/mi.hpp"

namespace grn {

struct Edge {
  std::size_t a = 0;  // node indices, name(a) <= name(b)
  std::size_t b = 0;
  double mi = 0;
};

/// Undirected relevance network over the genes incident to retained pairs.
///
/// Nodes are ordered by gene id (ties by source index). Edges are ordered by
/// MI descending, then by the endpoint names.
class Network {
 public:
  Network() = default;

  const std::vector<std::string>& nodes() const { return names_; }
  const std::vector<std::size_t>& source_indices() const { return source_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t k_requested() const { return k_requested_; }

  bool adjacent(std::size_t a, std::size_t b) const { return adjacency_[a * names_.size() + b] != 0; }
  std::size_t degree(std::size_t node) const { return degrees_[node]; }
  const std::vector<std::size_t>& degrees() const { return degrees_; }

  /// Builds from already-selected pairs; `pairs` index into `gene_ids`.
  static Network from_pairs(std::span<const MiPair> pairs, std::span<const std::string> gene_ids,
                            std::size_t k_requested);

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> source_;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> adjacency_;
  std::vector<std::size_t> degrees_;
  std::size_t k_requested_ = 0;
};

/// The K highest-MI pairs. `pairs` must follow the MiPairList order, which
/// already breaks ties at the cutoff by ascending (i, j).
Network build_top_k(const MiPairList& pairs, std::span<const std::string> gene_ids, std::size_t k);

/// Every pair with MI >= min_mi.
Network build_threshold(const MiPairList& pairs, std::span<const std::string> gene_ids, double min_mi);

struct HubEntry {
  std::string gene;
  std::size_t degree = 0;
};

struct DegreeReport {
  std::vector<HubEntry> hubs;                // degree desc, then gene id
  std::vector<std::size_t> component_sizes;  // descending
  std::size_t component_count() const { return component_sizes.size(); }
};

DegreeReport degree_report(const Network& net, std::size_t hub_count = 5);

struct SweepEntry {
  std::size_t k = 0;
  Network network;
  DegreeReport report;
};

/// One independently built network per K. Throws std::logic_error if node
/// counts, edge sets or per-gene degrees fail to grow with K.
std::vector<SweepEntry> network_sweep(const MiPairList& pairs, std::span<const std::string> gene_ids,
                                      std::span<const std::size_t> ks, std::size_t hub_count = 5);

}  // namespace grn
