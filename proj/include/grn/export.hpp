#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "grn/degfilter.hpp"
#include "grn/mi.hpp"
#include "grn/network.hpp"

namespace grn {

/// `gene_a<TAB>gene_b<TAB>mi`, rows in network edge order, MI to 10 significant digits.
void write_edge_list(std::ostream& out, const Network& net);

/// Undirected GraphML; node id is the gene id, edges carry a double `mi` attribute.
void write_graphml(std::ostream& out, const Network& net);

/// `graph G { "A" -- "B" [weight=...]; }`
void write_dot(std::ostream& out, const Network& net);

/// Upper-triangular MI listing in (i, j) order: `gene_a<TAB>gene_b<TAB>mi`.
void write_mi_pairs(std::ostream& out, const MiPairList& pairs, std::span<const std::string> gene_ids);

/// `gene_id mean_tumor mean_normal t df p`, p to 6 significant digits.
void write_deg_report(std::ostream& out, std::span<const DegRecord> records);

}  // namespace grn
