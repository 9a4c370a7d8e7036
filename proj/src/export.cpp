#include "grn/export.hpp"

#include <algorithm>
#include <ostream>

#include "grn/format.hpp"

namespace grn {
namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void write_edge_list(std::ostream& out, const Network& net) {
  out << "gene_a\tgene_b\tmi\n";
  for (const auto& e : net.edges()) {
    out << net.nodes()[e.a] << '\t' << net.nodes()[e.b] << '\t' << format_significant(e.mi, 10) << '\n';
  }
}

void write_graphml(std::ostream& out, const Network& net) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"\n"
      << "         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
      << "         xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
         "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n"
      << "  <key id=\"mi\" for=\"edge\" attr.name=\"mi\" attr.type=\"double\"/>\n"
      << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (const auto& name : net.nodes()) out << "    <node id=\"" << xml_escape(name) << "\"/>\n";
  for (const auto& e : net.edges()) {
    out << "    <edge source=\"" << xml_escape(net.nodes()[e.a]) << "\" target=\"" << xml_escape(net.nodes()[e.b])
        << "\"><data key=\"mi\">" << format_significant(e.mi, 10) << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

void write_dot(std::ostream& out, const Network& net) {
  out << "graph G {\n";
  for (const auto& name : net.nodes()) out << "  " << dot_quote(name) << ";\n";
  for (const auto& e : net.edges()) {
    out << "  " << dot_quote(net.nodes()[e.a]) << " -- " << dot_quote(net.nodes()[e.b])
        << " [weight=" << format_significant(e.mi, 10) << "];\n";
  }
  out << "}\n";
}

void write_mi_pairs(std::ostream& out, const MiPairList& pairs, std::span<const std::string> gene_ids) {
  std::vector<MiPair> ordered = pairs.entries;
  std::sort(ordered.begin(), ordered.end(),
            [](const MiPair& a, const MiPair& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  out << "gene_a\tgene_b\tmi\n";
  for (const auto& p : ordered) {
    out << gene_ids[p.i] << '\t' << gene_ids[p.j] << '\t' << format_significant(p.mi, 10) << '\n';
  }
}

void write_deg_report(std::ostream& out, std::span<const DegRecord> records) {
  out << "gene_id\tmean_tumor\tmean_normal\tt\tdf\tp\n";
  for (const auto& r : records) {
    out << r.gene_id << '\t' << format_significant(r.mean_tumor, 10) << '\t' << format_significant(r.mean_normal, 10)
        << '\t' << format_significant(r.t, 10) << '\t' << format_significant(r.df, 10) << '\t'
        << format_significant(r.p, 6) << '\n';
  }
}

}  // namespace grn
