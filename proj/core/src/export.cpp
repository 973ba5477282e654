#include "scorenet/export.h"

#include <charconv>
#include <ostream>
#include <string>

namespace scorenet {
namespace {

std::string number(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void graphml_header(std::ostream& out, bool community) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
         "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
         "  <key id=\"notes\" for=\"node\" attr.name=\"notes\" attr.type=\"string\"/>\n"
         "  <key id=\"count\" for=\"node\" attr.name=\"count\" attr.type=\"int\"/>\n"
         "  <key id=\"in_degree\" for=\"node\" attr.name=\"in_degree\" attr.type=\"int\"/>\n"
         "  <key id=\"out_degree\" for=\"node\" attr.name=\"out_degree\" attr.type=\"int\"/>\n"
         "  <key id=\"degree\" for=\"node\" attr.name=\"degree\" attr.type=\"int\"/>\n";
  if (community) out << "  <key id=\"community\" for=\"node\" attr.name=\"community\" attr.type=\"int\"/>\n";
  out << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n";
}

std::string note_names_or_label(const PitchClassSet& label) {
  return label.tet() == kDefaultTet ? pcset_note_names(label) : label.to_string();
}

}  // namespace

void write_graphml(std::ostream& out, const ScoreNetwork& network, const std::map<int, int>* community) {
  const DegreeStats stats = degree_stats(network);
  graphml_header(out, community != nullptr);
  out << "  <graph id=\"score\" edgedefault=\"directed\">\n";
  for (const auto& [id, node] : network.nodes) {
    const NodeDegree& d = stats.nodes.at(id);
    out << "    <node id=\"n" << id << "\">"
        << "<data key=\"label\">" << node.label.to_string() << "</data>"
        << "<data key=\"notes\">" << xml_escape(note_names_or_label(node.label)) << "</data>"
        << "<data key=\"count\">" << node.count << "</data>"
        << "<data key=\"in_degree\">" << d.in << "</data>"
        << "<data key=\"out_degree\">" << d.out << "</data>"
        << "<data key=\"degree\">" << d.total() << "</data>";
    if (community) out << "<data key=\"community\">" << community->at(id) << "</data>";
    out << "</node>\n";
  }
  for (const auto& [e, w] : network.edges) {
    out << "    <edge source=\"n" << e.first << "\" target=\"n" << e.second << "\">"
        << "<data key=\"weight\">" << w << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

void write_graphml(std::ostream& out, const GeneratedScoreNetwork& generated) {
  const auto deg = generated.graph.degrees();
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
         "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
         "  <key id=\"notes\" for=\"node\" attr.name=\"notes\" attr.type=\"string\"/>\n"
         "  <key id=\"reference_id\" for=\"node\" attr.name=\"reference_id\" attr.type=\"int\"/>\n"
         "  <key id=\"degree\" for=\"node\" attr.name=\"degree\" attr.type=\"int\"/>\n"
         "  <graph id=\"generated\" edgedefault=\"undirected\">\n";
  for (std::size_t v = 0; v < generated.graph.node_count; ++v) {
    out << "    <node id=\"g" << v << "\">"
        << "<data key=\"label\">" << generated.labels[v].to_string() << "</data>"
        << "<data key=\"notes\">" << xml_escape(note_names_or_label(generated.labels[v])) << "</data>"
        << "<data key=\"reference_id\">" << generated.reference_ids[v] << "</data>"
        << "<data key=\"degree\">" << deg[v] << "</data></node>\n";
  }
  for (const auto& [u, v] : generated.graph.edges) {
    out << "    <edge source=\"g" << u << "\" target=\"g" << v << "\"/>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

void write_dot(std::ostream& out, const ScoreNetwork& network, const std::map<int, int>* community) {
  const DegreeStats stats = degree_stats(network);
  out << "digraph score {\n";
  for (const auto& [id, node] : network.nodes) {
    out << "  n" << id << " [label=\"" << note_names_or_label(node.label) << "\", count=" << node.count
        << ", degree=" << stats.nodes.at(id).total();
    if (community) out << ", community=" << community->at(id);
    out << "];\n";
  }
  for (const auto& [e, w] : network.edges) {
    out << "  n" << e.first << " -> n" << e.second << " [weight=" << w << "];\n";
  }
  out << "}\n";
}

void write_series_csv(std::ostream& out, const LabeledSeries& series) {
  out << "index,bar,id,pcset\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << i << ',' << series.bars[i] << ',' << series.values[i] << ",\"" << series.pcset(series.values[i]).to_string()
        << "\"\n";
  }
}

void write_histogram_csv(std::ostream& out, const LabeledSeries& series) {
  out << "id,pcset,count\n";
  for (std::size_t id = 0; id < series.alphabet_size(); ++id) {
    out << id << ",\"" << series.dictionary[id].to_string() << "\"," << series.counts[id] << '\n';
  }
}

void write_degrees_csv(std::ostream& out, const ScoreNetwork& network) {
  const DegreeStats stats = degree_stats(network);
  out << "id,pcset,count,in_degree,out_degree,total_degree,weighted_degree\n";
  for (const auto& [id, node] : network.nodes) {
    const NodeDegree& d = stats.nodes.at(id);
    out << id << ",\"" << node.label.to_string() << "\"," << node.count << ',' << d.in << ',' << d.out << ','
        << d.total() << ',' << d.weighted() << '\n';
  }
}

void write_degree_distribution_csv(std::ostream& out, const ScoreNetwork& network) {
  const DegreeStats stats = degree_stats(network);
  std::map<int, std::size_t> hist;
  for (int d : stats.degrees(DegreeKey::kTotal)) ++hist[d];
  const double n = static_cast<double>(network.node_count());
  std::size_t at_least = network.node_count();
  out << "degree,nodes,fraction,ccdf\n";
  for (const auto& [d, c] : hist) {
    out << d << ',' << c << ',' << number(static_cast<double>(c) / n) << ','
        << number(static_cast<double>(at_least) / n) << '\n';
    at_least -= c;
  }
}

void write_similarity_csv(std::ostream& out, const std::vector<std::vector<double>>& matrix) {
  out << "layer_a,layer_b,similarity\n";
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < matrix[i].size(); ++j) out << i << ',' << j << ',' << number(matrix[i][j]) << '\n';
  }
}

}  // namespace scorenet
