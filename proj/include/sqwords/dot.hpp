#pragma once

#include <ostream>
#include <string>
#include <unordered_set>

#include "sqwords/rauzy.hpp"

namespace sqwords {

/// Graphviz writer for Rauzy graphs. Vertices are named by their factor
/// (ε for the empty word); arcs listed in `dashed` are drawn dashed.
class DotWriter {
 public:
  explicit DotWriter(std::unordered_set<Word> dashed = {}) : dashed_(std::move(dashed)) {}

  void write(std::ostream& os, const RauzyGraph& g) const {
    os << "digraph rauzy_" << g.order << " {\n";
    write_body(os, g, "  ");
    os << "}\n";
  }

  void write(std::ostream& os, const RauzyUnion& u) const {
    os << "digraph rauzy_union {\n";
    for (const RauzyGraph& g : u.layers) {
      os << "  subgraph cluster_" << g.order << " {\n";
      os << "    label=\"order " << g.order << "\";\n";
      write_body(os, g, "    ");
      os << "  }\n";
    }
    os << "}\n";
  }

  static std::string quote(const Word& w) {
    std::string text = w.empty() ? std::string("ε") : display(w);
    std::string out = "\"";
    for (char c : text) {
      if (c == '"' || c == '\\') out.push_back('\\');
      out.push_back(c);
    }
    out.push_back('"');
    return out;
  }

 private:
  void write_body(std::ostream& os, const RauzyGraph& g, const std::string& indent) const {
    for (const Word& v : g.vertices) os << indent << quote(v) << ";\n";
    for (const Word& a : g.arcs) {
      os << indent << quote(g.initial(a)) << " -> " << quote(g.terminal(a)) << " [label=" << quote(a);
      if (dashed_.contains(a)) os << ", style=dashed";
      os << "];\n";
    }
  }

  std::unordered_set<Word> dashed_;
};

/// The smallest arc of every circuit in ⋃_z CS_w(z).
inline std::unordered_set<Word> cs_smallest_arcs(const CircuitFamily& family) {
  std::unordered_set<Word> marks;
  for (const auto& [z, circuits] : family.by_root) {
    for (const Circuit& c : circuits) marks.insert(c.smallest_arc());
  }
  return marks;
}

}  // namespace sqwords
