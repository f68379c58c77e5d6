#include "outer/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace outer {

namespace {

struct Parser {
  std::vector<std::vector<std::string>> lines;
  size_t pos = 0;

  explicit Parser(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      std::istringstream ls(raw);
      std::vector<std::string> tokens;
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
      if (!tokens.empty()) lines.push_back(std::move(tokens));
    }
  }
  bool done() const { return pos >= lines.size(); }
  const std::vector<std::string>& peek() const {
    if (done()) fail("unexpected end of file");
    return lines[pos];
  }
  std::vector<std::string> next() {
    auto l = peek();
    ++pos;
    return l;
  }
  void expect(const std::string& head) {
    auto l = next();
    if (l.size() != 1 || l[0] != head) fail("expected '" + head + "' line");
  }
};

struct NameTable {
  std::map<std::string, int> ids;
  int resolve(const std::string& name, const char* what) const {
    auto it = ids.find(name);
    if (it == ids.end()) fail(std::string("unknown ") + what + " '" + name + "'");
    return it->second;
  }
};

NameTable vertex_table(const Graph& g) {
  NameTable t;
  for (VertexId v = 0; v < g.num_vertices(); ++v) t.ids[g.vertex_name(v)] = v;
  return t;
}

NameTable edge_table(const Graph& g) {
  NameTable t;
  for (EdgeId e = 0; e < g.num_edges(); ++e) t.ids[g.edge_name(e)] = e;
  return t;
}

EdgePath parse_tokens(const std::vector<std::string>& tokens, size_t from,
                      const NameTable& edges) {
  EdgePath path;
  for (size_t i = from; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    if (tok == "-") continue;
    bool primed = tok.back() == '\'';
    std::string name = primed ? tok.substr(0, tok.size() - 1) : tok;
    EdgeId e = edges.resolve(name, "edge");
    path.push_back(2 * e + (primed ? 1 : 0));
  }
  return path;
}

GraphPtr parse_graph_block(Parser& in) {
  in.expect("graph");
  int declared_rank = -1;
  std::vector<std::string> vnames, enames;
  std::map<std::string, int> vids;
  std::vector<std::pair<VertexId, VertexId>> ends;
  while (true) {
    auto l = in.next();
    if (l[0] == "end") break;
    if (l[0] == "rank" && l.size() == 2) {
      declared_rank = std::stoi(l[1]);
    } else if (l[0] == "vertex" && l.size() == 2) {
      if (vids.count(l[1])) fail("duplicate vertex '" + l[1] + "'");
      vids[l[1]] = (int)vnames.size();
      vnames.push_back(l[1]);
    } else if (l[0] == "edge" && l.size() == 4) {
      enames.push_back(l[1]);
      auto a = vids.find(l[2]), b = vids.find(l[3]);
      if (a == vids.end() || b == vids.end()) fail("edge uses unknown vertex");
      ends.emplace_back(a->second, b->second);
    } else {
      fail("bad graph line starting with '" + l[0] + "'");
    }
  }
  auto g = std::make_shared<const Graph>((int)vnames.size(), ends, vnames, enames);
  if (declared_rank >= 0 && declared_rank != g->rank())
    fail("declared rank disagrees with the graph");
  return g;
}

std::vector<Rat> parse_value_block(Parser& in, const Graph& g,
                                   const char* head) {
  in.expect(head);
  NameTable edges = edge_table(g);
  std::vector<Rat> values(g.num_edges(), Rat(0));
  std::vector<char> seen(g.num_edges(), 0);
  while (true) {
    auto l = in.next();
    if (l[0] == "end") break;
    if (l.size() != 2) fail(std::string("bad ") + head + " line");
    EdgeId e = edges.resolve(l[0], "edge");
    if (seen[e]) fail("duplicate value for edge '" + l[0] + "'");
    seen[e] = 1;
    values[e] = parse_rational(l[1]);
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (!seen[e]) fail("missing value for edge '" + g.edge_name(e) + "'");
  return values;
}

MarkedPoint parse_point_block(Parser& in) {
  in.expect("point");
  GraphPtr g = parse_graph_block(in);
  MetricAssignment metric{parse_value_block(in, *g, "metric")};

  GraphPtr rose = make_rose(g->rank());
  NameTable gverts = vertex_table(*g);
  NameTable gedges = edge_table(*g);
  NameTable redges = edge_table(*rose);

  in.expect("marking_in");
  VertexId base = -1;
  std::vector<EdgePath> petal_words(rose->num_edges());
  std::vector<char> petal_seen(rose->num_edges(), 0);
  while (true) {
    auto l = in.next();
    if (l[0] == "end") break;
    if (l[0] == "base" && l.size() == 2) {
      base = gverts.resolve(l[1], "vertex");
    } else {
      EdgeId petal = redges.resolve(l[0], "rose petal");
      if (petal_seen[petal]) fail("duplicate petal image");
      petal_seen[petal] = 1;
      petal_words[petal] = parse_tokens(l, 1, gedges);
    }
  }
  if (base < 0) fail("marking_in needs a 'base' line");
  for (char s : petal_seen)
    if (!s) fail("marking_in misses a petal");
  GraphMap marking_in(rose, g, {base}, petal_words);

  in.expect("marking_out");
  std::vector<EdgePath> edge_words(g->num_edges());
  std::vector<char> edge_seen(g->num_edges(), 0);
  while (true) {
    auto l = in.next();
    if (l[0] == "end") break;
    EdgeId e = gedges.resolve(l[0], "edge");
    if (edge_seen[e]) fail("duplicate edge image");
    edge_seen[e] = 1;
    edge_words[e] = parse_tokens(l, 1, redges);
  }
  for (char s : edge_seen)
    if (!s) fail("marking_out misses an edge");
  GraphMap marking_out(g, rose, std::vector<VertexId>(g->num_vertices(), 0),
                       edge_words);

  in.expect("end");
  MarkedPoint x{g, std::move(metric), std::move(marking_in),
                std::move(marking_out)};
  validate_point(x);
  return x;
}

}  // namespace

GraphPtr load_graph(const std::string& text) {
  Parser in(text);
  if (in.peek()[0] == "point") return parse_point_block(in).graph;
  return parse_graph_block(in);
}

MarkedPoint load_point(const std::string& text) {
  Parser in(text);
  return parse_point_block(in);
}

MetricAssignment load_metric(const std::string& text, const Graph& g) {
  Parser in(text);
  MetricAssignment m{parse_value_block(in, g, "metric")};
  validate_metric(g, m);
  return m;
}

TangentVector load_tangent(const std::string& text, const Graph& g) {
  Parser in(text);
  TangentVector t{parse_value_block(in, g, "tangent")};
  validate_tangent(g, t);
  return t;
}

GraphMap load_map(const std::string& text, const GraphPtr& src,
                  const GraphPtr& dst) {
  Parser in(text);
  in.expect("map");
  NameTable sverts = vertex_table(*src), sedges = edge_table(*src);
  NameTable dverts = vertex_table(*dst), dedges = edge_table(*dst);
  std::vector<VertexId> vimg(src->num_vertices(), -1);
  std::vector<EdgePath> eimg(src->num_edges());
  std::vector<char> eseen(src->num_edges(), 0);
  while (true) {
    auto l = in.next();
    if (l[0] == "end") break;
    if (l[0] == "vertex" && l.size() == 3) {
      vimg[sverts.resolve(l[1], "vertex")] = dverts.resolve(l[2], "vertex");
    } else if (l[0] == "edge" && l.size() >= 2) {
      EdgeId e = sedges.resolve(l[1], "edge");
      if (eseen[e]) fail("duplicate edge image");
      eseen[e] = 1;
      eimg[e] = parse_tokens(l, 2, dedges);
    } else {
      fail("bad map line");
    }
  }
  for (VertexId v : vimg)
    if (v < 0) fail("map misses a vertex image");
  for (char s : eseen)
    if (!s) fail("map misses an edge image");
  return GraphMap(src, dst, std::move(vimg), std::move(eimg));
}

PLPath load_path(const std::string& text) {
  Parser in(text);
  in.expect("path");
  MarkedPoint current = parse_point_block(in);
  PLPath path;
  bool pending_gap = false;
  std::optional<Transition> gap;
  while (!in.done() && in.peek()[0] != "end") {
    auto l = in.next();
    if (l[0] == "segment" && l.size() == 2) {
      Rat duration = parse_rational(l[1]);
      TangentVector dir{parse_value_block(in, *current.graph, "tangent")};
      validate_tangent(*current.graph, dir);
      if (!path.segments.empty())
        path.gaps.push_back(pending_gap ? gap : std::nullopt);
      path.segments.push_back(Segment{current, dir, duration});
      current = segment_end_point(path.segments.back());
      pending_gap = false;
      gap.reset();
    } else if (l[0] == "collapse" && l.size() >= 2) {
      if (path.segments.empty()) fail("path cannot start on a transition");
      if (pending_gap) fail("consecutive transitions");
      NameTable edges = edge_table(*current.graph);
      std::vector<EdgeId> forest;
      for (size_t i = 1; i < l.size(); ++i)
        forest.push_back(edges.resolve(l[i], "edge"));
      ForestCollapse fc = collapse_forest(current.graph, forest);
      current = collapse_point(current, fc);
      gap = Transition{true, std::move(fc)};
      pending_gap = true;
    } else {
      fail("bad path line starting with '" + l[0] + "'");
    }
  }
  if (!in.done()) in.expect("end");
  if (pending_gap) fail("path ends on a transition");
  validate_pl_path(path);
  return path;
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << "graph\n";
  out << "rank " << g.rank() << "\n";
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    out << "vertex " << g.vertex_name(v) << "\n";
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    out << "edge " << g.edge_name(e) << " " << g.vertex_name(g.half_from(2 * e))
        << " " << g.vertex_name(g.half_to(2 * e)) << "\n";
  out << "end\n";
  return out.str();
}

std::string serialize_metric(const Graph& g, const MetricAssignment& m) {
  std::ostringstream out;
  out << "metric\n";
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    out << g.edge_name(e) << " " << format_rational(m.lengths[e]) << "\n";
  out << "end\n";
  return out.str();
}

std::string serialize_tangent(const Graph& g, const TangentVector& t) {
  std::ostringstream out;
  out << "tangent\n";
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    out << g.edge_name(e) << " " << format_rational(t.weights[e]) << "\n";
  out << "end\n";
  return out.str();
}

std::string serialize_point(const MarkedPoint& x) {
  std::ostringstream out;
  out << "point\n";
  out << serialize_graph(*x.graph);
  out << serialize_metric(*x.graph, x.metric);
  out << "marking_in\n";
  out << "base " << x.graph->vertex_name(x.marking_in.vertex_image(0)) << "\n";
  const Graph& rose = x.marking_in.src();
  for (EdgeId p = 0; p < rose.num_edges(); ++p)
    out << rose.edge_name(p) << " "
        << path_tokens(*x.graph, x.marking_in.half_image(2 * p)) << "\n";
  out << "end\n";
  out << "marking_out\n";
  for (EdgeId e = 0; e < x.graph->num_edges(); ++e)
    out << x.graph->edge_name(e) << " "
        << path_tokens(rose, x.marking_out.half_image(2 * e)) << "\n";
  out << "end\n";
  out << "end\n";
  return out.str();
}

std::string serialize_map(const GraphMap& f) {
  std::ostringstream out;
  out << "map\n";
  for (VertexId v = 0; v < f.src().num_vertices(); ++v)
    out << "vertex " << f.src().vertex_name(v) << " "
        << f.dst().vertex_name(f.vertex_image(v)) << "\n";
  for (EdgeId e = 0; e < f.src().num_edges(); ++e)
    out << "edge " << f.src().edge_name(e) << " "
        << path_tokens(f.dst(), f.half_image(2 * e)) << "\n";
  out << "end\n";
  return out.str();
}

std::string serialize_path(const PLPath& p) {
  std::ostringstream out;
  out << "path\n";
  out << serialize_point(path_start(p));
  for (size_t i = 0; i < p.segments.size(); ++i) {
    if (i > 0 && p.gaps[i - 1]) {
      const Transition& tr = *p.gaps[i - 1];
      if (!tr.collapsing)
        fail("serialize_path: blow-up transitions have no file form");
      out << "collapse";
      for (EdgeId e : tr.fc.forest) out << " " << tr.fc.fine->edge_name(e);
      out << "\n";
    }
    const Segment& s = p.segments[i];
    out << "segment " << format_rational(s.duration) << "\n";
    out << "tangent\n";
    for (EdgeId e = 0; e < s.start.graph->num_edges(); ++e)
      out << s.start.graph->edge_name(e) << " "
          << format_rational(s.dir.weights[e]) << "\n";
    out << "end\n";
  }
  out << "end\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) fail("cannot write '" + path + "'");
  out << content;
}

}  // namespace outer
