#include "eqdecomp/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "eqdecomp/error.hpp"

namespace eqd {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) fail(where, std::string("missing field \"") + name + "\"");
  return *it;
}

const Json* optional_field(const Json& j, const char* name) {
  auto it = j.find(name);
  return it == j.end() ? nullptr : &*it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(where, "number is not finite");
  return x;
}

long long integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<long long>();
}

std::size_t count(const Json& j, const std::string& where) {
  const long long v = integer(j, where);
  if (v < 0) fail(where, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }
std::string dot(const std::string& where, const char* name) { return where + "." + name; }

Json labels_to_json(std::span<const Vertex> v) {
  Json a = Json::array();
  for (Vertex x : v) a.push_back(x);
  return a;
}

std::vector<Vertex> labels_from_json(const Json& j, const std::string& where) {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) {
    const long long v = integer(j[i], at(where, i));
    if (v < 1 || v > INT32_MAX) fail(at(where, i), "vertex label must be a positive integer");
    out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

Json cycles_to_json(const Permutation& p) {
  Json c = Json::array();
  for (const auto& cyc : p.cycles()) c.push_back(labels_to_json(cyc));
  return c;
}

std::vector<std::vector<Vertex>> cycles_from_json(const Json& j, const std::string& where) {
  std::vector<std::vector<Vertex>> out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) out.push_back(labels_from_json(j[i], at(where, i)));
  return out;
}

Permutation permutation_from_cycles(std::size_t n, const Json& j, const std::string& where) {
  try {
    return Permutation::from_cycles(n, cycles_from_json(j, where));
  } catch (const ValidationError& e) {
    if (std::string(e.what()).rfind(where, 0) == 0) throw;
    fail(where, e.what());
  }
}

Json matrices_to_json(const std::vector<ComplexMatrix>& ms, const JsonStyle& style) {
  Json a = Json::array();
  for (const auto& m : ms) a.push_back(to_json(m, style));
  return a;
}

std::vector<ComplexMatrix> matrices_from_json(const Json& j, const std::string& where) {
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) out.push_back(matrix_from_json(j[i], at(where, i)));
  return out;
}

Json plan_body(const SemiTransversalPlan& p) {
  Json t = Json::array();
  for (const auto& part : p.T) t.push_back(labels_to_json(part));
  return Json{{"U", labels_to_json(p.U)}, {"T", t}, {"ordering", labels_to_json(p.ordering)}};
}

BasicDecomposition basic_from_parts(SemiTransversalPlan plan, ComplexMatrix divisor, std::vector<ComplexMatrix> blocks,
                                    double residual, const std::string& where) {
  BasicDecomposition d;
  d.k = plan.k();
  d.N = plan.N();
  d.r = plan.r();
  if (d.k < 2 || d.r == 0) fail(where, "plan needs at least two nonempty copies");
  if (divisor.rows() != d.N + d.r || divisor.cols() != d.N + d.r) fail(where, "divisor size does not match the plan");
  if (blocks.size() != d.k - 1) fail(where, "expected " + std::to_string(d.k - 1) + " blocks");
  for (const auto& b : blocks)
    if (b.rows() != d.r || b.cols() != d.r) fail(where, "block size does not match the plan");
  d.relabel = plan.relabel();
  d.plan = std::move(plan);
  d.divisor = std::move(divisor);
  d.blocks = std::move(blocks);
  d.S = build_similarity(d.N, d.r, d.k);
  d.residual = residual;
  return d;
}

bool parse_int(std::string_view tok, long long& out) {
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

bool parse_double(std::string_view tok, double& out) {
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size() && std::isfinite(out);
}

}  // namespace

Json complex_to_json(Complex z, const JsonStyle& style) {
  if (style.snap) z = snap_integer(z, 1e-9);
  const double re = z.real() == 0.0 ? 0.0 : z.real();
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  return Json::array({re, im});
}

Json to_json(const ComplexMatrix& m, const JsonStyle& style) {
  Json entries = Json::array();
  for (const auto& z : m.data()) entries.push_back(complex_to_json(z, style));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Json vector_to_json(std::span<const Complex> v, const JsonStyle& style) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(complex_to_json(z, style));
  return a;
}

Json to_json(const Permutation& p) { return Json{{"n", p.size()}, {"cycles", cycles_to_json(p)}}; }

Json to_json(const WeightedGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back(Json::array({e.i, e.j, e.w.real(), e.w.imag()}));
  return Json{{"n", g.n}, {"directed", g.directed}, {"edges", edges}};
}

Json to_json(const GershRegion& r) {
  Json disks = Json::array();
  for (const auto& d : r.disks) disks.push_back(Json{{"center", complex_to_json(d.center)}, {"radius", d.radius}});
  return Json{{"mode", std::string(mode_name(r.mode))}, {"disks", disks}};
}

Json to_json(const SemiTransversalPlan& p) { return plan_body(p); }

Json to_json(const BasicDecomposition& d, const JsonStyle& style) {
  Json j{{"kind", "basic"}, {"k", d.k}, {"N", d.N}, {"r", d.r}};
  j["plan"] = plan_body(d.plan);
  j["psi_cycles"] = cycles_to_json(d.plan.psi());
  j["divisor"] = to_json(d.divisor, style);
  j["blocks"] = matrices_to_json(d.blocks, style);
  j["residual"] = d.residual;
  return j;
}

Json to_json(const SequentialDecomposition& d, const JsonStyle& style) {
  Json stages = Json::array();
  for (const auto& st : d.stages) {
    const auto& bd = st.decomposition;
    Json s{{"prime", st.prime},
           {"phi_cycles", cycles_to_json(st.phi)},
           {"psi_cycles", cycles_to_json(st.psi)},
           {"ordering", labels_to_json(bd.plan.ordering)}};
    Json t = Json::array();
    for (const auto& part : bd.plan.T) t.push_back(labels_to_json(part));
    s["U"] = labels_to_json(bd.plan.U);
    s["T"] = t;
    s["divisor"] = to_json(bd.divisor, style);
    s["blocks"] = matrices_to_json(bd.blocks, style);
    s["residual"] = bd.residual;
    s["matrix"] = to_json(st.matrix, style);
    stages.push_back(std::move(s));
  }
  Json finals = Json::array();
  for (const auto& fb : d.final_blocks) {
    finals.push_back(Json{{"labels", labels_to_json(fb.labels)}, {"matrix", to_json(fb.matrix, style)}});
  }
  Json j{{"kind", "sequential"}, {"n", d.stages.empty() ? 0 : d.stages.front().matrix.rows()}};
  j["stages"] = stages;
  j["final_blocks"] = finals;
  j["divisor_labels"] = labels_to_json(d.divisor_labels());
  j["divisor"] = to_json(d.divisor(), style);
  return j;
}

Json to_json(const std::vector<LiftedVector>& basis, const JsonStyle& style) {
  Json a = Json::array();
  for (const auto& v : basis) {
    Json src{{"kind", v.source == VectorSource::divisor ? "divisor" : "block"}, {"block", v.block}, {"index", v.index}};
    a.push_back(Json{{"eigenvalue", complex_to_json(v.eigenvalue, style)},
                     {"generalized_rank", v.generalized_rank},
                     {"source", src},
                     {"vector", vector_to_json(v.vector, style)}});
  }
  return a;
}

Json to_json(const FoldedGraph& f, const JsonStyle& style) {
  Json edges = Json::array();
  for (const auto& e : f.edges) {
    const Json w = complex_to_json(e.w, style);
    edges.push_back(Json::array({e.i, e.j, w[0], w[1]}));
  }
  return Json{{"m", f.m},
              {"directed", true},
              {"vertices", labels_to_json(f.vertices)},
              {"fixed", labels_to_json(f.fixed)},
              {"edges", edges}};
}

Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return number(j, where);
  if (!j.is_array() || j.size() != 2) fail(where, "expected [re, im]");
  return {number(j[0], at(where, 0)), number(j[1], at(where, 1))};
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& where) {
  const std::size_t rows = count(field(j, "rows", where), dot(where, "rows"));
  const std::size_t cols = count(field(j, "cols", where), dot(where, "cols"));
  const Json& entries = array(field(j, "entries", where), dot(where, "entries"));
  if (entries.size() != rows * cols) {
    fail(dot(where, "entries"), "has " + std::to_string(entries.size()) + " entries, expected " +
                                    std::to_string(rows * cols));
  }
  std::vector<Complex> data;
  data.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) data.push_back(complex_from_json(entries[i], at(dot(where, "entries"), i)));
  return ComplexMatrix(rows, cols, std::move(data));
}

CVector vector_from_json(const Json& j, const std::string& where) {
  CVector v;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) v.push_back(complex_from_json(j[i], at(where, i)));
  return v;
}

Permutation permutation_from_json(const Json& j, const std::string& where) {
  const std::size_t n = count(field(j, "n", where), dot(where, "n"));
  return permutation_from_cycles(n, field(j, "cycles", where), dot(where, "cycles"));
}

WeightedGraph graph_from_json(const Json& j, const std::string& where) {
  WeightedGraph g;
  g.n = count(field(j, "n", where), dot(where, "n"));
  if (const Json* d = optional_field(j, "directed")) {
    if (!d->is_boolean()) fail(dot(where, "directed"), "expected true or false");
    g.directed = d->get<bool>();
  }
  const std::string ew = dot(where, "edges");
  const Json& edges = array(field(j, "edges", where), ew);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string w = at(ew, i);
    const Json& e = edges[i];
    if (!e.is_array() || e.size() < 2 || e.size() > 4) fail(w, "expected [i, j] or [i, j, w_re] or [i, j, w_re, w_im]");
    Edge edge;
    const long long a = integer(e[0], at(w, 0));
    const long long b = integer(e[1], at(w, 1));
    if (a < 1 || static_cast<std::size_t>(a) > g.n) fail(at(w, 0), "vertex outside 1.." + std::to_string(g.n));
    if (b < 1 || static_cast<std::size_t>(b) > g.n) fail(at(w, 1), "vertex outside 1.." + std::to_string(g.n));
    edge.i = static_cast<Vertex>(a);
    edge.j = static_cast<Vertex>(b);
    const double re = e.size() > 2 ? number(e[2], at(w, 2)) : 1.0;
    const double im = e.size() > 3 ? number(e[3], at(w, 3)) : 0.0;
    edge.w = {re, im};
    g.edges.push_back(edge);
  }
  try {
    validate(g);
  } catch (const ValidationError& e) {
    fail(where, e.what());
  }
  return g;
}

GershRegion region_from_json(const Json& j, const std::string& where) {
  GershRegion r;
  const Json& mode = field(j, "mode", where);
  if (!mode.is_string() || !parse_region_mode(mode.get<std::string>())) fail(dot(where, "mode"), "expected \"rows\" or \"columns\"");
  r.mode = *parse_region_mode(mode.get<std::string>());
  const std::string dw = dot(where, "disks");
  const Json& disks = array(field(j, "disks", where), dw);
  for (std::size_t i = 0; i < disks.size(); ++i) {
    const std::string w = at(dw, i);
    Disk d;
    d.center = complex_from_json(field(disks[i], "center", w), dot(w, "center"));
    d.radius = number(field(disks[i], "radius", w), dot(w, "radius"));
    if (d.radius < 0) fail(dot(w, "radius"), "radius is negative");
    r.disks.push_back(d);
  }
  return r;
}

SemiTransversalPlan plan_from_json(const Json& j, const std::string& where) {
  SemiTransversalPlan p;
  p.U = labels_from_json(field(j, "U", where), dot(where, "U"));
  const std::string tw = dot(where, "T");
  const Json& t = array(field(j, "T", where), tw);
  for (std::size_t i = 0; i < t.size(); ++i) p.T.push_back(labels_from_json(t[i], at(tw, i)));
  p.ordering = p.U;
  for (const auto& part : p.T) p.ordering.insert(p.ordering.end(), part.begin(), part.end());
  if (const Json* o = optional_field(j, "ordering")) {
    if (labels_from_json(*o, dot(where, "ordering")) != p.ordering) fail(dot(where, "ordering"), "does not equal U, T_0, ...");
  }
  try {
    validate_plan(p, p.ordering.size());
  } catch (const ValidationError& e) {
    fail(where, e.what());
  }
  return p;
}

BasicDecomposition basic_decomposition_from_json(const Json& j, const std::string& where) {
  const Json& kind = field(j, "kind", where);
  if (kind != "basic") fail(dot(where, "kind"), "expected \"basic\"");
  SemiTransversalPlan plan = plan_from_json(field(j, "plan", where), dot(where, "plan"));
  ComplexMatrix divisor = matrix_from_json(field(j, "divisor", where), dot(where, "divisor"));
  auto blocks = matrices_from_json(field(j, "blocks", where), dot(where, "blocks"));
  const double residual = number(field(j, "residual", where), dot(where, "residual"));
  return basic_from_parts(std::move(plan), std::move(divisor), std::move(blocks), residual, where);
}

SequentialDecomposition sequential_decomposition_from_json(const Json& j, const std::string& where) {
  const Json& kind = field(j, "kind", where);
  if (kind != "sequential") fail(dot(where, "kind"), "expected \"sequential\"");
  const std::size_t n = count(field(j, "n", where), dot(where, "n"));
  SequentialDecomposition d;
  const std::string sw = dot(where, "stages");
  const Json& stages = array(field(j, "stages", where), sw);
  if (stages.empty()) fail(sw, "no stages");
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const std::string w = at(sw, i);
    const Json& s = stages[i];
    Stage st;
    st.prime = count(field(s, "prime", w), dot(w, "prime"));
    st.phi = permutation_from_cycles(n, field(s, "phi_cycles", w), dot(w, "phi_cycles"));
    st.psi = permutation_from_cycles(n, field(s, "psi_cycles", w), dot(w, "psi_cycles"));
    SemiTransversalPlan plan = plan_from_json(s, w);
    if (plan.n() != n) fail(w, "plan covers " + std::to_string(plan.n()) + " vertices, expected " + std::to_string(n));
    st.decomposition = basic_from_parts(std::move(plan), matrix_from_json(field(s, "divisor", w), dot(w, "divisor")),
                                        matrices_from_json(field(s, "blocks", w), dot(w, "blocks")),
                                        number(field(s, "residual", w), dot(w, "residual")), w);
    st.matrix = matrix_from_json(field(s, "matrix", w), dot(w, "matrix"));
    if (st.matrix.rows() != n || st.matrix.cols() != n) fail(dot(w, "matrix"), "expected " + std::to_string(n) + "x" + std::to_string(n));
    d.stages.push_back(std::move(st));
  }
  const std::string fw = dot(where, "final_blocks");
  const Json& finals = array(field(j, "final_blocks", where), fw);
  if (finals.empty()) fail(fw, "no blocks");
  for (std::size_t i = 0; i < finals.size(); ++i) {
    const std::string w = at(fw, i);
    FinalBlock fb;
    fb.labels = labels_from_json(field(finals[i], "labels", w), dot(w, "labels"));
    fb.matrix = matrix_from_json(field(finals[i], "matrix", w), dot(w, "matrix"));
    if (fb.matrix.rows() != fb.labels.size() || fb.matrix.cols() != fb.labels.size()) {
      fail(dot(w, "matrix"), "size does not match the label count");
    }
    d.final_blocks.push_back(std::move(fb));
  }
  return d;
}

std::vector<LiftedVector> eigenbasis_from_json(const Json& j, const std::string& where) {
  std::vector<LiftedVector> out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) {
    const std::string w = at(where, i);
    const Json& e = j[i];
    LiftedVector v;
    v.eigenvalue = complex_from_json(field(e, "eigenvalue", w), dot(w, "eigenvalue"));
    const long long rank = integer(field(e, "generalized_rank", w), dot(w, "generalized_rank"));
    if (rank < 1) fail(dot(w, "generalized_rank"), "must be at least 1");
    v.generalized_rank = static_cast<int>(rank);
    const std::string srcw = dot(w, "source");
    const Json& src = field(e, "source", w);
    const Json& kind = field(src, "kind", srcw);
    if (kind == "divisor") v.source = VectorSource::divisor;
    else if (kind == "block") v.source = VectorSource::block;
    else fail(dot(srcw, "kind"), "expected \"divisor\" or \"block\"");
    v.block = count(field(src, "block", srcw), dot(srcw, "block"));
    v.index = count(field(src, "index", srcw), dot(srcw, "index"));
    v.vector = vector_from_json(field(e, "vector", w), dot(w, "vector"));
    out.push_back(std::move(v));
  }
  return out;
}

FoldedGraph folded_graph_from_json(const Json& j, const std::string& where) {
  FoldedGraph f;
  f.m = count(field(j, "m", where), dot(where, "m"));
  f.vertices = labels_from_json(field(j, "vertices", where), dot(where, "vertices"));
  f.fixed = labels_from_json(field(j, "fixed", where), dot(where, "fixed"));
  const std::string ew = dot(where, "edges");
  const Json& edges = array(field(j, "edges", where), ew);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string w = at(ew, i);
    const Json& e = edges[i];
    if (!e.is_array() || e.size() != 4) fail(w, "expected [i, j, w_re, w_im]");
    const auto ends = labels_from_json(Json::array({e[0], e[1]}), w);
    f.edges.push_back({ends[0], ends[1], {number(e[2], at(w, 2)), number(e[3], at(w, 3))}});
  }
  return f;
}

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(source + ": JSON syntax error at byte " + std::to_string(e.byte));
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

WeightedGraph parse_edge_list(std::string_view text, std::optional<std::size_t> n, bool directed) {
  WeightedGraph g;
  g.directed = directed;
  std::size_t max_label = 0;
  std::size_t line_no = 0;
  std::set<std::pair<long long, long long>> seen;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<std::string_view> tok;
    std::size_t p = 0;
    while (p < line.size()) {
      while (p < line.size() && (line[p] == ' ' || line[p] == '\t' || line[p] == '\r' || line[p] == ',')) ++p;
      const std::size_t q = p;
      while (p < line.size() && !(line[p] == ' ' || line[p] == '\t' || line[p] == '\r' || line[p] == ',')) ++p;
      if (p > q) tok.push_back(line.substr(q, p - q));
    }
    if (tok.empty()) continue;

    const std::string where = "line " + std::to_string(line_no);
    if (tok.size() < 2 || tok.size() > 4) fail(where, "expected \"i j [w_re [w_im]]\"");
    long long a = 0, b = 0;
    if (!parse_int(tok[0], a) || a < 1) fail(where, "vertex '" + std::string(tok[0]) + "' is not a positive integer");
    if (!parse_int(tok[1], b) || b < 1) fail(where, "vertex '" + std::string(tok[1]) + "' is not a positive integer");
    if (a > INT32_MAX || b > INT32_MAX) fail(where, "vertex label too large");
    double re = 1.0, im = 0.0;
    if (tok.size() > 2 && !parse_double(tok[2], re)) fail(where, "weight '" + std::string(tok[2]) + "' is not a number");
    if (tok.size() > 3 && !parse_double(tok[3], im)) fail(where, "weight '" + std::string(tok[3]) + "' is not a number");
    if (n && (static_cast<std::size_t>(a) > *n || static_cast<std::size_t>(b) > *n)) {
      fail(where, "vertex outside 1.." + std::to_string(*n));
    }
    max_label = std::max({max_label, static_cast<std::size_t>(a), static_cast<std::size_t>(b)});
    auto key = std::make_pair(a, b);
    if (!directed && key.first > key.second) std::swap(key.first, key.second);
    if (!seen.insert(key).second) fail(where, "duplicate edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    g.edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b), {re, im}});
  }
  g.n = n.value_or(max_label);
  return g;
}

std::string format_edge_list(const WeightedGraph& g) {
  std::ostringstream os;
  os << "# n=" << g.n << (g.directed ? " directed" : "") << "\n";
  for (const auto& e : g.edges) {
    os << e.i << ' ' << e.j;
    if (e.w != Complex(1.0)) {
      os << ' ' << Json(e.w.real()).dump();
      if (e.w.imag() != 0.0) os << ' ' << Json(e.w.imag()).dump();
    }
    os << '\n';
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
  if (!out) throw ValidationError("write to " + path + " failed");
}

}  // namespace eqd
