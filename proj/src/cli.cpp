#include "eqdecomp/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "eqdecomp/decomposition.hpp"
#include "eqdecomp/eigvec.hpp"
#include "eqdecomp/error.hpp"
#include "eqdecomp/fold.hpp"
#include "eqdecomp/generate.hpp"
#include "eqdecomp/graph.hpp"
#include "eqdecomp/io.hpp"
#include "eqdecomp/spectrum.hpp"

namespace eqd::cli {

const std::vector<std::string> kCommands = {"orbits",   "classify", "verify",     "decompose", "spectrum", "eigvecs",
                                            "radius",   "gershgorin", "fold",     "gen"};

namespace {

struct Input {
  ComplexMatrix matrix;
  std::optional<WeightedGraph> graph;
  std::optional<Permutation> automorphism;
};

bool looks_like_json(const std::string& text) {
  auto it = std::find_if(text.begin(), text.end(), [](char c) { return !std::isspace(static_cast<unsigned char>(c)); });
  return it != text.end() && (*it == '{' || *it == '[');
}

Input load_input(const std::string& path, const RunConfig& cfg) {
  const std::string text = read_file(path);
  Input in;
  auto kind = parse_matrix_kind(cfg.matrix_kind);
  if (!kind) throw ValidationError("unknown matrix kind '" + cfg.matrix_kind + "'");
  if (looks_like_json(text)) {
    const Json j = parse_json(text, path);
    if (!j.is_object()) throw ValidationError(path + ": expected a JSON object");
    if (j.contains("entries")) {
      in.matrix = matrix_from_json(j, path);
    } else if (j.contains("edges")) {
      in.graph = graph_from_json(j, path);
      in.matrix = build_matrix(*in.graph, *kind);
    } else if (j.contains("matrix")) {
      in.matrix = matrix_from_json(j["matrix"], path + ".matrix");
      if (j.contains("automorphism")) in.automorphism = permutation_from_json(j["automorphism"], path + ".automorphism");
    } else {
      throw ValidationError(path + ": not a matrix, graph or generated instance");
    }
  } else {
    try {
      in.graph = parse_edge_list(text, cfg.n, cfg.directed);
    } catch (const ValidationError& e) {
      throw ValidationError(path + ": " + e.what());
    }
    in.matrix = build_matrix(*in.graph, *kind);
  }
  if (!in.matrix.is_square()) throw ValidationError(path + ": matrix is not square");
  return in;
}

std::optional<Permutation> load_automorphism(const RunConfig& cfg, std::size_t n, const std::optional<Permutation>& fallback) {
  if (cfg.auto_cycles && cfg.auto_file) throw ValidationError("give --auto or --auto-file, not both");
  if (cfg.auto_cycles) return parse_cycles(*cfg.auto_cycles, n);
  if (cfg.auto_file) {
    const std::string text = read_file(*cfg.auto_file);
    if (looks_like_json(text)) {
      Permutation p = permutation_from_json(parse_json(text, *cfg.auto_file), *cfg.auto_file);
      if (p.size() != n) {
        throw ValidationError(*cfg.auto_file + ": permutation on " + std::to_string(p.size()) + " points, matrix has " +
                              std::to_string(n));
      }
      return p;
    }
    return parse_cycles(text, n);
  }
  return fallback;
}

Permutation require_automorphism(const RunConfig& cfg, const Input& in) {
  auto p = load_automorphism(cfg, in.matrix.rows(), in.automorphism);
  if (!p) throw ValidationError(cfg.command + " needs an automorphism (--auto or --auto-file)");
  if (p->size() != in.matrix.rows()) {
    throw ValidationError("automorphism acts on " + std::to_string(p->size()) + " points, matrix has " +
                          std::to_string(in.matrix.rows()));
  }
  return *p;
}

Input require_input(const RunConfig& cfg) {
  if (cfg.inputs.empty()) throw ValidationError(cfg.command + " needs an input file");
  if (cfg.inputs.size() > 1) throw ValidationError(cfg.command + " takes one input file");
  return load_input(cfg.inputs.front(), cfg);
}

std::string fmt(double x) { return Json(x).dump(); }

std::string entry_text(Complex z) {
  if (z.imag() == 0.0) return fmt(z.real());
  return fmt(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt(std::abs(z.imag())) + "i";
}

std::string violation_text(const ComplexMatrix& m, const Permutation& phi, const AutomorphismViolation& v) {
  const Vertex pi = phi(v.i), pj = phi(v.j);
  return "not an automorphism: M(" + std::to_string(v.i) + "," + std::to_string(v.j) + ") = " + entry_text(v.value) +
         " but M(" + std::to_string(pi) + "," + std::to_string(pj) + ") = " +
         entry_text(m(static_cast<std::size_t>(pi - 1), static_cast<std::size_t>(pj - 1)));
}

void require_is_automorphism(const ComplexMatrix& m, const Permutation& phi) {
  if (auto v = find_automorphism_violation(m, phi)) throw ValidationError(violation_text(m, phi, *v));
}

double tolerance(const RunConfig& cfg, const ComplexMatrix& m) {
  if (cfg.tol) return *cfg.tol;
  return default_spectrum_tolerance(m);
}

Json class_json(const Permutation& phi, PrimeOrder order) {
  const AutoClass c = classify(phi, order);
  Json j{{"automorphism", phi.to_string()}, {"kind", std::string(kind_name(c.kind))}};
  if (c.is_basic()) j["k"] = c.k;
  j["N"] = c.N;
  j["order"] = c.order;
  j["separable"] = c.separable;
  if (c.separable) j["primes"] = c.primes;
  return j;
}

// phi, or its separable power under --power.
struct Prepared {
  Permutation phi;
  std::uint64_t exponent = 1;
};

Prepared prepare_phi(const RunConfig& cfg, const Permutation& phi) {
  if (!cfg.power) return {phi, 1};
  auto sp = separable_power(phi);
  return {sp.psi, sp.exponent};
}

SpectrumMultiset union_of_blocks(const SequentialDecomposition& d) {
  std::vector<SpectrumMultiset> parts;
  for (const auto& fb : d.final_blocks) parts.push_back(eigenvalues(fb.matrix));
  return spectrum_union(parts);
}

Json region_report(const GershRegion& g, double area) {
  Json j = to_json(g);
  j["area"] = area;
  return j;
}

GershRegion regions_of_blocks(const SequentialDecomposition& d, RegionMode mode) {
  // Disks of the block-diagonal result, in the final vertex ordering.
  const auto& ordering = d.stages.back().decomposition.plan.ordering;
  return region(reorder(d.stages.back().matrix, ordering), mode);
}

int cmd_orbits_or_classify(const RunConfig& cfg, Json& result) {
  std::optional<Permutation> phi;
  if (!cfg.inputs.empty()) {
    const Input in = require_input(cfg);
    phi = require_automorphism(cfg, in);
  } else {
    if (!cfg.n && !cfg.auto_file) throw ValidationError(cfg.command + " needs an input file or --n");
    if (cfg.auto_file && !cfg.auto_cycles) {
      const std::string text = read_file(*cfg.auto_file);
      if (looks_like_json(text)) phi = permutation_from_json(parse_json(text, *cfg.auto_file), *cfg.auto_file);
    }
    if (!phi) {
      if (!cfg.n) throw ValidationError(cfg.command + " needs --n for cycle notation without an input file");
      phi = load_automorphism(cfg, *cfg.n, std::nullopt);
    }
    if (!phi) throw ValidationError(cfg.command + " needs an automorphism (--auto or --auto-file)");
  }
  if (cfg.command == "orbits") {
    result = Json{{"n", phi->size()}, {"automorphism", phi->to_string()}, {"orbits", orbits(*phi)}};
  } else {
    result = class_json(*phi, cfg.prime_order);
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg, Json& result, std::ostream& err) {
  const Input in = require_input(cfg);
  const Permutation phi = require_automorphism(cfg, in);
  result = Json{{"automorphism", phi.to_string()}};
  if (auto v = find_automorphism_violation(in.matrix, phi)) {
    result["is_automorphism"] = false;
    result["violation"] = Json{{"i", v->i}, {"j", v->j}, {"image_i", phi(v->i)}, {"image_j", phi(v->j)}};
    err << "eqdecomp: " << violation_text(in.matrix, phi, *v) << "\n";
    return 1;
  }
  result["is_automorphism"] = true;
  return 0;
}

int cmd_decompose(const RunConfig& cfg, Json& result, const JsonStyle& style) {
  const Input in = require_input(cfg);
  const Permutation phi0 = require_automorphism(cfg, in);
  require_is_automorphism(in.matrix, phi0);
  const Prepared p = prepare_phi(cfg, phi0);
  const SequentialDecomposition d = decompose_separable(in.matrix, p.phi, cfg.prime_order);
  result = Json{{"automorphism", phi0.to_string()}};
  if (cfg.power) {
    result["power"] = p.exponent;
    result["decomposed_over"] = p.phi.to_string();
  }
  result["class"] = class_json(p.phi, cfg.prime_order);
  const Json body = to_json(d, style);
  for (auto& [key, value] : body.items()) result[key] = value;
  return 0;
}

int cmd_spectrum(const RunConfig& cfg, Json& result, const JsonStyle& style) {
  const Input in = require_input(cfg);
  const SpectrumMultiset full = eigenvalues(in.matrix);
  result = Json{{"n", in.matrix.rows()}, {"eigenvalues", vector_to_json(full, style)}};
  auto phi0 = load_automorphism(cfg, in.matrix.rows(), in.automorphism);
  if (!phi0) return 0;
  require_is_automorphism(in.matrix, *phi0);
  const Prepared p = prepare_phi(cfg, *phi0);
  const SequentialDecomposition d = decompose_separable(in.matrix, p.phi, cfg.prime_order);
  Json blocks = Json::array();
  for (const auto& fb : d.final_blocks) {
    blocks.push_back(Json{{"labels", fb.labels}, {"eigenvalues", vector_to_json(eigenvalues(fb.matrix), style)}});
  }
  const double tol = tolerance(cfg, in.matrix);
  const bool same = multiset_equal(full, union_of_blocks(d), tol);
  result["divisor_eigenvalues"] = blocks.front()["eigenvalues"];
  result["blocks"] = blocks;
  result["tolerance"] = tol;
  result["preserved"] = same;
  if (!same) throw InvariantError("block spectra do not reproduce the spectrum of the matrix");
  return 0;
}

int cmd_eigvecs(const RunConfig& cfg, Json& result, const JsonStyle& style) {
  const Input in = require_input(cfg);
  const Permutation phi0 = require_automorphism(cfg, in);
  require_is_automorphism(in.matrix, phi0);
  const Prepared p = prepare_phi(cfg, phi0);
  const SequentialDecomposition d = decompose_separable(in.matrix, p.phi, cfg.prime_order);
  const auto basis = computed_eigenbasis(d);
  const double norm = std::max(in.matrix.inf_norm(), 1e-300);
  double worst = 0.0;
  for (const auto& v : basis) {
    CVector r = in.matrix * std::span<const Complex>(v.vector);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= v.eigenvalue * v.vector[i];
    worst = std::max(worst, norm2(r) / (norm * norm2(v.vector)));
  }
  result = Json{{"automorphism", phi0.to_string()}, {"relative_residual", worst}, {"vectors", to_json(basis, style)}};
  if (worst > 1e-8) throw InvariantError("lifted eigenvector residual " + fmt(worst) + " exceeds 1e-8");
  return 0;
}

int cmd_radius(const RunConfig& cfg, Json& result, const JsonStyle& style) {
  const Input in = require_input(cfg);
  const Permutation phi0 = require_automorphism(cfg, in);
  require_is_automorphism(in.matrix, phi0);
  const Prepared p = prepare_phi(cfg, phi0);
  const DivisorRadius r = divisor_spectral_radius(in.matrix, p.phi, cfg.prime_order);
  result = Json{{"automorphism", phi0.to_string()},
                {"rho", r.rho},
                {"irreducible", r.irreducible},
                {"is_eigenvalue_of_divisor", r.is_eigenvalue_of_divisor},
                {"divisor_labels", r.divisor_labels},
                {"divisor", to_json(r.divisor, style)}};
  return 0;
}

int cmd_gershgorin(const RunConfig& cfg, Json& result) {
  const Input in = require_input(cfg);
  const double area_tol = 1e-4;
  auto phi0 = load_automorphism(cfg, in.matrix.rows(), in.automorphism);
  if (!phi0) {
    const GershRegion g = region(in.matrix, cfg.mode);
    result = Json{{"mode", std::string(mode_name(cfg.mode))}, {"original", region_report(g, union_area(g, area_tol))}};
    return 0;
  }
  require_is_automorphism(in.matrix, *phi0);
  const Prepared p = prepare_phi(cfg, *phi0);
  const SequentialDecomposition d = decompose_separable(in.matrix, p.phi, cfg.prime_order);
  const auto& ordering = d.stages.back().decomposition.plan.ordering;
  const GershRegion original = region(reorder(in.matrix, ordering), cfg.mode);
  const GershRegion decomposed = regions_of_blocks(d, cfg.mode);
  const double a0 = union_area(original, area_tol);
  const double a1 = union_area(decomposed, area_tol);
  result = Json{{"mode", std::string(mode_name(cfg.mode))}, {"automorphism", phi0->to_string()}, {"ordering", ordering}};
  result["original"] = region_report(original, a0);
  result["decomposed"] = region_report(decomposed, a1);
  result["area_ratio"] = a0 > 0 ? a1 / a0 : 1.0;
  if (cfg.mode == RegionMode::rows) {
    const bool contained = region_contained(decomposed, original);
    result["contained"] = contained;
    if (!contained) throw InvariantError("decomposed Gershgorin region is not contained in the original");
  }
  return 0;
}

WeightedGraph graph_of_matrix(const ComplexMatrix& m) {
  WeightedGraph g;
  g.n = m.rows();
  g.directed = true;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != Complex(0.0)) g.edges.push_back({static_cast<Vertex>(i + 1), static_cast<Vertex>(j + 1), m(i, j)});
  return g;
}

int cmd_fold(const RunConfig& cfg, Json& result, std::string& text, const JsonStyle& style) {
  const Input in = require_input(cfg);
  const Permutation psi = require_automorphism(cfg, in);
  if (!classify(psi).is_basic()) {
    throw ValidationError("fold needs a basic automorphism; " + psi.to_string() + " is not basic");
  }
  // Fold the graph whose weighted adjacency is the selected matrix.
  const WeightedGraph g = in.graph && parse_matrix_kind(cfg.matrix_kind) == MatrixKind::weighted_adjacency
                              ? *in.graph
                              : graph_of_matrix(in.matrix);
  const SemiTransversalPlan plan = choose_semi_transversal(psi);
  std::vector<FoldedGraph> family;
  if (cfg.fold_index) family.push_back(fold(g, psi, plan, *cfg.fold_index));
  else family = fold_family(g, psi, plan);

  if (cfg.format == "dot") {
    for (const auto& f : family) text += export_dot(f);
    return 0;
  }
  result = Json::array();
  for (const auto& f : family) result.push_back(to_json(f, style));
  return 0;
}

int cmd_gen(const RunConfig& cfg, Json& result) {
  std::mt19937_64 rng(cfg.seed);
  auto kind = parse_value_kind(cfg.gen_kind);
  if (!kind) throw ValidationError("unknown value kind '" + cfg.gen_kind + "'");
  if (!(cfg.gen_density > 0.0 && cfg.gen_density <= 1.0)) throw ValidationError("--density must be in (0, 1]");
  GenOptions opt{*kind, cfg.gen_density, true};
  PlantedInstance inst;
  if (cfg.gen_primes.empty()) {
    inst = planted_basic(rng, cfg.gen_N, cfg.gen_r, cfg.gen_k, opt);
  } else {
    if (cfg.gen_primes.size() != 2) throw ValidationError("--primes takes exactly two primes");
    for (auto p : cfg.gen_primes) {
      const auto f = factorize(p);
      if (f.size() != 1 || f[0].second != 1) throw ValidationError(std::to_string(p) + " is not prime");
    }
    if (cfg.gen_primes[0] == cfg.gen_primes[1]) throw ValidationError("--primes must be distinct");
    inst = planted_two_prime(rng, cfg.gen_primes[0], cfg.gen_primes[1], cfg.gen_max_n, opt);
  }
  result = Json{{"seed", cfg.seed}, {"matrix", to_json(inst.matrix)}, {"automorphism", to_json(inst.automorphism)}};
  return 0;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.tol && !(*cfg.tol > 0.0)) throw ValidationError("tolerance must be positive");
    if (cfg.format != "json" && cfg.format != "dot") throw ValidationError("--format must be json or dot");
    if (cfg.format == "dot" && cfg.command != "fold") throw ValidationError("--format dot applies to fold only");
    const JsonStyle style{cfg.snap};
    Json result;
    std::string text;
    int code = 0;
    const std::string& c = cfg.command;
    if (c == "orbits" || c == "classify") code = cmd_orbits_or_classify(cfg, result);
    else if (c == "verify") code = cmd_verify(cfg, result, err);
    else if (c == "decompose") code = cmd_decompose(cfg, result, style);
    else if (c == "spectrum") code = cmd_spectrum(cfg, result, style);
    else if (c == "eigvecs") code = cmd_eigvecs(cfg, result, style);
    else if (c == "radius") code = cmd_radius(cfg, result, style);
    else if (c == "gershgorin") code = cmd_gershgorin(cfg, result);
    else if (c == "fold") code = cmd_fold(cfg, result, text, style);
    else if (c == "gen") code = cmd_gen(cfg, result);
    else throw ValidationError("unknown command '" + c + "'");

    if (text.empty()) text = dump(result);
    if (cfg.out) write_file(*cfg.out, text);
    else out << text;
    return code;
  } catch (const ValidationError& e) {
    err << "eqdecomp: " << e.what() << "\n";
    return 1;
  } catch (const InvariantError& e) {
    err << "eqdecomp: internal check failed: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "eqdecomp: internal error: " << e.what() << "\n";
    return 2;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Equitable decompositions of automorphism-compatible matrices", "eqdecomp"};
  app.add_option("command", cfg.command, "orbits | classify | verify | decompose | spectrum | eigvecs | radius | "
                                         "gershgorin | fold | gen")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("input", cfg.inputs, "graph JSON, matrix JSON, generated instance or edge list");
  app.add_option("--auto", cfg.auto_cycles, "automorphism in cycle notation, e.g. \"(2,5,8)(3,6,9,4,7,10)\"");
  app.add_option("--auto-file", cfg.auto_file, "file with the automorphism (cycle notation or permutation JSON)");
  std::string mode = "rows";
  app.add_option("--mode", mode, "Gershgorin disks from rows or columns")->check(CLI::IsMember({"rows", "columns"}));
  std::string prime_order = "largest";
  app.add_option("--prime-order", prime_order, "order of the primes in a sequential decomposition")
      ->check(CLI::IsMember({"largest", "ascending"}));
  app.add_option("--tol", cfg.tol, "spectrum comparison tolerance (default: EQDECOMP_TOL or 1e-8 scaled)");
  app.add_flag("--power", cfg.power, "decompose over the separable power of the automorphism");
  app.add_option("--seed", cfg.seed, "random seed for gen");
  app.add_option("--out", cfg.out, "write the result to a file instead of stdout");
  app.add_option("--format", cfg.format, "json, or dot for fold")->check(CLI::IsMember({"json", "dot"}));
  app.add_option("--matrix", cfg.matrix_kind, "matrix built from a graph input")
      ->check(CLI::IsMember({"adjacency", "laplacian", "signless_laplacian", "normalized_laplacian", "distance",
                             "weighted_adjacency"}));
  bool exact = false;
  app.add_flag("--exact", exact, "print near-integers unrounded");
  app.add_option("--n", cfg.n, "vertex count for edge lists and bare cycle notation");
  app.add_flag("--directed", cfg.directed, "read edge lists as directed");
  app.add_option("--m", cfg.fold_index, "fold a single family member");
  app.add_option("--N", cfg.gen_N, "gen: fixed vertices");
  app.add_option("--r", cfg.gen_r, "gen: vertices per copy")->check(CLI::PositiveNumber);
  app.add_option("--k", cfg.gen_k, "gen: orbit size")->check(CLI::Range(2, 1 << 20));
  app.add_option("--kind", cfg.gen_kind, "gen: nonnegative | real | complex | integer")
      ->check(CLI::IsMember({"nonnegative", "real", "complex", "integer"}));
  app.add_option("--primes", cfg.gen_primes, "gen: two primes for a non-basic instance of order p*q")->delimiter(',');
  app.add_option("--max-n", cfg.gen_max_n, "gen: vertex budget for --primes");
  app.add_option("--density", cfg.gen_density, "gen: probability that an entry is nonzero");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "eqdecomp: " << e.what() << "\n";
    return 1;
  }
  cfg.mode = *parse_region_mode(mode);
  cfg.prime_order = prime_order == "ascending" ? PrimeOrder::ascending : PrimeOrder::largest_first;
  cfg.snap = !exact;
  if (!cfg.tol) {
    if (const char* env = std::getenv("EQDECOMP_TOL"); env && *env) {
      char* end = nullptr;
      const double t = std::strtod(env, &end);
      if (end == env || *end != '\0' || !(t > 0.0)) {
        err << "eqdecomp: EQDECOMP_TOL must be a positive number\n";
        return 1;
      }
      cfg.tol = t;
    }
  }
  return run(cfg, out, err);
}

}  // namespace eqd::cli
