// flatchain command-line interface.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "flatchain/deform.hpp"
#include "flatchain/errors.hpp"
#include "flatchain/flatnorm.hpp"
#include "flatchain/random.hpp"
#include "flatchain/serialize.hpp"
#include "flatchain/simplexchain.hpp"
#include "flatchain/slicing.hpp"
#include "flatchain/tensor.hpp"
#include "flatchain/verify.hpp"

using namespace flatchain;
using nlohmann::json;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;

struct Globals {
  std::uint64_t seed = 42;
  int refinement = 1;
  std::string margin = "1";
  std::string backend;
  std::string format;
};

FlatOptions flat_options(const Globals& g) {
  FlatOptions o;
  o.backend = g.backend.empty() ? backend_from_env() : parse_backend(g.backend);
  return o;
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_rational(item));
  }
  return out;
}

json rationals_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

std::string gamma_string(const std::vector<int>& gamma) {
  std::string s;
  for (int a : gamma) s += (s.empty() ? "" : " ") + std::to_string(a);
  return s;
}

std::string csv_field(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

// JSON: the whole report. CSV: the rows under `columns`.
void emit_report(const json& report, const std::vector<std::string>& columns, const std::string& format) {
  if (format == "csv") {
    for (std::size_t i = 0; i < columns.size(); ++i) std::cout << (i ? "," : "") << columns[i];
    std::cout << "\n";
    for (const auto& row : report.at("rows")) {
      for (std::size_t i = 0; i < columns.size(); ++i) {
        std::cout << (i ? "," : "") << (row.contains(columns[i]) ? csv_field(row.at(columns[i])) : "");
      }
      std::cout << "\n";
    }
    return;
  }
  std::cout << report.dump(2) << "\n";
}

std::string format_or(const Globals& g, const std::string& fallback) { return g.format.empty() ? fallback : g.format; }

json base_report(const std::string& command, const Globals& g) {
  return {{"command", command}, {"parameters", {{"seed", g.seed}, {"refinement", g.refinement}, {"margin", g.margin}}}};
}

Coefficient parse_coefficient(const std::string& text, long modulus) {
  if (modulus > 0) return Coefficient::residue(std::stol(text), modulus);
  const Rational q = parse_rational(text);
  if (q.get_den() == 1 && text.find('/') == std::string::npos) return Coefficient::integer(q.get_num().get_si());
  return Coefficient::rational(q);
}

void write_lines(const std::string& path, const std::vector<ChainDocument>& docs) {
  if (path.empty() || path == "-") {
    write_corpus(std::cout, docs);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  write_corpus(out, docs);
}

// ---------------------------------------------------------------- compute

int cmd_compute(const Globals& g, const std::string& file, const std::string& what, int split_n1) {
  const ChainDocument doc = read_document_file(file);
  json report = base_report("compute", g);
  report["what"] = what;
  switch (doc.kind) {
    case ChainKind::coordinate: {
      const CoordChain& c = *doc.coord;
      if (what == "mass") {
        report["mass"] = to_string(mass(c));
      } else if (what == "slicemass") {
        report["slicing_mass"] = to_string(slicing_mass(c).total);
      } else if (what == "nnorm") {
        const NNorm nn = n_norm(c);
        report["n"] = to_string(nn.n);
        report["n_sl"] = to_string(nn.n_sl);
      } else if (what == "boundary") {
        std::cout << emit_document(ChainDocument::of(boundary(c))) << "\n";
        return 0;
      } else if (what == "jdecomp") {
        if (split_n1 <= 0 || split_n1 >= c.ambient_dim()) throw DomainError("jdecomp needs --split n1 with 0 < n1 < n");
        std::vector<ChainDocument> parts;
        for (const auto& [b, part] : jdecomp(c, Split{split_n1, c.ambient_dim() - split_n1})) {
          if (!part.empty()) parts.push_back(ChainDocument::of(part));
        }
        write_corpus(std::cout, parts);
        return 0;
      } else if (what == "chi") {
        report["chi"] = coefficient_to_json(chi(c));
      } else {
        throw DomainError("unknown quantity '" + what + "'");
      }
      break;
    }
    case ChainKind::tensor: {
      const TensorChain& t = *doc.tensor;
      if (what == "mass") {
        report["mass"] = to_string(tensor_mass(t));
      } else if (what == "slicemass") {
        report["slicing_mass"] = to_string(slicing_mass_tensor(t).total);
      } else if (what == "nnorm") {
        const NNorm nn = n_norm_tensor(t);
        report["n"] = to_string(nn.n);
        report["n_sl"] = to_string(nn.n_sl);
      } else if (what == "boundary") {
        std::vector<ChainDocument> parts;
        if (t.bidegree().k1 > 0) parts.push_back(ChainDocument::of(d1(t)));
        if (t.bidegree().k2 > 0) parts.push_back(ChainDocument::of(d2(t)));
        write_corpus(std::cout, parts);
        return 0;
      } else if (what == "chi") {
        report["chi"] = coefficient_to_json(chi_tensor(t));
      } else {
        throw DomainError("'" + what + "' is not available for tensor chains");
      }
      break;
    }
    case ChainKind::simplicial: {
      const SimplexChain& s = *doc.simplicial;
      if (what == "mass") {
        const SimplexMass m = s_mass(s);
        if (m.exact) report["mass"] = to_string(*m.exact);
        else report["mass_float"] = m.value;
      } else if (what == "slicemass") {
        report["slicing_mass"] = to_string(s_slicing_mass(s));
      } else if (what == "boundary") {
        std::cout << emit_document(ChainDocument::of(s_boundary(s))) << "\n";
        return 0;
      } else {
        throw DomainError("'" + what + "' is not available for simplicial chains");
      }
      break;
    }
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- flatnorm

int cmd_flatnorm(const Globals& g, const std::string& file, bool sweep, const std::string& witness_path) {
  const ChainDocument doc = read_document_file(file);
  if (doc.kind == ChainKind::simplicial) throw DomainError("flat norms are computed for coordinate and tensor chains");
  const CoordChain& body = doc.kind == ChainKind::tensor ? doc.tensor->body() : *doc.coord;
  const Rational margin = parse_rational(g.margin);
  const FlatOptions opts = flat_options(g);
  json report = base_report("flatnorm", g);
  report["rows"] = json::array();
  std::vector<int> refinements = sweep ? std::vector<int>{1, 2, 4} : std::vector<int>{g.refinement};
  Rational prev = -1;
  bool monotone = true;
  std::vector<ChainDocument> witness;
  for (int r : refinements) {
    const InducedComplex cx = induced_complex({body}, margin, r);
    json row{{"refinement", r}};
    Rational value;
    if (doc.kind == ChainKind::tensor) {
      const TensorFlatWitness w = tensor_flat_norm_grid(*doc.tensor, cx, opts);
      value = w.value;
      row["backend"] = w.method;
      row["witness"] = {{"mass_r00", to_string(tensor_mass(w.r00))}, {"verified", verify_tensor_witness(*doc.tensor, w)}};
      witness = {ChainDocument::of(w.r00)};
      for (const auto* part : {&w.r10, &w.r01, &w.r11}) {
        if (*part) witness.push_back(ChainDocument::of(**part));
      }
    } else {
      const FlatWitness w = flat_norm_grid(*doc.coord, cx, opts);
      value = w.value;
      row["backend"] = w.method;
      row["witness"] = {{"mass_r", to_string(mass(w.r))}, {"mass_s", to_string(mass(w.s))}, {"rows", w.rows},
                        {"cols", w.cols}, {"verified", verify_witness(*doc.coord, w)}};
      witness = {ChainDocument::of(w.r), ChainDocument::of(w.s)};
    }
    row["value"] = to_string(value);
    if (prev >= 0 && value > prev) monotone = false;
    prev = value;
    report["rows"].push_back(row);
  }
  report["value"] = report["rows"].back()["value"];
  if (sweep) report["monotone"] = monotone;
  if (!witness_path.empty()) write_lines(witness_path, witness);
  emit_report(report, {"refinement", "value", "backend"}, format_or(g, "json"));
  return 0;
}

// ---------------------------------------------------------------- slicemass

int cmd_slicemass(const Globals& g, const std::string& file) {
  const ChainDocument doc = read_document_file(file);
  json report = base_report("slicemass", g);
  report["rows"] = json::array();
  if (doc.kind == ChainKind::simplicial) {
    // No per-plane split for overlapping simplices; the total only.
    const Rational total = s_slicing_mass(*doc.simplicial);
    report["total"] = to_string(total);
    report["rows"].push_back({{"gamma", "all"}, {"mass", to_string(total)}});
  } else {
    const SlicingMass sm = doc.kind == ChainKind::coordinate ? slicing_mass(*doc.coord) : slicing_mass_tensor(*doc.tensor);
    report["total"] = to_string(sm.total);
    for (const auto& [gamma, m] : sm.per_gamma) report["rows"].push_back({{"gamma", gamma_string(gamma)}, {"mass", to_string(m)}});
  }
  emit_report(report, {"gamma", "mass"}, format_or(g, "csv"));
  return 0;
}

// ---------------------------------------------------------------- deform

CoordChain deform_body(const ChainDocument& doc, const GridSpec& grid) {
  switch (doc.kind) {
    case ChainKind::coordinate:
      return deform_P(*doc.coord, grid);
    case ChainKind::tensor:
      return deform_Pi0(*doc.tensor, grid).body();
    case ChainKind::simplicial:
      return deform_P(*doc.simplicial, grid);
  }
  return {};
}

int ambient_of(const ChainDocument& doc) {
  switch (doc.kind) {
    case ChainKind::coordinate:
      return doc.coord->ambient_dim();
    case ChainKind::tensor:
      return doc.tensor->body().ambient_dim();
    case ChainKind::simplicial:
      return doc.simplicial->ambient_dim();
  }
  return 0;
}

int cmd_deform(const Globals& g, const std::string& file, const std::string& eps_text, const std::string& shift_text,
               int random_shifts, const std::string& out_path) {
  const ChainDocument doc = read_document_file(file);
  const int n = ambient_of(doc);
  const Rational eps = parse_rational(eps_text);
  if (eps <= 0) throw DomainError("eps must be positive");
  json report = base_report("deform", g);
  report["eps"] = to_string(eps);
  if (random_shifts > 0) {
    report["rows"] = json::array();
    for (int i = 0; i < random_shifts; ++i) {
      const RationalVector y = sample_shift(n, eps, g.seed, 0, static_cast<std::uint64_t>(i));
      json row{{"index", i}, {"shift", rationals_json(y)}};
      try {
        const CoordChain p = deform_body(doc, GridSpec{eps, y});
        row["mass"] = to_string(mass(p));
        row["cells"] = p.terms().size();
      } catch (const DegenerateError& e) {
        row["degenerate"] = e.what();
      }
      report["rows"].push_back(row);
    }
    emit_report(report, {"index", "mass", "cells"}, format_or(g, "json"));
    return 0;
  }
  RationalVector y = shift_text.empty() ? RationalVector(static_cast<std::size_t>(n), Rational(0)) : parse_list(shift_text);
  if (static_cast<int>(y.size()) != n) throw DomainError("shift needs " + std::to_string(n) + " coordinates");
  const CoordChain p = deform_body(doc, GridSpec{eps, y});
  ChainDocument out = doc.kind == ChainKind::tensor ? ChainDocument::of(deform_Pi0(*doc.tensor, GridSpec{eps, y}))
                                                    : ChainDocument::of(p);
  report["shift"] = rationals_json(y);
  report["mass"] = to_string(mass(p));
  report["cells"] = p.terms().size();
  if (out_path.empty()) {
    report["chain"] = to_json(out);
  } else {
    write_document_file(out_path, out);
    report["output"] = out_path;
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_avg_deform(const Globals& g, const std::string& file, const std::string& eps_text, std::size_t samples) {
  const ChainDocument doc = read_document_file(file);
  const Rational eps = parse_rational(eps_text);
  json report = base_report("avg-deform", g);
  report["eps"] = to_string(eps);
  const CoordChain* c = doc.kind == ChainKind::coordinate ? &*doc.coord : doc.kind == ChainKind::tensor ? &doc.tensor->body() : nullptr;
  try {
    const AverageMass ex = c ? shift_average_mass_exact(*c, eps) : shift_average_mass_exact(*doc.simplicial, eps);
    report["exact"] = to_string(ex.value);
    report["boxes"] = ex.boxes;
  } catch (const CapabilityError& e) {
    report["exact_unavailable"] = e.what();
  }
  if (samples > 0) {
    const AverageMass mc = c ? shift_average_mass_mc(*c, eps, samples, g.seed) : shift_average_mass_mc(*doc.simplicial, eps, samples, g.seed);
    report["monte_carlo"] = {{"mean", mc.mean}, {"stderr", mc.stderr_}, {"samples", mc.samples}};
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_converge(const Globals& g, const std::string& file, const std::string& eps_text, std::size_t samples, int steps) {
  const ChainDocument doc = read_document_file(file);
  const std::vector<Rational> eps = parse_list(eps_text);
  const FlatOptions opts = flat_options(g);
  std::vector<ConvergenceRow> rows;
  if (doc.kind == ChainKind::simplicial) rows = convergence_experiment(*doc.simplicial, eps, samples, g.seed, g.refinement, steps, opts);
  else if (doc.kind == ChainKind::coordinate) rows = convergence_experiment(*doc.coord, eps, samples, g.seed, g.refinement, opts);
  else throw DomainError("converge takes coordinate or simplicial chains");
  json report = base_report("converge", g);
  report["samples"] = samples;
  report["rows"] = json::array();
  bool decreasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    report["rows"].push_back({{"eps", to_string(r.eps)}, {"mean", r.mean}, {"stderr", r.stderr_},
                              {"values", rationals_json(r.values)}, {"surrogate_slack", to_string(r.surrogate_slack)}});
    if (i > 0 && !(r.mean < rows[i - 1].mean)) decreasing = false;
  }
  report["decreasing"] = decreasing;
  if (!rows.empty() && rows.front().mean > 0) report["final_over_initial"] = rows.back().mean / rows.front().mean;
  emit_report(report, {"eps", "mean", "stderr", "surrogate_slack"}, format_or(g, "json"));
  return 0;
}

int cmd_cauchy(const Globals& g, const std::string& file, int j, const std::string& coeff, int levels, int shifts) {
  const TensorChain t = file.empty() ? staircase_chain(parse_coefficient(coeff, 0), j) : *read_document_file(file).tensor;
  std::vector<RationalVector> ys;
  for (int s = 0; s < shifts; ++s) ys.push_back(sample_shift(t.body().ambient_dim(), Rational(1), g.seed, 0, static_cast<std::uint64_t>(s)));
  const CauchyResult cr = cauchy_experiment(t, levels, ys, g.refinement, flat_options(g));
  json report = base_report("cauchy", g);
  report["shifts"] = shifts;
  report["rows"] = json::array();
  for (std::size_t i = 0; i < cr.tensor_mean.size(); ++i) {
    report["rows"].push_back({{"j", i}, {"tensor_mean", cr.tensor_mean[i]}, {"ordinary_mean", cr.ordinary_mean[i]}});
  }
  report["ratio"] = cr.ratio;
  report["constant"] = cr.constant;
  report["decreasing"] = cr.decreasing;
  report["partial_sums_consistent"] = cr.partial_sums_consistent;
  emit_report(report, {"j", "tensor_mean", "ordinary_mean"}, format_or(g, "json"));
  return 0;
}

int cmd_counterexample(const Globals& g, int j_max, const std::string& coeff, long modulus, bool grid) {
  const Counterexample ce = counterexample_build(parse_coefficient(coeff, modulus), j_max, grid);
  json report = base_report("counterexample", g);
  if (ce.q_mass.exact) report["q_mass"] = to_string(*ce.q_mass.exact);
  else report["q_mass_float"] = ce.q_mass.value;
  report["rows"] = json::array();
  for (const auto& lv : ce.levels) {
    json row{{"j", lv.j},
             {"slicing_mass", to_string(lv.slicing_mass)},
             {"prism_mass", to_string(lv.prism_mass)},
             {"prism_identity", lv.prism_identity},
             {"b_anticommutes", lv.b_anticommutes},
             {"b_mass_right", to_string(lv.b_mass_right)},
             {"b_chi_antidiagonal", coefficient_to_json(lv.b_chi_antidiagonal)}};
    if (lv.grid_distance) row["grid_distance"] = to_string(*lv.grid_distance);
    report["rows"].push_back(row);
  }
  emit_report(report, {"j", "slicing_mass", "prism_mass", "grid_distance", "b_mass_right", "b_chi_antidiagonal"},
              format_or(g, "json"));
  return 0;
}

int cmd_grassmann(const Globals& g, const std::string& file, std::size_t samples) {
  const ChainDocument doc = read_document_file(file);
  if (doc.kind != ChainKind::simplicial) throw DomainError("grassmann takes a simplicial chain");
  json report = base_report("grassmann", g);
  report["rows"] = json::array();
  std::uint64_t index = 0;
  for (const auto& [s, coeff] : doc.simplicial->terms()) {
    const GrassmannEstimate e = grassmann_avg(s, samples, derive_seed(g.seed, 0, index));
    report["rows"].push_back({{"index", index}, {"n", e.n}, {"k", e.k}, {"samples", e.samples}, {"estimate", e.estimate},
                              {"stderr", e.stderr_}, {"mass", e.mass}, {"ratio", e.ratio}, {"ratio_stderr", e.ratio_stderr}});
    ++index;
  }
  emit_report(report, {"index", "n", "k", "estimate", "stderr", "mass", "ratio", "ratio_stderr"}, format_or(g, "json"));
  return 0;
}

int cmd_verify(const Globals& g, const std::string& suite, bool timing) {
  VerifyOptions opts;
  opts.seed = g.seed;
  const VerifyReport r = run_verify(suite, opts);
  json report = report_to_json(r, timing);
  report["rows"] = report["checks"];
  if (format_or(g, "json") == "csv") {
    emit_report(report, {"id", "module", "passed", "gated", "seconds", "detail"}, "csv");
  } else {
    report.erase("rows");
    std::cout << report.dump(2) << "\n";
  }
  return r.passed() ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact flat chains: masses, slicing, flat norms and grid deformations"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random stream")->capture_default_str();
  app.add_option("--refinement", g.refinement, "Subdivisions per gap of the induced complex")->capture_default_str();
  app.add_option("--margin", g.margin, "Margin of the induced complex (rational)")->capture_default_str();
  app.add_option("--backend", g.backend, "automatic|network|simplex|exhaustive (default: FLATCHAIN_LP_BACKEND)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::string file, what = "mass", eps = "1", shift, out, suite = "all", coeff = "1", witness;
  std::string eps_list = "1,1/2,1/4,1/8";
  int split_n1 = 0, random_shifts = 0, steps = 64, levels = 4, shifts = 32, j = 3, j_max = 3;
  long modulus = 0;
  std::size_t samples = 10000, conv_samples = 8;
  bool sweep = false, no_grid = false, no_timing = false;

  auto* compute = app.add_subcommand("compute", "Exact mass, slicing mass, N-norm, boundary, decomposition or chi");
  compute->add_option("file", file, "Chain document")->required();
  compute->add_option("--what", what, "mass|slicemass|nnorm|boundary|jdecomp|chi")->capture_default_str();
  compute->add_option("--split", split_n1, "n1 of the split for jdecomp");

  auto* flat = app.add_subcommand("flatnorm", "Flat norm on the induced grid complex");
  flat->add_option("file", file)->required();
  flat->add_flag("--sweep", sweep, "Refinements 1, 2, 4");
  flat->add_option("--witness", witness, "Write the witness chains as JSON lines");

  auto* slice = app.add_subcommand("slicemass", "Slicing mass per coordinate plane family");
  slice->add_option("file", file)->required();

  auto* deform = app.add_subcommand("deform", "Deform onto the eps-grid");
  deform->add_option("file", file)->required();
  deform->add_option("--eps", eps)->capture_default_str();
  deform->add_option("--shift", shift, "Comma-separated rationals");
  deform->add_option("--random-shifts", random_shifts, "Sample this many shifts instead");
  deform->add_option("--out", out, "Output chain document");

  auto* avg = app.add_subcommand("avg-deform", "Shift-averaged mass of the deformation");
  avg->add_option("file", file)->required();
  avg->add_option("--eps", eps)->capture_default_str();
  avg->add_option("--samples", samples, "Monte-Carlo samples (0 disables)")->capture_default_str();

  auto* conv = app.add_subcommand("converge", "Flat-distance bounds between a chain and its deformations");
  conv->add_option("file", file)->required();
  conv->add_option("--eps", eps_list)->capture_default_str();
  conv->add_option("--samples", conv_samples, "Shifts per eps")->capture_default_str();
  conv->add_option("--steps", steps, "Staircase steps for segments")->capture_default_str();

  auto* cauchy = app.add_subcommand("cauchy", "Successive-level tensor flat distances");
  cauchy->add_option("file", file, "Tensor chain (default: the staircase R'_j)");
  cauchy->add_option("--j", j)->capture_default_str();
  cauchy->add_option("--g", coeff)->capture_default_str();
  cauchy->add_option("--levels", levels)->capture_default_str();
  cauchy->add_option("--shifts", shifts)->capture_default_str();

  auto* counter = app.add_subcommand("counterexample", "Staircase chains whose tensor slicing mass stays 2|g|");
  counter->add_option("--jmax", j_max)->capture_default_str();
  counter->add_option("--g", coeff)->capture_default_str();
  counter->add_option("--modulus", modulus, "Use Z/m coefficients");
  counter->add_flag("--no-grid", no_grid, "Skip grid flat distances");

  auto* grass = app.add_subcommand("grassmann", "Monte-Carlo average of projected masses over rotations");
  grass->add_option("file", file)->required();
  grass->add_option("--samples", samples)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run property checks and acceptance criteria");
  verify->add_option("--suite", suite)->check(CLI::IsMember(suite_names()))->capture_default_str();
  verify->add_flag("--no-timing", no_timing, "Omit wall times for reproducible reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*compute) return cmd_compute(g, file, what, split_n1);
    if (*flat) return cmd_flatnorm(g, file, sweep, witness);
    if (*slice) return cmd_slicemass(g, file);
    if (*deform) return cmd_deform(g, file, eps, shift, random_shifts, out);
    if (*avg) return cmd_avg_deform(g, file, eps, samples);
    if (*conv) return cmd_converge(g, file, eps_list, conv_samples, steps);
    if (*cauchy) return cmd_cauchy(g, file, j, coeff, levels, shifts);
    if (*counter) return cmd_counterexample(g, j_max, coeff, modulus, !no_grid);
    if (*grass) return cmd_grassmann(g, file, samples);
    if (*verify) return cmd_verify(g, suite, !no_timing);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
