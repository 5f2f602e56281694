#include "cli.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "toricdyn/dynamics/corpus.hpp"
#include "toricdyn/dynamics/monomial_map.hpp"
#include "toricdyn/io/json_io.hpp"
#include "toricdyn/io/svg.hpp"
#include "toricdyn/weights/displacement.hpp"

namespace toricdyn::cli {

namespace {

using io::Json;

/// Raised for violated invariants (pipeline vs closed form, unbalanced weights, invalid fans).
struct InvariantViolation : std::runtime_error {
  Json report;
  InvariantViolation(const std::string& message, Json r) : std::runtime_error(message), report(std::move(r)) {}
};

struct Config {
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;
  std::string matrix;
  std::string fan;
  std::string weight;
  std::string other_weight;
  std::string src_fan;
  std::string type = "p1n";
  std::string method = "closed";
  std::string plot;
  int k = -1;
  int n = 0;
  int lmax = 0;
  bool smooth = false;
  bool log2 = false;
  int count = 50;
  int bound = 3;
  std::vector<std::string> checks{"oracle", "weight", "growth"};
};

bool is_input_error(ErrorKind kind) {
  return kind != ErrorKind::GenericityFailure && kind != ErrorKind::Exhausted;
}

void apply_thread_cap() {
  const char* env = std::getenv("TORICDYN_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long cap = std::strtol(env, &end, 10);
  if (*end != '\0' || cap < 1) throw Error(ErrorKind::InvalidInput, "TORICDYN_THREADS must be a positive integer");
  omp_set_num_threads(static_cast<int>(std::min<long>(cap, omp_get_max_threads())));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

fans::Fan standard(const std::string& type, int n) {
  if (n < 1) throw Error(ErrorKind::OutOfRange, "n must be at least 1");
  if (type == "p1n") return fans::fan_p1n(n);
  if (type == "pn") return fans::fan_pn(n);
  throw Error(ErrorKind::UnsupportedTarget, "unknown fan type '" + type + "'");
}

weights::FanPtr load_fan(const std::string& path) {
  return std::make_shared<const fans::Fan>(io::fan_from_json(io::read_json(path)));
}

std::string table(const lattice::IntegerMatrix& a) {
  std::string s;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) s += (j ? " " : "") + a(i, j).get_str();
    s += "\n";
  }
  return s;
}

std::string number(double x) { return Json(x).dump(); }

// ---- subcommands ----

std::string cmd_degrees(const Config& c, bool as_table) {
  const dynamics::MonomialMap map(io::read_matrix(c.matrix));
  const auto report = dynamics::dynamical_degrees(map, c.lmax > 0 ? c.lmax : 30);
  if (!as_table) return dump(io::to_json(report, c.log2));
  std::string s = "n " + std::to_string(report.n) + "\ndet " + report.det.get_str() + "\n";
  for (std::size_t k = 0; k < report.lambdas.size(); ++k) s += "lambda_" + std::to_string(k) + " " + number(report.lambdas[k]) + "\n";
  s += "entropy " + number(c.log2 ? report.entropy / std::log(2.0) : report.entropy) + "\n";
  return s;
}

std::string describe_mismatch(const dynamics::PullbackMatrix& pipe, const dynamics::PullbackMatrix& closed) {
  for (std::size_t a = 0; a < closed.basis.size(); ++a)
    for (std::size_t b = 0; b < closed.basis.size(); ++b)
      if (pipe.entries(a, b) != closed.entries(a, b))
        return "k=" + std::to_string(closed.k) + " alpha=" + closed.basis[a].to_string() + " beta=" + closed.basis[b].to_string() +
               ": pipeline " + pipe.entries(a, b).get_str() + ", closed form " + closed.entries(a, b).get_str();
  return {};
}

std::string cmd_pullback(const Config& c, bool as_table) {
  const dynamics::MonomialMap map(io::read_matrix(c.matrix));
  const dynamics::PipelineOptions options{c.seed, c.smooth};
  std::optional<dynamics::PullbackMatrix> closed, pipe;
  if (c.method != "pipeline") closed = dynamics::pullback_matrix_closed(map, c.k);
  if (c.method != "closed") pipe = dynamics::pullback_matrix_pipeline(map, c.k, options);
  const auto& shown = closed ? *closed : *pipe;
  Json j = io::to_json(shown);
  j["method"] = c.method;
  if (closed && pipe) {
    const bool agree = closed->entries == pipe->entries;
    j["agree"] = agree;
    if (!agree) {
      j["pipeline_matrix"] = io::matrix_to_json(pipe->entries);
      throw InvariantViolation("pipeline and closed form differ at " + describe_mismatch(*pipe, *closed), j);
    }
  }
  return as_table ? table(shown.entries) : dump(j);
}

std::string cmd_cremona(const Config& c, bool as_table) {
  if (c.n < 1) throw Error(ErrorKind::OutOfRange, "--n must be at least 1");
  const auto degrees = dynamics::cremona_degrees(c.n, {c.seed, c.smooth});
  if (as_table) {
    std::string s;
    for (std::size_t i = 0; i < degrees.size(); ++i) s += (i ? " " : "") + degrees[i].get_str();
    return s + "\n";
  }
  Json list = Json::array();
  for (const auto& d : degrees) list.push_back(io::to_json(d));
  return dump(Json{{"n", io::to_json_int(c.n)}, {"degrees", list}});
}

std::string cmd_growth(const Config& c, bool as_table) {
  const dynamics::MonomialMap map(io::read_matrix(c.matrix));
  const int k = c.k < 0 ? 1 : c.k;
  const int lmax = c.lmax > 0 ? c.lmax : (map.n() == 2 ? 8 : 5);
  const auto fit = dynamics::degree_growth_pn(map, k, lmax, {c.seed, c.smooth});
  if (!c.plot.empty()) {
    std::ofstream svg(c.plot);
    if (!svg) throw Error(ErrorKind::InvalidInput, "cannot write " + c.plot);
    svg << io::growth_svg(fit);
  }
  if (!as_table) return dump(io::to_json(fit));
  std::string s;
  for (std::size_t l = 0; l < fit.degrees.size(); ++l) s += std::to_string(l + 1) + " " + fit.degrees[l].get_str() + "\n";
  s += "lambda " + number(fit.lambda) + "\nm " + number(fit.m) + "\ndegenerate " + (fit.degenerate ? "true" : "false") + "\n";
  return s;
}

std::string cmd_fan_emit(const Config& c) { return dump(io::fan_to_json(standard(c.type, c.n))); }

std::string cmd_fan_validate(const Config& c) {
  const auto fan = load_fan(c.fan);
  const auto report = fans::fan_validate(*fan, c.seed);
  Json j = io::to_json(report);
  if (!report.ok()) throw InvariantViolation("fan violates " + fans::to_string(report.violations.front().kind) + ": " + report.violations.front().detail, j);
  return dump(j);
}

std::string cmd_fan_refine(const Config& c) {
  const auto fan = load_fan(c.fan);
  return dump(io::fan_to_json(fans::common_refinement(*fan, io::read_matrix(c.matrix), {c.smooth})));
}

std::string cmd_weight_basis(const Config& c) {
  auto target = std::make_shared<const fans::Fan>(standard(c.type, c.n));
  if (c.k < 0 || c.k > c.n) throw Error(ErrorKind::OutOfRange, "--k must lie in [0, n]");
  const auto basis = weights::standard_weight_basis(target, c.k);
  Json list = Json::array();
  for (const auto& e : basis.elements) list.push_back(Json{{"label", io::to_json(e.label)}, {"weight", io::weight_to_json(e.weight)}});
  return dump(Json{{"fan", io::fan_to_json(*target)}, {"basis", list}});
}

std::string cmd_weight_verify(const Config& c) {
  const auto fan = load_fan(c.fan);
  const auto w = io::weight_from_json(io::read_json(c.weight), fan);
  const auto report = weights::verify_weight(w);
  Json j = io::to_json(report);
  if (!report.ok()) throw InvariantViolation("balancing fails at cone " + j["violations"][0]["tau"].dump(), j);
  return dump(j);
}

std::string cmd_weight_pullback(const Config& c) {
  const auto psi = io::read_matrix(c.matrix);
  const auto dst = load_fan(c.fan);
  const auto w = io::weight_from_json(io::read_json(c.weight), dst);
  const weights::FanPtr src = c.src_fan.empty() ? std::make_shared<const fans::Fan>(fans::common_refinement(*dst, psi, {c.smooth}))
                                                 : load_fan(c.src_fan);
  const auto pulled = weights::pullback_along_morphism(psi, src, w);
  return dump(Json{{"fan", io::fan_to_json(*src)}, {"weight", io::weight_to_json(pulled)}});
}

std::string cmd_weight_cup(const Config& c) {
  const auto fan = load_fan(c.fan);
  const auto a = io::weight_from_json(io::read_json(c.weight), fan);
  const auto b = io::weight_from_json(io::read_json(c.other_weight), fan);
  const auto v = weights::pick_generic_vector({fan}, c.seed);
  const auto value = weights::cup_at_zero(a, b, v.v);
  return dump(Json{{"value", io::to_json(value)},
                   {"v", io::to_json(v.v)},
                   {"seed", io::to_json(BigInt(std::to_string(v.seed), 10))},
                   {"attempts", io::to_json_int(static_cast<long>(v.attempts))}});
}

// ---- batch ----

struct CheckOutcome {
  bool pass = true;
  std::string detail;
};

CheckOutcome check_oracle(const dynamics::MonomialMap& map, std::uint64_t seed) {
  for (int k = 0; k <= map.n(); ++k) {
    const auto closed = dynamics::pullback_matrix_closed(map, k);
    const auto pipe = dynamics::pullback_matrix_pipeline(map, k, {seed, false});
    if (closed.entries != pipe.entries) return {false, describe_mismatch(pipe, closed)};
  }
  return {};
}

CheckOutcome check_weights(const dynamics::MonomialMap& map, std::uint64_t seed) {
  const int n = map.n();
  for (const auto& [name, fan] : {std::pair{"p1n", fans::fan_p1n(n)}, std::pair{"pn", fans::fan_pn(n)}}) {
    auto target = std::make_shared<const fans::Fan>(fan);
    dynamics::PipelineContext context(map, target, {seed, false});
    for (int k = 0; k <= n; ++k)
      for (const auto& e : weights::standard_weight_basis(target, k).elements) {
        const auto pulled = weights::pullback_along_morphism(map.psi(), context.refined(), e.weight);
        const auto report = weights::verify_weight(pulled);
        if (!report.ok())
          return {false, std::string("target ") + name + " k=" + std::to_string(k) + " weight " + e.label.to_string() +
                             ": unbalanced at cone " + io::to_json(report).at("violations")[0].at("tau").dump(-1)};
      }
  }
  return {};
}

CheckOutcome check_growth(const dynamics::MonomialMap& map) {
  for (int k = 1; k <= map.n(); ++k) {
    const auto r = dynamics::check_norm_limit(map, k, 30);
    if (!r.pass) return {false, "k=" + std::to_string(k) + ": " + io::to_json(r).dump(-1)};
  }
  return {};
}

std::string cmd_batch(const Config& c) {
  if (c.count < 1) throw Error(ErrorKind::OutOfRange, "--count must be at least 1");
  if (c.bound < 1) throw Error(ErrorKind::OutOfRange, "--bound must be at least 1");
  if (c.n < 1) throw Error(ErrorKind::OutOfRange, "--n must be at least 1");
  for (const auto& name : c.checks)
    if (name != "oracle" && name != "weight" && name != "growth") throw Error(ErrorKind::InvalidInput, "unknown check '" + name + "'");

  const std::size_t count = static_cast<std::size_t>(c.count);
  std::vector<std::vector<CheckOutcome>> results(count);
  std::vector<lattice::IntegerMatrix> matrices(count);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t item_seed = c.seed + i;
    std::vector<CheckOutcome> row;
    try {
      const auto map = dynamics::random_map(item_seed, c.n, c.bound);
      matrices[i] = map.psi();
      for (const auto& name : c.checks) {
        try {
          if (name == "oracle") row.push_back(check_oracle(map, c.seed));
          else if (name == "weight") row.push_back(check_weights(map, c.seed));
          else row.push_back(check_growth(map));
        } catch (const std::exception& e) {
          row.push_back({false, e.what()});
        }
      }
    } catch (const std::exception& e) {
      row.assign(c.checks.size(), {false, e.what()});
    }
    results[i] = std::move(row);
  }

  Json summary = Json::object();
  Json first = nullptr;
  bool all_pass = true;
  for (std::size_t ci = 0; ci < c.checks.size(); ++ci) {
    long pass = 0, fail = 0;
    for (std::size_t i = 0; i < count; ++i) results[i][ci].pass ? ++pass : ++fail;
    summary[c.checks[ci]] = Json{{"pass", io::to_json_int(pass)}, {"fail", io::to_json_int(fail)}};
    all_pass = all_pass && fail == 0;
  }
  for (std::size_t i = 0; i < count && first.is_null(); ++i)
    for (std::size_t ci = 0; ci < c.checks.size(); ++ci)
      if (!results[i][ci].pass) {
        first = Json{{"index", io::to_json_int(static_cast<long>(i))},
                     {"seed", io::to_json(BigInt(std::to_string(c.seed + i), 10))},
                     {"check", c.checks[ci]},
                     {"matrix", io::matrix_to_json(matrices[i])},
                     {"detail", results[i][ci].detail}};
        break;
      }
  Json j{{"count", io::to_json_int(c.count)},
         {"n", io::to_json_int(c.n)},
         {"bound", io::to_json_int(c.bound)},
         {"seed", io::to_json(BigInt(std::to_string(c.seed), 10))},
         {"checks", c.checks},
         {"results", summary},
         {"first_counterexample", first},
         {"ok", all_pass}};
  if (!all_pass) throw InvariantViolation("batch check '" + first["check"].get<std::string>() + "' failed on item " +
                                            first["index"].get<std::string>() + ": " + first["detail"].get<std::string>(),
                                        j);
  return dump(j);
}

void write(const Config& c, std::ostream& out, const std::string& text) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out_path, std::ios::binary);
  if (!file) throw Error(ErrorKind::InvalidInput, "cannot write " + c.out_path);
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Pullbacks, dynamical degrees and degree growth of monomial maps on toric varieties", "toricdyn"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", c.out_path, "Write the result to this file instead of stdout");
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed", c.seed, "Seed for generic vectors and random corpora");

  auto* degrees = app.add_subcommand("degrees", "Dynamical degrees and entropy");
  degrees->add_option("--matrix", c.matrix, "Matrix file (JSON or text)")->required();
  degrees->add_option("--lmax", c.lmax, "Length of the norm-growth sequences (default 30)");
  degrees->add_flag("--log2", c.log2, "Also report entropy in bits");

  auto* pullback = app.add_subcommand("pullback", "Matrix of f^* on A^k((P^1)^n)");
  pullback->add_option("--matrix", c.matrix, "Matrix file")->required();
  pullback->add_option("--k", c.k, "Codimension")->required();
  pullback->add_option("--method", c.method, "closed | pipeline | both")->check(CLI::IsMember({"closed", "pipeline", "both"}));
  pullback->add_flag("--smooth", c.smooth, "Smooth the refinement before pulling back");

  auto* cremona = app.add_subcommand("cremona", "Degrees of the Cremona involution on P^n");
  cremona->add_option("--n", c.n, "Dimension")->required();

  auto* growth = app.add_subcommand("growth", "Degree growth of f^l on P^n");
  growth->add_option("--matrix", c.matrix, "Matrix file")->required();
  growth->add_option("--k", c.k, "Codimension (default 1)");
  growth->add_option("--lmax", c.lmax, "Number of iterates (default 8 for n=2, 5 otherwise)");
  growth->add_option("--plot", c.plot, "Write an SVG plot to this file");

  auto* fan = app.add_subcommand("fan", "Emit, validate or refine fans");
  fan->require_subcommand(1);
  fan->fallthrough();
  auto* fan_emit = fan->add_subcommand("emit", "Standard fan as JSON");
  fan_emit->add_option("--type", c.type, "p1n | pn")->check(CLI::IsMember({"p1n", "pn"}));
  fan_emit->add_option("--n", c.n, "Rank")->required();
  auto* fan_validate = fan->add_subcommand("validate", "Check fan axioms");
  fan_validate->add_option("--fan", c.fan, "Fan JSON")->required();
  auto* fan_refine = fan->add_subcommand("refine", "Refinement compatible with a matrix");
  fan_refine->add_option("--fan", c.fan, "Fan JSON")->required();
  fan_refine->add_option("--matrix", c.matrix, "Matrix file")->required();
  fan_refine->add_flag("--smooth", c.smooth, "Make every maximal cone unimodular");

  auto* weight = app.add_subcommand("weight", "Minkowski weight operations");
  weight->require_subcommand(1);
  weight->fallthrough();
  auto* weight_basis = weight->add_subcommand("basis", "Standard basis weights of a standard fan");
  weight_basis->add_option("--type", c.type, "p1n | pn")->check(CLI::IsMember({"p1n", "pn"}));
  weight_basis->add_option("--n", c.n, "Rank")->required();
  weight_basis->add_option("--k", c.k, "Codimension")->required();
  auto* weight_verify = weight->add_subcommand("verify", "Check the balancing condition");
  weight_verify->add_option("--fan", c.fan, "Fan JSON")->required();
  weight_verify->add_option("--weight", c.weight, "Weight JSON")->required();
  auto* weight_pullback = weight->add_subcommand("pullback", "Pull a weight back along a matrix");
  weight_pullback->add_option("--matrix", c.matrix, "Matrix file")->required();
  weight_pullback->add_option("--fan", c.fan, "Target fan JSON")->required();
  weight_pullback->add_option("--weight", c.weight, "Weight JSON on the target fan")->required();
  weight_pullback->add_option("--src", c.src_fan, "Source fan JSON (default: common refinement)");
  weight_pullback->add_flag("--smooth", c.smooth, "Smooth the default refinement");
  auto* weight_cup = weight->add_subcommand("cup", "Degree of the product of two complementary weights");
  weight_cup->add_option("--fan", c.fan, "Fan JSON")->required();
  weight_cup->add_option("--weight", c.weight, "Weight JSON")->required();
  weight_cup->add_option("--with", c.other_weight, "Weight JSON of complementary codimension")->required();

  auto* batch = app.add_subcommand("batch", "Checks over a seeded random corpus");
  batch->add_option("--count", c.count, "Number of matrices (default 50)");
  batch->add_option("--n", c.n, "Dimension")->required();
  batch->add_option("--bound", c.bound, "Entries lie in [-bound, bound] (default 3)");
  batch->add_option("--checks", c.checks, "oracle, weight, growth")->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << io::error_to_json(ErrorKind::InvalidInput, e.what()).dump() << "\n";
    return InputError;
  }

  try {
    apply_thread_cap();
    const bool as_table = c.format.empty() ? cremona->parsed() : c.format == "table";
    std::string text;
    if (degrees->parsed()) text = cmd_degrees(c, as_table);
    else if (pullback->parsed()) text = cmd_pullback(c, as_table);
    else if (cremona->parsed()) text = cmd_cremona(c, as_table);
    else if (growth->parsed()) text = cmd_growth(c, as_table);
    else if (fan_emit->parsed()) text = cmd_fan_emit(c);
    else if (fan_validate->parsed()) text = cmd_fan_validate(c);
    else if (fan_refine->parsed()) text = cmd_fan_refine(c);
    else if (weight_basis->parsed()) text = cmd_weight_basis(c);
    else if (weight_verify->parsed()) text = cmd_weight_verify(c);
    else if (weight_pullback->parsed()) text = cmd_weight_pullback(c);
    else if (weight_cup->parsed()) text = cmd_weight_cup(c);
    else if (batch->parsed()) text = cmd_batch(c);
    write(c, out, text);
    return Ok;
  } catch (const InvariantViolation& e) {
    try {
      write(c, out, dump(e.report));
    } catch (const Error&) {
    }
    err << Json{{"kind", "INVARIANT_FAILURE"}, {"message", e.what()}}.dump() << "\n";
    return InvariantFailure;
  } catch (const Error& e) {
    err << io::error_to_json(e.kind(), e.detail()).dump() << "\n";
    return is_input_error(e.kind()) ? InputError : InvariantFailure;
  } catch (const nlohmann::json::exception& e) {
    err << io::error_to_json(ErrorKind::InvalidInput, e.what()).dump() << "\n";
    return InputError;
  }
}

}  // namespace toricdyn::cli
