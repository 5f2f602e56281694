#include "toricdyn/io/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace toricdyn::io {

namespace {

[[noreturn]] void bad(const std::string& message) { throw Error(ErrorKind::InvalidInput, message); }

BigInt parse_integer(const std::string& token) {
  std::string s = token;
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  const std::size_t digits = (!s.empty() && s.front() == '-') ? 1 : 0;
  if (s.size() == digits) bad("empty integer");
  for (std::size_t i = digits; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') bad("not an integer: '" + token + "'");
  return BigInt(s, 10);
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) bad(std::string("missing field '") + name + "'");
  return j.at(name);
}

int small_int(const Json& j, const char* what) {
  const BigInt x = big_from_json(j);
  if (!x.fits_sint_p()) bad(std::string(what) + " out of range");
  return static_cast<int>(x.get_si());
}

}  // namespace

Json to_json(const BigInt& x) { return x.get_str(); }

Json to_json_int(long x) { return std::to_string(x); }

BigInt big_from_json(const Json& j) {
  if (j.is_string()) return parse_integer(j.get<std::string>());
  if (j.is_number_integer()) return BigInt(j.dump(), 10);
  bad("expected an integer, got " + j.dump());
}

Json to_json(const LatticeVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

LatticeVector vector_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of integers");
  LatticeVector v;
  for (const auto& x : j) v.push_back(big_from_json(x));
  return v;
}

Json to_json(const lattice::IndexSet& s) {
  Json out = Json::array();
  for (int i : s.elements()) out.push_back(to_json_int(i + 1));
  return out;
}

Json matrix_to_json(const lattice::IntegerMatrix& a) {
  Json out = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(to_json(a(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

lattice::IntegerMatrix matrix_from_json(const Json& j) {
  const Json& rows = j.is_object() ? field(j, "matrix") : j;
  if (!rows.is_array() || rows.empty()) bad("matrix must be a nonempty array of rows");
  std::vector<LatticeVector> data;
  for (const auto& r : rows) data.push_back(vector_from_json(r));
  const std::size_t cols = data.front().size();
  for (const auto& r : data)
    if (r.size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
  return lattice::IntegerMatrix::from_rows(data, cols);
}

lattice::IntegerMatrix matrix_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string token;
  if (!(in >> token)) bad("empty matrix file");
  const BigInt n = parse_integer(token);
  if (n < 1 || n > 64) bad("matrix size must lie in [1, 64]");
  const std::size_t size = n.get_ui();
  lattice::IntegerMatrix a(size, size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) {
      if (!(in >> token)) throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(size * size) + " entries");
      a(i, j) = parse_integer(token);
    }
  if (in >> token) throw Error(ErrorKind::DimensionMismatch, "trailing data after matrix: '" + token + "'");
  return a;
}

std::string matrix_to_text(const lattice::IntegerMatrix& a) {
  std::string out = std::to_string(a.rows()) + "\n";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out += ' ';
      out += a(i, j).get_str();
    }
    out += '\n';
  }
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json read_json(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

lattice::IntegerMatrix read_matrix(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    try {
      return matrix_from_json(Json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      bad(path.string() + ": " + e.what());
    }
  }
  return matrix_from_text(text);
}

Json fan_to_json(const fans::Fan& fan) {
  Json cones = Json::array();
  for (std::size_t i : fan.maximal()) {
    Json gens = Json::array();
    for (const auto& r : fan.cone(i).rays()) gens.push_back(to_json(r));
    cones.push_back(Json{{"generators", std::move(gens)}});
  }
  return Json{{"rank", to_json_int(static_cast<long>(fan.rank()))}, {"complete", fan.complete()}, {"cones", std::move(cones)}};
}

fans::Fan fan_from_json(const Json& j) {
  const int rank = small_int(field(j, "rank"), "rank");
  if (rank < 1) bad("rank must be positive");
  const bool complete = j.contains("complete") ? j.at("complete").get<bool>() : true;
  const Json& list = field(j, "cones");
  if (!list.is_array()) bad("'cones' must be an array");
  std::vector<fans::Cone> cones;
  for (const auto& c : list) {
    std::vector<LatticeVector> gens;
    for (const auto& g : field(c, "generators")) {
      gens.push_back(vector_from_json(g));
      if (gens.back().size() != static_cast<std::size_t>(rank))
        throw Error(ErrorKind::DimensionMismatch, "generator " + g.dump() + " has wrong length");
    }
    cones.push_back(fans::make_cone(gens, rank));
  }
  return fans::Fan::from_maximal(rank, cones, complete);
}

Json to_json(const fans::ValidationReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json witnesses = Json::array();
    for (const auto& key : v.witnesses) {
      Json gens = Json::array();
      for (const auto& r : key) gens.push_back(to_json(r));
      witnesses.push_back(std::move(gens));
    }
    violations.push_back(Json{{"kind", fans::to_string(v.kind)}, {"witnesses", std::move(witnesses)}, {"detail", v.detail}});
  }
  return Json{{"ok", report.ok()}, {"violations", std::move(violations)}};
}

Json weight_to_json(const weights::MinkowskiWeight& c) {
  Json values = Json::array();
  for (std::size_t s = 0; s < c.cones().size(); ++s) {
    Json gens = Json::array();
    for (const auto& r : c.fan().cone(c.cones()[s]).rays()) gens.push_back(to_json(r));
    values.push_back(Json{{"cone", std::move(gens)}, {"value", to_json(c.values()[s])}});
  }
  return Json{{"codim", to_json_int(c.codim())}, {"values", std::move(values)}};
}

weights::MinkowskiWeight weight_from_json(const Json& j, weights::FanPtr fan) {
  const int codim = small_int(field(j, "codim"), "codim");
  if (codim < 0 || codim > static_cast<int>(fan->rank())) throw Error(ErrorKind::OutOfRange, "codim outside [0, n]");
  weights::MinkowskiWeight c(fan, codim);
  for (const auto& entry : field(j, "values")) {
    std::vector<LatticeVector> gens;
    for (const auto& g : field(entry, "cone")) gens.push_back(vector_from_json(g));
    const auto cone = fans::make_cone(gens, fan->rank());
    const auto index = fan->find(cone.key());
    if (!index) bad("cone " + field(entry, "cone").dump() + " is not in the fan");
    if (fan->cone(*index).codim() != codim) throw Error(ErrorKind::DimensionMismatch, "cone " + field(entry, "cone").dump() + " has the wrong codimension");
    c.at(*index) = big_from_json(field(entry, "value"));
  }
  return c;
}

Json to_json(const weights::WeightReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json tau = Json::array();
    for (const auto& r : v.tau) tau.push_back(to_json(r));
    violations.push_back(Json{{"tau", std::move(tau)}, {"u", to_json(v.u)}, {"sum", to_json(v.sum)}});
  }
  return Json{{"ok", report.ok()}, {"violations", std::move(violations)}};
}

Json to_json(const dynamics::PullbackMatrix& m) {
  Json basis = Json::array();
  for (const auto& s : m.basis) basis.push_back(to_json(s));
  return Json{{"n", to_json_int(m.n)}, {"k", to_json_int(m.k)}, {"basis_order", "lexicographic"}, {"basis", std::move(basis)}, {"matrix", matrix_to_json(m.entries)}};
}

Json to_json(const dynamics::DegreeReport& r, bool log2_entropy) {
  Json out{{"n", to_json_int(r.n)}, {"det", to_json(r.det)}, {"moduli", r.moduli}, {"lambdas", r.lambdas}, {"entropy", r.entropy}};
  if (log2_entropy) out["entropy_log2"] = r.entropy / std::log(2.0);
  if (!r.norm_sequences.empty()) out["norm_sequences"] = r.norm_sequences;
  return out;
}

Json to_json(const dynamics::GrowthFit& fit) {
  Json degrees = Json::array();
  for (const auto& d : fit.degrees) degrees.push_back(to_json(d));
  return Json{{"n", to_json_int(fit.n)}, {"k", to_json_int(fit.k)},
              {"degrees", degrees},   {"lambda", fit.lambda},
              {"m", fit.m},           {"c", fit.c},
              {"residual_rms", fit.residual_rms}, {"degenerate", fit.degenerate}};
}

Json to_json(const dynamics::LimitCheck& check) {
  return Json{{"k", to_json_int(check.k)},       {"lambda", check.lambda},       {"last", check.last},
              {"relative_error", check.relative_error}, {"tie", check.tie},
              {"trend_ok", check.trend_ok}, {"pass", check.pass}};
}

Json error_to_json(ErrorKind kind, std::string_view message) {
  return Json{{"kind", std::string(to_string(kind))}, {"message", std::string(message)}};
}

}  // namespace toricdyn::io
