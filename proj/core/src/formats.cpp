#include "specprop/formats.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "specprop/errors.hpp"

namespace specprop {
namespace {

using json = nlohmann::json;

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(fmt::format("{}: malformed JSON: {}", what, e.what()));
  }
}

int component_slot(const std::string& key, int d) {
  if (key.size() != 2 || key[0] < '1' || key[1] < '1' || key[0] - '1' >= d || key[1] - '1' >= d)
    throw ValidationError(fmt::format("metric component key \"{}\" invalid for d = {}", key, d));
  return (key[0] - '1') * 2 + (key[1] - '1');
}

FourierSeries parse_series(const json& list, int d, const std::string& key) {
  if (!list.is_array()) throw ValidationError(fmt::format("component {} must be a list", key));
  FourierSeries f(d);
  std::map<Index2, bool> seen;
  for (const auto& item : list) {
    if (!item.is_object() || !item.contains("n") || !item["n"].is_array())
      throw ValidationError(fmt::format("component {}: entries need an index list \"n\"", key));
    const auto& n = item["n"];
    if (static_cast<int>(n.size()) != d)
      throw ValidationError(fmt::format("component {}: index {} has {} entries, expected {}", key, n.dump(), n.size(), d));
    Index2 k{n[0].get<int>(), d == 2 ? n[1].get<int>() : 0};
    if (seen[k]) throw ValidationError(fmt::format("component {}: duplicate index {}", key, n.dump()));
    seen[k] = true;
    const double re = item.value("re", 0.0);
    const double im = item.value("im", 0.0);
    f.add(k, cplx(re, im));
  }
  return f;
}

json series_json(const FourierSeries& f) {
  json list = json::array();
  for (const auto& [k, c] : f.coefficients()) {
    json n = f.d() == 1 ? json::array({k[0]}) : json::array({k[0], k[1]});
    list.push_back({{"n", n}, {"re", c.real()}, {"im", c.imag()}});
  }
  return list;
}

CMatrix matrix_from_pairs(const json& j, int dim, const char* what) {
  if (!j.is_array()) throw ValidationError(fmt::format("{} must be a list", what));
  std::vector<cplx> flat;
  auto take_pair = [&](const json& p) {
    if (p.is_number()) {
      flat.emplace_back(p.get<double>(), 0.0);
      return;
    }
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw ValidationError(fmt::format("{}: entries must be [re, im] pairs", what));
    flat.emplace_back(p[0].get<double>(), p[1].get<double>());
  };
  const bool nested = !j.empty() && j[0].is_array() && !j[0].empty() && j[0][0].is_array();
  if (nested) {
    for (const auto& row : j) {
      if (!row.is_array() || static_cast<int>(row.size()) != dim)
        throw ValidationError(fmt::format("{}: every row needs {} entries", what, dim));
      for (const auto& p : row) take_pair(p);
    }
  } else {
    for (const auto& p : j) take_pair(p);
  }
  if (static_cast<int>(flat.size()) != dim * dim)
    throw ValidationError(fmt::format("{}: expected {} entries, got {}", what, dim * dim, flat.size()));
  CMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = flat[static_cast<std::size_t>(r * dim + c)];
  return m;
}

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

SymmetricField parse_symmetric_field(std::string_view text) {
  const json j = parse_json(text, "metric field");
  if (!j.is_object() || !j.contains("d") || !j.contains("components"))
    throw ValidationError("metric field needs \"d\" and \"components\"");
  const int d = j["d"].get<int>();
  const int R = j.value("grid_resolution", 32);
  SymmetricField f(d, R);
  const json& comps = j["components"];
  if (!comps.is_object()) throw ValidationError("\"components\" must be an object");
  std::map<int, FourierSeries> parsed;
  for (const auto& [key, list] : comps.items()) parsed[component_slot(key, d)] = parse_series(list, d, key);
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      const int upper = a * 2 + b, lower = b * 2 + a;
      const bool has_upper = parsed.count(upper) > 0, has_lower = parsed.count(lower) > 0;
      if (has_upper && has_lower && a != b) {
        const FourierSeries diff = parsed[upper] + parsed[lower].scaled(-1.0);
        double defect = 0.0;
        for (const auto& [k, c] : diff.coefficients()) defect = std::max(defect, std::abs(c));
        if (defect > 1e-12) throw ValidationError(fmt::format("metric components {}{} and {}{} differ (symmetry defect {:.3e})", a + 1, b + 1, b + 1, a + 1, defect));
      }
      if (has_upper) f.component(a, b) = parsed[upper];
      else if (has_lower) f.component(a, b) = parsed[lower];
    }
  return f;
}

SymmetricField load_symmetric_field(const std::filesystem::path& path) {
  return parse_symmetric_field(read_text_file(path));
}

MetricField load_metric_field(const std::filesystem::path& path) {
  return MetricField::from(load_symmetric_field(path));
}

std::string symmetric_field_json(const SymmetricField& f) {
  json comps = json::object();
  for (int a = 0; a < f.d(); ++a)
    for (int b = a; b < f.d(); ++b) comps[fmt::format("{}{}", a + 1, b + 1)] = series_json(f.component(a, b));
  json j = {{"d", f.d()}, {"components", comps}, {"grid_resolution", f.grid_resolution()}};
  return j.dump(2) + "\n";
}

FiniteTriple parse_finite_triple(std::string_view text) {
  const json j = parse_json(text, "finite triple");
  if (!j.is_object() || !j.contains("dim") || !j.contains("D_F"))
    throw ValidationError("finite triple needs \"dim\" and \"D_F\"");
  const int dim = j["dim"].get<int>();
  if (dim < 1) throw ValidationError("finite triple dimension must be >= 1");
  CMatrix D = matrix_from_pairs(j["D_F"], dim, "D_F");
  std::optional<CMatrix> grading;
  if (j.contains("grading") && !j["grading"].is_null()) grading = matrix_from_pairs(j["grading"], dim, "grading");
  return FiniteTriple::from(std::move(D), std::move(grading), j.value("label", std::string{}));
}

FiniteTriple load_finite_triple(const std::filesystem::path& path) {
  return parse_finite_triple(read_text_file(path));
}

std::string finite_triple_json(const FiniteTriple& t) {
  json j = {{"dim", t.dim()}, {"D_F", matrix_json(t.D_F().matrix())}};
  if (t.grading()) j["grading"] = matrix_json(t.grading()->matrix());
  if (!t.label().empty()) j["label"] = t.label();
  return j.dump(2) + "\n";
}

CMatrix parse_complex_matrix(std::string_view text, int dim) {
  return matrix_from_pairs(parse_json(text, "matrix"), dim, "matrix");
}

std::string spectrum_csv(const Spectrum& s, const std::map<std::string, std::string>& provenance) {
  std::string out;
  for (const auto& [k, v] : provenance) out += fmt::format("# {}={}\n", k, v);
  out += fmt::format("# cluster_tol={:.17g}\n", s.cluster_tol());
  out += "value,multiplicity\n";
  for (const auto& e : s.entries()) out += fmt::format("{:.17g},{}\n", e.value, e.multiplicity);
  return out;
}

Spectrum parse_spectrum_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  double tol = 1e-8;
  bool header = false;
  std::vector<SpectrumEntry> entries;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("cluster_tol=");
      if (pos != std::string::npos) tol = std::stod(line.substr(pos + 12));
      continue;
    }
    if (!header) {
      if (line != "value,multiplicity") throw ValidationError("spectrum CSV header must be value,multiplicity");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ValidationError(fmt::format("malformed spectrum row \"{}\"", line));
    entries.push_back({std::stod(line.substr(0, comma)), std::stoi(line.substr(comma + 1))});
  }
  return Spectrum(std::move(entries), tol);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(fmt::format("cannot write {}", path.string()));
  out << text;
}

}  // namespace specprop
