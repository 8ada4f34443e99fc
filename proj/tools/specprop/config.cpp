#include "config.hpp"

#include <fmt/format.h>

#include <algorithm>

#include <specprop/errors.hpp>
#include <specprop/formats.hpp>

#include "json.hpp"

namespace specprop::cli {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

const std::vector<std::string> kKnownKeys = {
    "model", "inner_product", "derivation_scale", "metric", "finite_triple", "product_case",
    "spin_structure", "truncation", "lambda", "gap_tol", "cluster_tol", "diameter",
    "norm_truncation", "sequence", "output"};

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path q(p);
  return q.is_absolute() ? q : base / q;
}

RMatrix real_matrix(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ValidationError(fmt::format("{} must be a nonempty list of rows", what));
  const auto n = static_cast<Eigen::Index>(j.size());
  RMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw ValidationError(fmt::format("{} must be square ({} rows)", what, n));
    for (Eigen::Index c = 0; c < n; ++c) {
      if (!row[static_cast<std::size_t>(c)].is_number()) throw ValidationError(fmt::format("{} entries must be numbers", what));
      m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  }
  return m;
}

// A value that is either an inline object or a path to a file holding one.
std::string inline_or_file(const json& j, const fs::path& base, const char* what, std::string& source) {
  if (j.is_string()) {
    const fs::path p = resolve(base, j.get<std::string>());
    if (!fs::exists(p)) throw ValidationError(fmt::format("{} file not found: {}", what, p.string()));
    source = j.get<std::string>();
    return read_text_file(p);
  }
  if (j.is_object() || j.is_array()) {
    source = "inline";
    return j.dump();
  }
  throw ValidationError(fmt::format("{} must be a file path or an inline value", what));
}

double number(const json& j, const char* key) {
  if (!j.is_number()) throw ValidationError(fmt::format("'{}' must be a number", key));
  return j.get<double>();
}

int integer(const json& j, const char* key) {
  if (!j.is_number_integer()) throw ValidationError(fmt::format("'{}' must be an integer", key));
  return j.get<int>();
}

Model parse_model(const std::string& s) {
  if (s == "quantum-torus") return Model::quantum_torus;
  if (s == "circle") return Model::circle;
  if (s == "torus2") return Model::torus2;
  if (s == "product") return Model::product;
  throw ValidationError(fmt::format("unknown model '{}' (expected quantum-torus, circle, torus2 or product)", s));
}

ProductCase parse_case(const std::string& s) {
  if (s == "even") return ProductCase::even;
  if (s == "odd_graded") return ProductCase::odd_graded;
  if (s == "odd_odd") return ProductCase::odd_odd;
  throw ValidationError(fmt::format("unknown product_case '{}'", s));
}

}  // namespace

std::string model_name(Model m) {
  switch (m) {
    case Model::quantum_torus: return "quantum-torus";
    case Model::circle: return "circle";
    case Model::torus2: return "torus2";
    case Model::product: return "product";
  }
  return "?";
}

static ExperimentConfig parse_config_impl(const std::string& text, const fs::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(fmt::format("config is not valid JSON: {}", e.what()));
  }
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), k) == kKnownKeys.end())
      throw ValidationError(fmt::format("unknown config key '{}'", k));
  if (!j.contains("model") || !j["model"].is_string()) throw ValidationError("config needs a 'model' string");

  ExperimentConfig c;
  c.model = parse_model(j["model"].get<std::string>());

  if (j.contains("spin_structure")) {
    const std::string s = j["spin_structure"].get<std::string>();
    if (s == "periodic") c.spin = SpinStructure::periodic;
    else if (s == "antiperiodic") c.spin = SpinStructure::antiperiodic;
    else throw ValidationError(fmt::format("unknown spin_structure '{}'", s));
  }
  if (j.contains("truncation")) c.truncation = integer(j["truncation"], "truncation");
  if (j.contains("lambda")) c.lambda = number(j["lambda"], "lambda");
  if (j.contains("gap_tol")) c.gap_tol = number(j["gap_tol"], "gap_tol");
  if (j.contains("cluster_tol") && !j["cluster_tol"].is_null()) c.cluster_tol = number(j["cluster_tol"], "cluster_tol");
  if (j.contains("diameter") && !j["diameter"].is_null()) c.diameter = number(j["diameter"], "diameter");
  if (j.contains("norm_truncation")) c.norm_truncation = integer(j["norm_truncation"], "norm_truncation");
  if (j.contains("derivation_scale")) c.derivation_scale = number(j["derivation_scale"], "derivation_scale");
  if (j.contains("output")) c.output = resolve(base_dir, j["output"].get<std::string>());
  else c.output = base_dir / "out";

  if (c.model == Model::quantum_torus) {
    if (!j.contains("inner_product")) throw ValidationError("quantum-torus model needs 'inner_product'");
    std::string src;
    const json ip = json::parse(inline_or_file(j["inner_product"], base_dir, "inner_product", src));
    c.inner_product = InnerProduct::from(real_matrix(ip, "inner_product"));
    c.d = c.inner_product->d();
  } else {
    if (!j.contains("metric")) throw ValidationError(fmt::format("{} model needs 'metric'", model_name(c.model)));
    c.metric = MetricField::from(parse_symmetric_field(inline_or_file(j["metric"], base_dir, "metric", c.metric_source)));
    c.d = c.metric->d();
    if (c.model == Model::circle && c.d != 1) throw ValidationError("circle model needs a metric with d = 1");
    if (c.model == Model::torus2 && c.d != 2) throw ValidationError("torus2 model needs a metric with d = 2");
  }

  if (c.model == Model::product) {
    if (!j.contains("finite_triple")) throw ValidationError("product model needs 'finite_triple'");
    c.finite = parse_finite_triple(inline_or_file(j["finite_triple"], base_dir, "finite_triple", c.finite_source));
    if (j.contains("product_case")) c.product_case = parse_case(j["product_case"].get<std::string>());
    else if (c.d % 2 == 0) c.product_case = ProductCase::even;
    else c.product_case = c.finite->grading() ? ProductCase::odd_graded : ProductCase::odd_odd;
    if (*c.product_case == ProductCase::even && c.d % 2 != 0)
      throw ValidationError("the even product needs an even-dimensional torus");
    if (*c.product_case != ProductCase::even && c.d % 2 == 0)
      throw ValidationError("odd product cases need an odd-dimensional torus");
    if (*c.product_case == ProductCase::odd_graded && !c.finite->grading())
      throw ValidationError("odd_graded product needs a grading on the finite triple");
  } else if (j.contains("finite_triple") || j.contains("product_case")) {
    throw ValidationError("'finite_triple' and 'product_case' only apply to the product model");
  }

  if (j.contains("sequence")) {
    const json& s = j["sequence"];
    if (!s.is_object()) throw ValidationError("'sequence' must be an object");
    SequenceSpec seq;
    if (!s.contains("scales") || !s["scales"].is_array() || s["scales"].empty())
      throw ValidationError("sequence needs a nonempty 'scales' list");
    for (const auto& v : s["scales"]) seq.scales.push_back(number(v, "scales"));
    for (std::size_t i = 1; i < seq.scales.size(); ++i)
      if (!(seq.scales[i] < seq.scales[i - 1]))
        throw ValidationError(fmt::format("sequence scales must be strictly decreasing (step {}: {} after {})", i,
                                          seq.scales[i], seq.scales[i - 1]));
    std::string src;
    if (c.model == Model::quantum_torus) {
      if (!s.contains("inner_product_direction")) throw ValidationError("quantum-torus sequence needs 'inner_product_direction'");
      RMatrix dir = real_matrix(json::parse(inline_or_file(s["inner_product_direction"], base_dir, "inner_product_direction", src)),
                                "inner_product_direction");
      if (dir.rows() != c.d) throw ValidationError("inner_product_direction has the wrong dimension");
      if ((dir - dir.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw ValidationError("inner_product_direction must be symmetric");
      seq.inner_product_direction = dir;
    } else {
      if (s.contains("metric_direction")) {
        SymmetricField dir = parse_symmetric_field(inline_or_file(s["metric_direction"], base_dir, "metric_direction", src));
        if (dir.d() != c.d || dir.grid_resolution() != c.metric->grid_resolution())
          throw ValidationError("metric_direction must match the metric's dimension and grid_resolution");
        seq.metric_direction = std::move(dir);
      }
      if (c.model == Model::product && s.contains("finite_direction")) {
        const std::string t = inline_or_file(s["finite_direction"], base_dir, "finite_direction", src);
        const json fj = json::parse(t);
        // either a bare matrix or an object carrying D_F
        seq.finite_direction = fj.is_object() && fj.contains("D_F")
                                   ? parse_complex_matrix(fj["D_F"].dump(), static_cast<int>(c.finite->dim()))
                                   : parse_complex_matrix(t, static_cast<int>(c.finite->dim()));
      }
      if (!seq.metric_direction && !seq.finite_direction)
        throw ValidationError("sequence needs 'metric_direction' (or 'finite_direction' for the product model)");
      if (c.model != Model::product && s.contains("finite_direction"))
        throw ValidationError("'finite_direction' only applies to the product model");
    }
    c.sequence = std::move(seq);
  }

  if (c.truncation < 0) throw ValidationError("truncation must be >= 0");
  if (!(c.lambda > 0.0)) throw ValidationError("lambda must be positive");
  if (!(c.gap_tol >= 0.0)) throw ValidationError("gap_tol must be nonnegative");
  if (c.cluster_tol && !(*c.cluster_tol > 0.0)) throw ValidationError("cluster_tol must be positive");
  if (c.norm_truncation < 0) throw ValidationError("norm_truncation must be >= 0");
  return c;
}

ExperimentConfig parse_config(const std::string& text, const fs::path& base_dir) {
  try {
    return parse_config_impl(text, base_dir);
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("invalid config: {}", e.what()));
  }
}

ExperimentConfig load_config(const fs::path& path) {
  if (!fs::exists(path)) throw ValidationError(fmt::format("config file not found: {}", path.string()));
  const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
  return parse_config(read_text_file(path), base);
}

}  // namespace specprop::cli
