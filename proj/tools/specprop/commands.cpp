#include "commands.hpp"

#include <fmt/chrono.h>
#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <map>

#include <specprop/deviation_bound.hpp>
#include <specprop/errors.hpp>
#include <specprop/formats.hpp>
#include <specprop/propinquity.hpp>
#include <specprop/quantum_torus.hpp>
#include <specprop/spectral_analysis.hpp>

namespace specprop::cli {
namespace {

namespace fs = std::filesystem;
using Provenance = std::map<std::string, std::string>;

const char* kQtConventions = "D=sum_j gamma_j (e_j(h) . n) on each mode n; frame from Gram determinants";

std::string hex(std::uint64_t h) { return fmt::format("{:016x}", h); }

// FNV-1a over the bytes of a real matrix; stands in for the metric hash on the quantum torus.
std::uint64_t matrix_hash(const RMatrix& m) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) h = (h ^ b[i]) * 1099511628211ULL;
  };
  const auto rows = static_cast<std::int64_t>(m.rows());
  mix(&rows, sizeof rows);
  for (Eigen::Index i = 0; i < m.size(); ++i) mix(m.data() + i, sizeof(double));
  return h;
}

std::string spin_name(SpinStructure s) { return s == SpinStructure::periodic ? "periodic" : "antiperiodic"; }

std::string case_name(ProductCase c) {
  switch (c) {
    case ProductCase::even: return "even";
    case ProductCase::odd_graded: return "odd_graded";
    case ProductCase::odd_odd: return "odd_odd";
  }
  return "?";
}

// One member of a sweep (or the base model itself).
struct ModelPoint {
  std::optional<InnerProduct> inner_product;
  std::optional<MetricField> metric;
  std::optional<FiniteTriple> finite;
};

ModelPoint base_point(const ExperimentConfig& c) { return {c.inner_product, c.metric, c.finite}; }

ModelPoint step_point(const ExperimentConfig& c, double scale) {
  const SequenceSpec& s = *c.sequence;
  ModelPoint p = base_point(c);
  if (c.model == Model::quantum_torus) {
    p.inner_product = InnerProduct::from(c.inner_product->matrix() + scale * *s.inner_product_direction);
    return p;
  }
  if (s.metric_direction) p.metric = MetricField::from(c.metric->field() + s.metric_direction->scaled(scale));
  if (c.model == Model::product && s.finite_direction)
    p.finite = c.finite->with_operator(c.finite->D_F().matrix() + scale * *s.finite_direction);
  return p;
}

struct Built {
  Spectrum spectrum;
  Provenance provenance;
};

DiracAssembly assemble(const ExperimentConfig& c, const MetricField& g) {
  DiracOptions o;
  o.spin = c.spin;
  return assemble_dirac(g, c.truncation, default_rep(c.d), o);
}

HermitianMatrix product_operator(const ExperimentConfig& c, const DiracAssembly& a, const FiniteTriple& F) {
  switch (*c.product_case) {
    case ProductCase::even: return product_even(a, F);
    case ProductCase::odd_graded: return product_odd_graded(a.matrix, F);
    case ProductCase::odd_odd: return product_odd_odd(a.matrix, F);
  }
  throw ValidationError("unknown product case");
}

Built build(const ExperimentConfig& c, const ModelPoint& p) {
  Built b;
  b.provenance["model"] = model_name(c.model);
  b.provenance["N"] = std::to_string(c.truncation);
  b.provenance["d"] = std::to_string(c.d);
  if (c.model == Model::quantum_torus) {
    b.spectrum = qt_spectrum(TorusTripleSpec::make(*p.inner_product, c.truncation, c.derivation_scale), c.cluster_tol);
    b.provenance["conventions"] = kQtConventions;
    b.provenance["metric_hash"] = hex(matrix_hash(p.inner_product->matrix()));
    return b;
  }
  const DiracAssembly a = assemble(c, *p.metric);
  b.provenance["conventions"] = a.conventions;
  b.provenance["metric_hash"] = hex(a.metric_hash);
  b.provenance["spin_structure"] = spin_name(c.spin);
  b.provenance["assembly_grid"] = std::to_string(a.grid_resolution_used);
  if (c.model == Model::product) {
    b.spectrum = spectrum_of(product_operator(c, a, *p.finite), c.cluster_tol);
    b.provenance["product_case"] = case_name(*c.product_case);
    b.provenance["finite_dim"] = std::to_string(p.finite->dim());
  } else {
    b.spectrum = spectrum_of(a.matrix, c.cluster_tol);
  }
  return b;
}

std::string timestamp_line() {
  return fmt::format("# generated={:%Y-%m-%dT%H:%M:%SZ}\n",
                     std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()));
}

fs::path write(const RunOptions& o, const fs::path& path, const std::string& body, bool header_capable) {
  write_text_file(path, (o.timestamp && header_capable ? timestamp_line() : std::string()) + body);
  return path;
}

void require_sequence(const ExperimentConfig& c, const char* cmd) {
  if (!c.sequence) throw ValidationError(fmt::format("'{}' needs a 'sequence' in the config", cmd));
}

}  // namespace

void apply_overrides(ExperimentConfig& cfg, const RunOptions& opts) {
  if (opts.truncation) {
    if (*opts.truncation < 0) throw ValidationError("--trunc must be >= 0");
    cfg.truncation = *opts.truncation;
  }
  if (opts.lambda) {
    if (!(*opts.lambda > 0.0)) throw ValidationError("--lambda must be positive");
    cfg.lambda = *opts.lambda;
  }
  if (opts.cluster_tol) {
    if (!(*opts.cluster_tol > 0.0)) throw ValidationError("--cluster-tol must be positive");
    cfg.cluster_tol = *opts.cluster_tol;
  }
  if (opts.out) cfg.output = *opts.out;
  if (opts.threads < 1) throw ValidationError("--threads must be >= 1");
}

std::vector<fs::path> run_spectrum(const ExperimentConfig& c, const RunOptions& o) {
  const Built b = build(c, base_point(c));
  return {write(o, c.output / "spectrum.csv", spectrum_csv(b.spectrum, b.provenance), true)};
}

std::vector<fs::path> run_converge(const ExperimentConfig& c, const RunOptions& o) {
  require_sequence(c, "converge");
  const Built target = build(c, base_point(c));
  // Fail before the sweep if Lambda is too close to the target spectrum.
  validate_lambda(target.spectrum, c.lambda, c.gap_tol);

  const std::vector<double>& scales = c.sequence->scales;
  std::vector<Built> steps(scales.size());
  parallel_steps(scales.size(), o.threads, [&](std::size_t i) { steps[i] = build(c, step_point(c, scales[i])); });

  std::vector<Spectrum> seq;
  for (const auto& s : steps) seq.push_back(s.spectrum);
  const ConvergenceReport r = convergence_report(seq, target.spectrum, c.lambda, c.gap_tol);

  std::vector<fs::path> out;
  out.push_back(write(o, c.output / "target_spectrum.csv", spectrum_csv(target.spectrum, target.provenance), true));
  for (std::size_t i = 0; i < steps.size(); ++i) {
    Provenance p = steps[i].provenance;
    p["step"] = std::to_string(i);
    p["scale"] = fmt::format("{:.17g}", scales[i]);
    out.push_back(write(o, c.output / fmt::format("step_{:03d}.csv", i), spectrum_csv(steps[i].spectrum, p), true));
  }

  // report_csv plus the scale column for plotting
  std::string csv = "step,scale,count,hausdorff,labeled_dev\n";
  for (const auto& s : r.steps) {
    const std::string h = std::isinf(s.hausdorff) ? "inf" : fmt::format("{:.17g}", s.hausdorff);
    const std::string l = s.labeled_dev ? fmt::format("{:.17g}", *s.labeled_dev) : "";
    csv += fmt::format("{},{:.17g},{},{},{}\n", s.index, scales[static_cast<std::size_t>(s.index)], s.count, h, l);
  }
  out.push_back(write(o, c.output / "convergence.csv", csv, false));
  out.push_back(write(o, c.output / "convergence_summary.json", report_summary_json(r), false));
  return out;
}

std::vector<fs::path> run_product(const ExperimentConfig& c, const RunOptions& o) {
  if (c.model != Model::product) throw ValidationError("'product' needs model = product");
  const DiracAssembly a = assemble(c, *c.metric);
  const FiniteTriple& F = *c.finite;
  const Spectrum specD = spectrum_of(a.matrix, c.cluster_tol);
  const Spectrum specF = spectrum_of(F.D_F(), c.cluster_tol);
  const Built direct = build(c, base_point(c));

  // Signature of the grading of the graded factor on the kernel of its operator.
  int signature = 0;
  if (*c.product_case != ProductCase::odd_odd) {
    const bool torus_graded = *c.product_case == ProductCase::even;
    const HermitianMatrix& op = torus_graded ? a.matrix : F.D_F();
    const HermitianMatrix grading = torus_graded ? assembly_grading(a) : *F.grading();
    const Spectrum& s = torus_graded ? specD : specF;
    const EigenDecomposition e = eig_hermitian(op);
    double tr = 0.0;
    for (Eigen::Index k = 0; k < e.values.size(); ++k)
      if (std::abs(e.values(k)) <= s.cluster_tol())
        tr += (e.vectors.col(k).adjoint() * grading.matrix() * e.vectors.col(k)).value().real();
    signature = static_cast<int>(std::lround(tr));
  }
  const Spectrum oracle = product_spectrum_oracle(specD, specF, *c.product_case, signature, c.cluster_tol);

  const std::vector<double> x = direct.spectrum.expanded(), y = oracle.expanded();
  if (x.size() != y.size())
    throw NumericalRegimeError(fmt::format("product dimension {} disagrees with the oracle count {}", x.size(), y.size()));
  double dev = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) dev = std::max(dev, std::abs(x[i] - y[i]));

  Provenance pd = direct.provenance;
  Provenance po = pd;
  po["source"] = "oracle";
  po["kernel_signature"] = std::to_string(signature);
  std::vector<fs::path> out;
  out.push_back(write(o, c.output / "product_spectrum.csv", spectrum_csv(direct.spectrum, pd), true));
  out.push_back(write(o, c.output / "product_oracle.csv", spectrum_csv(oracle, po), true));
  const std::string summary = fmt::format(
      "{{\n  \"product_case\": \"{}\",\n  \"dimension\": {},\n  \"kernel_signature\": {},\n  \"max_deviation\": {:.17g}\n}}\n",
      case_name(*c.product_case), x.size(), signature, dev);
  out.push_back(write(o, c.output / "product_oracle.json", summary, false));
  return out;
}

std::vector<fs::path> run_bound(const ExperimentConfig& c, const RunOptions& o) {
  require_sequence(c, "bound");
  if (c.model != Model::quantum_torus && c.model != Model::torus2)
    throw ValidationError(fmt::format("'bound' supports quantum-torus and torus2, not {}", model_name(c.model)));
  const std::vector<double>& scales = c.sequence->scales;
  std::vector<ModelPoint> points;
  for (double s : scales) points.push_back(step_point(c, s));

  std::vector<DeviationEstimates> est(scales.size());
  double K = 0.0;
  if (c.model == Model::quantum_torus) {
    double diam = c.diameter.value_or(0.0);
    if (!c.diameter) {
      diam = flat_torus_diameter(c.inner_product->matrix());
      for (const auto& p : points) diam = std::max(diam, flat_torus_diameter(p.inner_product->matrix()));
    }
    K = estimate_K(diam);
    parallel_steps(points.size(), o.threads, [&](std::size_t i) {
      const QtDeviation dv = qt_deviation(*c.inner_product, *points[i].inner_product, c.truncation, c.derivation_scale);
      est[i] = {dv.delta_lip_rel, dv.delta_op_rel, K, true};
    });
  } else {
    double diam = c.diameter.value_or(0.0);
    if (!c.diameter) {
      double lmax = max_metric_eigenvalue(*c.metric);
      for (const auto& p : points) lmax = std::max(lmax, max_metric_eigenvalue(*p.metric));
      diam = torus_diameter_upper_bound(c.d, lmax);
    }
    K = estimate_K(diam);
    const CliffordRep rep = default_rep(c.d);
    RgOptions ro;
    ro.spin = c.spin;
    ro.norm_truncation = c.norm_truncation > 0 ? c.norm_truncation : c.truncation;
    ro.norm_constant = norm_equivalence(*c.metric, ro.norm_truncation, rep, c.spin).constant;
    parallel_steps(points.size(), o.threads, [&](std::size_t i) {
      const RgReport r = deviation_bound_rg(*c.metric, *points[i].metric, rep, ro);
      est[i] = {r.lip_deviation, r.value, K, true};
    });
  }

  const BoundSweep sweep = bound_sweep(est);
  std::string csv = "step,scale,delta_lip_rel,delta_op_rel,K,epsilon,tunnel_extent_bound,semigroup_slope,time_horizon,propinquity_bound,in_regime\n";
  for (std::size_t i = 0; i < est.size(); ++i) {
    const BoundReport& r = sweep.reports[i];
    const std::string horizon = std::isinf(r.time_horizon) ? "unbounded" : fmt::format("{:.17g}", r.time_horizon);
    csv += fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{},{:.17g},{}\n", i, scales[i],
                       est[i].delta_lip_rel, est[i].delta_op_rel, K, r.epsilon, r.tunnel_extent_bound, r.semigroup_slope,
                       horizon, r.propinquity_bound, r.in_regime ? 1 : 0);
  }
  const std::string from = sweep.monotone_from ? std::to_string(*sweep.monotone_from) : "null";
  const std::string summary = fmt::format(
      "{{\n  \"model\": \"{}\",\n  \"K\": {:.17g},\n  \"steps\": {},\n  \"monotone\": {},\n  \"monotone_from\": {},\n  "
      "\"final_bound\": {:.17g}\n}}\n",
      model_name(c.model), K, est.size(), sweep.monotone ? "true" : "false", from,
      sweep.reports.empty() ? 0.0 : sweep.reports.back().propinquity_bound);
  return {write(o, c.output / "bounds.csv", csv, false), write(o, c.output / "bounds_summary.json", summary, false)};
}

double run_c1dist(const fs::path& g, const fs::path& h) {
  const SymmetricField a = load_symmetric_field(g);
  const SymmetricField b = load_symmetric_field(h);
  if (a.d() != b.d()) throw ValidationError(fmt::format("dimension mismatch: {} vs {}", a.d(), b.d()));
  if (a.grid_resolution() != b.grid_resolution())
    throw ValidationError(fmt::format("grid mismatch: {} vs {}", a.grid_resolution(), b.grid_resolution()));
  return c1_distance(a, b);
}

}  // namespace specprop::cli
