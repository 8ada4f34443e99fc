#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "specprop/metric_field.hpp"
#include "specprop/product_triple.hpp"

namespace specprop {

// {"d": 2, "components": {"11": [{"n": [n1, n2], "re": x, "im": y}, ...], "12": [...], "22": [...]},
//  "grid_resolution": R}
SymmetricField parse_symmetric_field(std::string_view text);
SymmetricField load_symmetric_field(const std::filesystem::path& path);
MetricField load_metric_field(const std::filesystem::path& path);
std::string symmetric_field_json(const SymmetricField& f);

// {"dim": k, "D_F": [[re, im], ...], "grading": [[re, im], ...]}; matrices row-major,
// either flat (k*k pairs) or as k rows of k pairs.
FiniteTriple parse_finite_triple(std::string_view text);
FiniteTriple load_finite_triple(const std::filesystem::path& path);
std::string finite_triple_json(const FiniteTriple& t);

// Complex matrix in the same pair encoding, from an already parsed JSON text.
CMatrix parse_complex_matrix(std::string_view text, int dim);

// "# key=value" provenance lines, then value,multiplicity rows.
std::string spectrum_csv(const Spectrum& s, const std::map<std::string, std::string>& provenance);
Spectrum parse_spectrum_csv(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace specprop
