#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "psdo/essential.hpp"
#include "psdo/functional.hpp"
#include "psdo/mourre.hpp"
#include "psdo/quantization.hpp"
#include "psdo/spectral.hpp"

namespace psdo {

using Json = nlohmann::ordered_json;

/// Full-precision scientific notation (17 significant digits).
std::string format_double(double v);

Json profile_to_json(const XiProfile& p);
/// Accepts a profile string or a {probes, re, im} table.
XiProfile profile_from_json(const Json& j);

Json symbol_to_json(const CircleSymbol& a);
CircleSymbol symbol_from_json(const Json& j);

/// {K, t, bandwidth, bands: [{offset, values}]} with values as [re, im] pairs.
Json matrix_to_json(const OperatorMatrix& m);
std::string matrix_to_csv(const OperatorMatrix& m);

Json to_json(const Interval& i);
Json to_json(const EssentialSpectrumPrediction& p);
Json to_json(const StabilityResult& s);
Json to_json(const MourreReport& r);
Json to_json(const SymbolClassTable& t);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace psdo
