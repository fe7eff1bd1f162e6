#pragma once

#include <filesystem>
#include <string>

#include "kanpinn/network.hpp"

namespace kpinn {

inline constexpr int kModelFormatVersion = 1;

/// JSON document with format_version, backend, layer_widths, kan_hyper
/// (null for MLP), params and seed. Parameters round-trip exactly.
std::string model_to_json(const NetworkModel& model);

/// Throws ParseError on malformed JSON or missing fields and ConfigError if
/// the decoded model is inconsistent.
NetworkModel model_from_json(const std::string& text);

void save_model(const NetworkModel& model, const std::filesystem::path& path);
NetworkModel load_model(const std::filesystem::path& path);

}  // namespace kpinn
