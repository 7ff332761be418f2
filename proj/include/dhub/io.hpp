// CSV / JSON emission. Every file starts with the line
//   # dicke-hubbard-solver v<semver> config-hash=<hex>
// and contains nothing time-dependent, so identical configurations reproduce
// identical bytes.

#pragma once

#include "dhub/analytic.hpp"
#include "dhub/observables.hpp"
#include "dhub/sweep.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace dhub {

inline constexpr const char* kVersion = "0.1.0";

enum class Format { Csv, Json };

Format format_from_string(const std::string& name);

// FNV-1a over a canonical text rendering.
std::string hash_hex(const std::string& text);
std::string canonical(const ModelParams& params);
std::string canonical(const SweepConfig& config);

std::string header_line(const std::string& config_hash);

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const SweepGrid& grid, Format format, const std::filesystem::path& path,
          const std::string& config_hash);
void emit(const BoundaryCurve& curve, Format format, const std::filesystem::path& path,
          const std::string& config_hash);
void emit(const FsCurve& curve, Format format, const std::filesystem::path& path,
          const std::string& config_hash);

std::string render(const SweepGrid& grid, Format format, const std::string& config_hash);
std::string render(const BoundaryCurve& curve, Format format, const std::string& config_hash);
std::string render(const FsCurve& curve, Format format, const std::string& config_hash);

SweepGrid parse_grid_json(const std::string& text);
SweepGrid load_grid_json(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace dhub
