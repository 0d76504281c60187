#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "suzuki/cohomology.hpp"
#include "suzuki/dieudonne.hpp"

namespace suzuki {

/// H1_dR of the curve as an E-module with tau.
EModule curve_module(const DeRham& dr);

/// FNV-1a 64 over (m, modulus, basis order); identifies cached matrices.
std::uint64_t basis_hash(const DeRham& dr);

/// {m, operator, twist, dim, entries}; entries are row-major field bitmasks.
nlohmann::json op_to_json(int m, const std::string& name, const SemilinearOp& op);
/// Throws std::invalid_argument on a malformed record.
SemilinearOp op_from_json(const Field& field, const nlohmann::json& j);
/// One row per line, entries as integer bitmasks.
std::string op_to_csv(const SemilinearOp& op);

/// Default cache directory from SUZUKI_DR_CACHE, if set and non-empty.
std::optional<std::filesystem::path> default_cache_dir();

/// curve_module through an on-disk cache. A missing, corrupt or stale cache
/// file is recomputed and rewritten; `hit` reports whether it was used.
EModule cached_curve_module(const DeRham& dr, const std::optional<std::filesystem::path>& dir,
                            bool* hit = nullptr);

}  // namespace suzuki
