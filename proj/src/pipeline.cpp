#include "suzuki/pipeline.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace suzuki {

EModule curve_module(const DeRham& dr) {
  EModule M;
  M.field = dr.field();
  M.dim = dr.dim();
  M.F = dr.frobenius_matrix();
  M.V = dr.verschiebung_matrix();
  M.tau = dr.tau_matrix();
  return M;
}

std::uint64_t basis_hash(const DeRham& dr) {
  std::uint64_t h = 1469598103934665603ull;
  auto feed = [&h](long long x) {
    for (int i = 0; i < 8; ++i) {
      h ^= static_cast<std::uint64_t>(x >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  feed(dr.curve().m());
  feed(dr.field().modulus());
  for (const auto& t : dr.index_set()) {
    feed(t.a);
    feed(t.b);
    feed(t.c);
    feed(t.d);
  }
  return h;
}

nlohmann::json op_to_json(int m, const std::string& name, const SemilinearOp& op) {
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t r = 0; r < op.matrix.rows(); ++r)
    for (std::size_t c = 0; c < op.matrix.cols(); ++c)
      if (const auto v = op.matrix(r, c); !v.is_zero()) entries.push_back({r, c, v.bits});
  return {{"m", m}, {"operator", name}, {"twist", op.twist}, {"dim", op.matrix.rows()}, {"entries", entries}};
}

SemilinearOp op_from_json(const Field& field, const nlohmann::json& j) {
  try {
    const auto n = j.at("dim").get<std::size_t>();
    SemilinearOp op{Matrix(field, n, n), j.at("twist").get<int>()};
    for (const auto& e : j.at("entries")) {
      const auto r = e.at(0).get<std::size_t>();
      const auto c = e.at(1).get<std::size_t>();
      const auto v = e.at(2).get<std::uint32_t>();
      if (r >= n || c >= n || v == 0 || v >= field.order()) throw std::invalid_argument("entry out of range");
      op.matrix.set(r, c, field.from_bits(v));
    }
    return op;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed operator record: ") + e.what());
  }
}

std::string op_to_csv(const SemilinearOp& op) {
  std::ostringstream out;
  for (std::size_t r = 0; r < op.matrix.rows(); ++r) {
    for (std::size_t c = 0; c < op.matrix.cols(); ++c) out << (c ? "," : "") << op.matrix(r, c).bits;
    out << '\n';
  }
  return out.str();
}

std::optional<std::filesystem::path> default_cache_dir() {
  const char* env = std::getenv("SUZUKI_DR_CACHE");
  if (env == nullptr || *env == '\0') return std::nullopt;
  return std::filesystem::path(env);
}

namespace {

std::optional<EModule> load(const std::filesystem::path& file, const DeRham& dr, const std::string& hash) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("hash").get<std::string>() != hash) return std::nullopt;
    EModule M;
    M.field = dr.field();
    M.dim = dr.dim();
    M.F = op_from_json(M.field, j.at("F"));
    M.V = op_from_json(M.field, j.at("V"));
    M.tau = op_from_json(M.field, j.at("tau"));
    if (M.F.matrix.rows() != M.dim || M.V.matrix.rows() != M.dim || M.tau->matrix.rows() != M.dim)
      return std::nullopt;
    check_module(M);
    return M;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

EModule cached_curve_module(const DeRham& dr, const std::optional<std::filesystem::path>& dir, bool* hit) {
  if (hit) *hit = false;
  if (!dir) return curve_module(dr);
  std::ostringstream hs;
  hs << std::hex << basis_hash(dr);
  const std::string hash = hs.str();
  const int m = dr.curve().m();
  const auto file = *dir / ("h1dr_m" + std::to_string(m) + "_" + hash + ".json");
  if (auto M = load(file, dr, hash)) {
    if (hit) *hit = true;
    return *M;
  }
  EModule M = curve_module(dr);
  std::filesystem::create_directories(*dir);
  const nlohmann::json j = {{"hash", hash},
                            {"F", op_to_json(m, "F", M.F)},
                            {"V", op_to_json(m, "V", M.V)},
                            {"tau", op_to_json(m, "tau", *M.tau)}};
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump() << '\n';
  }
  std::filesystem::rename(tmp, file);
  return M;
}

}  // namespace suzuki
