#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "suzuki/linalg.hpp"
#include "suzuki/suzuki_ff.hpp"

namespace suzuki {

/// Renders a cone function as "y^-1*z*h1 + [6]*h2"; non-unit coefficients
/// appear as bracketed bitmasks.
std::string to_string(const ConeFunc& f);
std::string to_string(const Mono& t);

/// Split of a differential mu dy (given by mu in cone form) into a part
/// regular on U_inf (a >= 0) and a part regular on U_0 (pole <= 2g-2).
struct DifferentialSplit {
  ConeFunc inf;
  ConeFunc zero;
};

/// H^1_dR of the curve in the basis psi(f_t), t in E, followed by
/// lambda(g_t), t in E, where g_t = y^a z^b h1^c h2^d dy and
/// f_t = y^{-(a+1)} z^{1-b} h1^{q0-1-c} h2^{q0-1-d}.
class DeRham {
 public:
  explicit DeRham(const SuzukiCurve& curve);

  const SuzukiCurve& curve() const { return curve_; }
  const Field& field() const { return curve_.field(); }
  std::size_t genus() const { return index_.size(); }
  std::size_t dim() const { return 2 * index_.size(); }

  /// E in lexicographic order.
  const std::vector<Mono>& index_set() const { return index_; }
  std::optional<std::size_t> index_of(const Mono& t) const;
  /// Cone monomial of f_t. Throws std::invalid_argument for t outside E.
  Mono h1O_basis_mono(const Mono& t) const;
  ConeFunc h1O_basis_fn(const Mono& t) const;
  /// Basis vector label: "psi(f_(a,b,c,d))" or "lambda(g_(a,b,c,d))".
  std::string label(std::size_t k) const;

  bool regular_on_u_inf(const Mono& mono) const { return mono.a >= 0; }
  bool regular_on_u0(const Mono& mono) const { return curve_.pole_order(mono) <= 0; }
  bool differential_regular_on_u0(const Mono& mono) const {
    return curve_.pole_order(mono) <= 2 * static_cast<long long>(genus()) - 2;
  }

  /// Monomial-wise split; throws std::domain_error if some monomial is
  /// regular on neither open set.
  DifferentialSplit split_differential(const ConeFunc& mu) const;
  /// Coordinates of a global differential mu dy against the g_t (length g).
  /// Throws std::logic_error when mu dy is not holomorphic.
  Vector global_coords(const ConeFunc& mu) const;

  /// Class of the cocycle (f, (w_inf, w_0)); differentials are given by their
  /// dy coefficients. Throws std::invalid_argument if df != w_inf - w_0 or the
  /// differentials are not regular on their open sets.
  Vector reduce_cocycle(const ConeFunc& f, const ConeFunc& w_inf, const ConeFunc& w_0) const;

  /// Column k is the image of basis vector k.
  SemilinearOp frobenius_matrix() const;
  SemilinearOp verschiebung_matrix() const;
  SemilinearOp tau_matrix() const;
  /// Exponent e with tau(basis_k) = zeta^e basis_k.
  std::vector<int> tau_weights() const;

 private:
  const DifferentialSplit& psi_split(std::size_t k) const;

  SuzukiCurve curve_;  // shares memo tables with the caller's copy
  std::vector<Mono> index_;
  std::map<Mono, std::size_t> position_;
  mutable std::vector<std::optional<DifferentialSplit>> psi_split_;
};

/// One row of the Cartier table on H^0(Omega^1).
struct CartierRow {
  std::string lhs;        // f in C(f dy)
  std::string printed;    // printed right-hand side
  bool equal = false;     // printed formula agrees with the computed image
  bool flagged = false;   // printed formula is suspected to be misprinted
  std::string computed;   // computed C(f dy) / dy in cone form
  std::string corrected;  // proposed reading of a flagged row
  bool corrected_equal = false;
  std::string note;
};

/// Evaluates the 15 rows of the Cartier table (formulas in q0) for this curve.
std::vector<CartierRow> verify_cartier_table(const SuzukiCurve& curve);

/// One row of the m = 1 Verschiebung/Frobenius table, in the adapted bases.
struct VFRow {
  std::string element;
  std::string printed_v;
  std::string printed_f;
  std::string computed_v;
  std::string computed_f;
  bool v_equal = false;
  bool f_equal = false;
  /// The printed F image is a suspected misprint; alt_* is the reading that
  /// makes the F-chain close, and alt_equal whether it holds.
  bool flagged = false;
  std::string alt_element;
  std::string alt_f;
  bool alt_equal = false;
};

/// The printed table uses psi lifts whose dy-splitting differs from the
/// monomial-wise one by global differentials: psi'(f_t) = psi(f_t) +
/// lambda(w_t). The checker solves for the w_t from the unflagged rows and
/// compares every row in the primed basis.
struct VFTableReport {
  std::vector<VFRow> rows;
  bool lift_found = false;
  /// "psi(f_(0,1,0,1)) += lambda(g_(3,0,0,0))" style entries.
  std::vector<std::string> lift_corrections;
  /// The adapted basis change is invertible, and triangular in pole order.
  bool basis_change_invertible = false;
  bool basis_change_triangular = false;
};

/// Checks the 28-row m = 1 table. Throws std::invalid_argument unless m == 1.
VFTableReport verify_vf_table(const DeRham& dr);

/// Parses class labels such as "P0101+L0000" (P for psi(f_t), L for
/// lambda(g_t), "0" for zero; "P(1,0,0,1)" also accepted) into coordinates.
Vector parse_class(const DeRham& dr, const std::string& text);
/// Inverse of parse_class for vectors with coefficients in F_2.
std::string format_class(const DeRham& dr, const Vector& v);

}  // namespace suzuki
