#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "suzuki/linalg.hpp"

namespace suzuki {

/// A finite-dimensional module over E = k[F, V] with FV = VF = 0; F is
/// sigma-semilinear, V sigma^{-1}-semilinear, tau (optional) linear.
struct EModule {
  Field field = Field::with_degree(1);
  std::size_t dim = 0;
  SemilinearOp F;
  SemilinearOp V;
  std::optional<SemilinearOp> tau;
};

/// Throws std::invalid_argument unless shapes, twists and FV = VF = 0 hold.
void check_module(const EModule& M);

/// (A, s) o (B, t) = (A sigma^s(B), s + t).
SemilinearOp compose(const SemilinearOp& a, const SemilinearOp& b);
Subspace kernel(const SemilinearOp& op);
Subspace image(const SemilinearOp& op, const Subspace& w);
Subspace preimage(const SemilinearOp& op, const Subspace& w);

/// dim(ker F ∩ ker V).
std::size_t a_number(const EModule& M);
/// Stable rank of F.
std::size_t p_rank(const EModule& M);

/// Smallest flag stable under V and F^{-1}; steps[0] = 0, steps.back() = N.
struct Filtration {
  std::vector<Subspace> steps;
  /// nu[i] = dim V(steps[i]) and finv[i] = dim F^{-1}(steps[i]).
  std::vector<std::size_t> nu;
  std::vector<std::size_t> finv;

  std::vector<std::size_t> dims() const;
};

/// Throws std::logic_error if the closure is not totally ordered.
Filtration canonical_filtration(const EModule& M);

/// [nu_1, ..., nu_g] from the final filtration, g = dim / 2.
std::vector<int> eo_type(const EModule& M);
std::vector<int> eo_type(const Filtration& filt, std::size_t dim);
/// "[0,1,1,2]".
std::string format_eo(const std::vector<int>& nu);

// Words. A word is a cyclic string over {'F','V'}: reading the block
// permutation of the canonical filtration, 'F' stands for F^{-1} and 'V' for V.

/// Lexicographically least rotation ('F' < 'V').
std::string canonical_word(const std::string& word);
/// "(F^-1)^3 V^3" style rendering.
std::string format_word(const std::string& word);
/// Run lengths (a_i, b_i) of the presentation V^{a_i} X_i = F^{b_i} X_{i+1},
/// in the least cyclic order. Empty for words with a single letter type.
std::vector<std::pair<int, int>> presentation_of(const std::string& word);
/// "E/E(F^3+V^3)" for (F^-1)^t V^t, otherwise the list of relations.
std::string pretty_word(const std::string& word);

/// Module with basis z_0..z_{L-1} on a circle realising the word.
EModule word_module(const Field& field, const std::string& word);
/// Module generated by X_1..X_n with relations V^{a_i} X_i = F^{b_i} X_{i+1}.
EModule presentation_module(const Field& field, const std::vector<std::pair<int, int>>& relations);
/// E/E(F^t + V^t).
EModule standard_module(const Field& field, int t);
EModule direct_sum(const std::vector<EModule>& parts);

struct Summand {
  std::string word;  // canonical
  std::size_t multiplicity = 0;
  std::size_t rank = 0;
  std::size_t a_number = 0;
  std::string presentation;
  friend bool operator==(const Summand&, const Summand&) = default;
};

struct Decomposition {
  /// Sorted by (rank, word); words are distinct.
  std::vector<Summand> summands;

  std::size_t dim() const;
  std::size_t a_number() const;
  std::size_t multiplicity(const std::string& word) const;
  /// "E/E(F^2+V^2) + 4·E/E(F^3+V^3)".
  std::string pretty() const;
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Words of the block permutation of the canonical filtration.
Decomposition decompose(const EModule& M);
Decomposition merge(const std::vector<Decomposition>& parts);
/// EO type of the direct sum of the summands, via a closure on word bases.
std::vector<int> eo_type(const Decomposition& D);

// tau eigenspaces.

struct TauSplit {
  EModule trivial;
  EModule nontrivial;
  /// exponent e (tau = zeta^e) -> multiplicity.
  std::map<int, std::size_t> eigen_multiplicities;
};

/// Throws std::invalid_argument when tau is missing or tau^{q-1} != 1.
TauSplit tau_split(const EModule& M);
/// Summands on the sums of eigenspaces over orbits {e, 2e, 4e, ...}; each is
/// stable under F and V. Ordered by least exponent of the orbit.
std::vector<std::pair<std::vector<int>, EModule>> weight_orbit_modules(const EModule& M);
/// Decomposition by orbit followed by merge.
Decomposition decompose_by_orbits(const EModule& M);

}  // namespace suzuki
