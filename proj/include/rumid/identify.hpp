#pragma once

#include <optional>
#include <span>
#include <type_traits>
#include <vector>

#include "rumid/core.hpp"
#include "rumid/scalar.hpp"
#include "rumid/stochastic.hpp"

namespace rumid {

/// Coordinates indexed by PairIndex (all (x, A), x in A, canonical order).
using ChoiceVector = Vector<Rational>;

/// 1 at (x, A) iff x is pref-best in A: one 1 per nonempty menu.
ChoiceVector p_vector(const Preference& pref, const PairIndex& index);
/// 1 at (x, A) iff pref ∈ L(x, A): exactly n ones, the path of pref.
ChoiceVector q_vector(const Preference& pref, const PairIndex& index);

ChoiceVector p_vector(const Preference& pref);
ChoiceVector q_vector(const Preference& pref);

/// Stacks vectors as the rows of a matrix. All must have equal length.
template <typename Scalar>
Matrix<Scalar> stack_rows(std::span<const Vector<Scalar>> vectors) {
  if (vectors.empty()) return Matrix<Scalar>(0, 0);
  const Index cols = vectors.front().size();
  Matrix<Scalar> m(static_cast<Index>(vectors.size()), cols);
  for (Index r = 0; r < m.rows(); ++r) {
    const auto& v = vectors[static_cast<std::size_t>(r)];
    if (v.size() != cols) throw std::invalid_argument("vectors have different lengths");
    m.row(r) = v.transpose();
  }
  return m;
}

/// Clears denominators row by row; the row space (and so the rank) is unchanged.
template <typename Derived>
Matrix<Integer> to_integer_rows(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  static_assert(!std::is_floating_point_v<Scalar>, "exact rank only: floating-point input is not accepted");
  Matrix<Integer> out(m.rows(), m.cols());
  for (Index r = 0; r < m.rows(); ++r) {
    if constexpr (std::is_same_v<Scalar, Rational>) {
      Integer scale = 1;
      for (Index c = 0; c < m.cols(); ++c) scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(m(r, c)));
      for (Index c = 0; c < m.cols(); ++c) {
        const Rational scaled = m(r, c) * scale;
        out(r, c) = boost::multiprecision::numerator(scaled);
      }
    } else {
      for (Index c = 0; c < m.cols(); ++c) out(r, c) = Integer(m(r, c));
    }
  }
  return out;
}

/// Rank by fraction-free (Bareiss) elimination; every division is exact.
Index bareiss_rank(Matrix<Integer> m);

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& rows) {
  return bareiss_rank(to_integer_rows(rows));
}

/// Rank of a list of vectors; an empty list has rank 0.
Index rank(std::span<const ChoiceVector> vectors);

/// Basis of {c : a c = 0} by Gauss-Jordan over the rationals.
std::vector<Vector<Rational>> nullspace(Matrix<Rational> a);

/// Two distributions with disjoint supports and identical choice rules.
struct NullspaceCertificate {
  /// c with Σ c_≻ q_≻ = 0, aligned with the model's preferences; integral with gcd 1.
  std::vector<Rational> coefficients;
  PreferenceDistribution nu;
  PreferenceDistribution nu_prime;
};

struct IdentificationResult {
  bool identified = false;
  Index rank = 0;
  std::size_t model_size = 0;
  std::optional<Index> p_rank;
  std::optional<NullspaceCertificate> certificate;
};

struct IdentifyOptions {
  /// Also rank the p-vectors and throw std::logic_error if the two routes disagree.
  bool check_p_route = true;
};

/// Identified iff the q-vectors are linearly independent. A negative answer always
/// carries a certificate whose two distributions were checked to induce the same rule.
IdentificationResult is_identified(const Model& model, IdentifyOptions options = {});

/// (n - 2) 2^{n-1} + 2.
Integer max_identified_size(int n);

/// rank(vectors) == rank(vectors each extended by a trailing 1). Requires equal nonzero
/// coordinate sums; throws std::invalid_argument otherwise.
bool append_one_preserves_rank(std::span<const ChoiceVector> vectors);

}  // namespace rumid
