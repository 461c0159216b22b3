#ifndef QIFKIT_GAIN_H_
#define QIFKIT_GAIN_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qifkit/core.h"

namespace qifkit {

// Explicit |W| x |X| gain table, row-major by action.
struct GainMatrix {
  std::size_t num_actions = 0;
  std::size_t num_secrets = 0;
  std::vector<double> values;

  double operator()(std::size_t w, std::size_t x) const {
    return values[w * num_secrets + x];
  }
  std::span<const double> Action(std::size_t w) const {
    return {values.data() + w * num_secrets, num_secrets};
  }
};

// The adversary's action set and gain g(w, x).
//
//   kFiniteMatrix  explicit finite action set.
//   kIdentity      g_id(w, x) = [w == x] over W = X.
//   kSimplex       W = distributions over X, g(w, x) = w_x.
//   kPointwiseInfo W = distributions over X, g(w, x) = log(w_x / pi_x) for a
//                  fixed reference prior pi.
class GainSpec {
 public:
  enum class Kind { kFiniteMatrix, kIdentity, kSimplex, kPointwiseInfo };

  // Rows are actions. Needs at least one strictly positive entry.
  static GainSpec FiniteMatrix(const std::vector<std::vector<double>>& rows);
  static GainSpec Identity();
  static GainSpec Simplex();
  static GainSpec PointwiseInfo(Prior reference);

  Kind kind() const { return kind_; }
  bool is_finite() const {
    return kind_ == Kind::kFiniteMatrix || kind_ == Kind::kIdentity;
  }

  // Materializes a finite gain over a secret alphabet of the given size.
  // Throws for the simplex-valued kinds and on a dimension mismatch.
  GainMatrix AsMatrix(std::size_t num_secrets) const;

  // g(w, x) for a simplex-valued kind and an explicit guess w.
  double EvaluateGuess(std::span<const double> guess, std::size_t x) const;

  const Prior& reference() const { return *reference_; }
  std::string name() const;

 private:
  GainSpec() = default;

  Kind kind_ = Kind::kIdentity;
  GainMatrix matrix_;
  std::optional<Prior> reference_;
};

}  // namespace qifkit

#endif  // QIFKIT_GAIN_H_
