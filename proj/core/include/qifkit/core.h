#ifndef QIFKIT_CORE_H_
#define QIFKIT_CORE_H_

#include <cstddef>
#include <span>
#include <vector>

namespace qifkit {

// Inputs whose entries or row sums are off by at most this much are
// renormalized; anything further off is rejected.
inline constexpr double kInputTolerance = 1e-9;
// Tolerance for identities the library asserts about its own outputs.
inline constexpr double kIdentityTolerance = 1e-10;

// A probability distribution over a finite secret alphabet.
class Prior {
 public:
  explicit Prior(std::vector<double> probs);

  static Prior Uniform(std::size_t n);
  static Prior PointMass(std::size_t n, std::size_t index);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t x) const { return probs_[x]; }
  std::span<const double> probs() const { return probs_; }

  std::vector<std::size_t> Support() const;
  std::size_t SupportSize() const;
  bool HasFullSupport() const { return SupportSize() == size(); }
  // Largest probability and the lowest index attaining it.
  double Max() const;
  std::size_t ArgMax() const;

  friend bool operator==(const Prior&, const Prior&) = default;

 private:
  std::vector<double> probs_;
};

// Row-stochastic matrix C[x][y] = P(Y = y | X = x).
class Channel {
 public:
  explicit Channel(const std::vector<std::vector<double>>& rows);
  Channel(std::size_t num_inputs, std::size_t num_outputs,
          std::vector<double> row_major);

  static Channel Identity(std::size_t n);
  // 2x2 channel that flips its input with probability `flip`.
  static Channel BinarySymmetric(double flip);

  std::size_t num_inputs() const { return num_inputs_; }
  std::size_t num_outputs() const { return num_outputs_; }

  double operator()(std::size_t x, std::size_t y) const {
    return data_[x * num_outputs_ + y];
  }
  std::span<const double> Row(std::size_t x) const {
    return {data_.data() + x * num_outputs_, num_outputs_};
  }
  double ColumnMax(std::size_t y) const;
  double ColumnMin(std::size_t y) const;

  friend bool operator==(const Channel&, const Channel&) = default;

 private:
  std::size_t num_inputs_;
  std::size_t num_outputs_;
  std::vector<double> data_;
};

// The hyper-distribution [pi, C]: an outer distribution over the reachable
// outputs and, for each, the posterior over secrets. Outputs with p(y) = 0
// are dropped; output_indices() maps retained positions back to columns of
// the originating channel.
class Hyper {
 public:
  std::size_t size() const { return outer_.size(); }
  std::span<const double> outer() const { return outer_; }
  const std::vector<Prior>& inners() const { return inners_; }
  const Prior& inner(std::size_t k) const { return inners_[k]; }
  std::span<const std::size_t> output_indices() const {
    return output_indices_;
  }
  std::size_t secret_size() const { return inners_.front().size(); }

  // Sum_y p(y) delta^y, which equals the prior the hyper was built from.
  std::vector<double> Reconstruct() const;

 private:
  friend Hyper Push(const Prior& prior, const Channel& channel);

  Hyper() = default;

  std::vector<double> outer_;
  std::vector<Prior> inners_;
  std::vector<std::size_t> output_indices_;
};

Hyper Push(const Prior& prior, const Channel& channel);

// Sequential composition: (CR)[x][z] = sum_y C[x][y] R[y][z].
Channel Compose(const Channel& first, const Channel& second);

// The non-interfering channel: every input maps to a single output.
Channel NiChannel(std::size_t num_inputs);

// Joint matrix p(x, y) = pi_x C[x][y], row-major |X| x |Y|.
std::vector<double> Joint(const Prior& prior, const Channel& channel);
// Output marginal p(y) = sum_x pi_x C[x][y], including zero entries.
std::vector<double> OutputMarginal(const Prior& prior, const Channel& channel);

}  // namespace qifkit

#endif  // QIFKIT_CORE_H_
