#include "qifkit/core.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qifkit/errors.h"

namespace qifkit {
namespace {

// Validates a nonnegative vector summing to one within kInputTolerance,
// clamps round-off negatives and rescales to an exact-as-possible unit sum.
void NormalizeInPlace(std::span<double> values, const char* what) {
  if (values.empty()) {
    throw InvalidArgument(std::string(what) + " must not be empty");
  }
  double sum = 0.0;
  for (double& v : values) {
    if (!std::isfinite(v)) {
      throw InvalidArgument(std::string(what) + " has a non-finite entry");
    }
    if (v < 0.0) {
      if (v < -kInputTolerance) {
        std::ostringstream msg;
        msg << what << " has a negative entry " << v;
        throw InvalidArgument(msg.str());
      }
      v = 0.0;
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kInputTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " sums to " << sum << ", expected 1";
    throw InvalidArgument(msg.str());
  }
  for (double& v : values) v /= sum;
}

}  // namespace

Prior::Prior(std::vector<double> probs) : probs_(std::move(probs)) {
  NormalizeInPlace(probs_, "prior");
}

Prior Prior::Uniform(std::size_t n) {
  if (n == 0) throw InvalidArgument("uniform prior needs n >= 1");
  return Prior(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Prior Prior::PointMass(std::size_t n, std::size_t index) {
  if (index >= n) throw InvalidArgument("point mass index out of range");
  std::vector<double> probs(n, 0.0);
  probs[index] = 1.0;
  return Prior(std::move(probs));
}

std::vector<std::size_t> Prior::Support() const {
  std::vector<std::size_t> support;
  for (std::size_t x = 0; x < probs_.size(); ++x) {
    if (probs_[x] > 0.0) support.push_back(x);
  }
  return support;
}

std::size_t Prior::SupportSize() const {
  return static_cast<std::size_t>(
      std::count_if(probs_.begin(), probs_.end(),
                    [](double p) { return p > 0.0; }));
}

double Prior::Max() const { return probs_[ArgMax()]; }

std::size_t Prior::ArgMax() const {
  return static_cast<std::size_t>(
      std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
}

Channel::Channel(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InvalidArgument("channel needs at least one row");
  num_inputs_ = rows.size();
  num_outputs_ = rows.front().size();
  if (num_outputs_ == 0) {
    throw InvalidArgument("channel needs at least one column");
  }
  data_.reserve(num_inputs_ * num_outputs_);
  for (const auto& row : rows) {
    if (row.size() != num_outputs_) {
      throw InvalidArgument("channel rows have different lengths");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
  for (std::size_t x = 0; x < num_inputs_; ++x) {
    NormalizeInPlace({data_.data() + x * num_outputs_, num_outputs_},
                     "channel row");
  }
}

Channel::Channel(std::size_t num_inputs, std::size_t num_outputs,
                 std::vector<double> row_major)
    : num_inputs_(num_inputs),
      num_outputs_(num_outputs),
      data_(std::move(row_major)) {
  if (num_inputs_ == 0 || num_outputs_ == 0) {
    throw InvalidArgument("channel dimensions must be positive");
  }
  if (data_.size() != num_inputs_ * num_outputs_) {
    throw InvalidArgument("channel data size does not match dimensions");
  }
  for (std::size_t x = 0; x < num_inputs_; ++x) {
    NormalizeInPlace({data_.data() + x * num_outputs_, num_outputs_},
                     "channel row");
  }
}

Channel Channel::Identity(std::size_t n) {
  std::vector<double> data(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) data[i * n + i] = 1.0;
  return Channel(n, n, std::move(data));
}

Channel Channel::BinarySymmetric(double flip) {
  if (!(flip >= 0.0 && flip <= 1.0)) {
    throw InvalidArgument("flip probability must lie in [0, 1]");
  }
  return Channel(2, 2, {1.0 - flip, flip, flip, 1.0 - flip});
}

double Channel::ColumnMax(std::size_t y) const {
  double best = data_[y];
  for (std::size_t x = 1; x < num_inputs_; ++x) {
    best = std::max(best, (*this)(x, y));
  }
  return best;
}

double Channel::ColumnMin(std::size_t y) const {
  double best = data_[y];
  for (std::size_t x = 1; x < num_inputs_; ++x) {
    best = std::min(best, (*this)(x, y));
  }
  return best;
}

std::vector<double> Hyper::Reconstruct() const {
  std::vector<double> prior(secret_size(), 0.0);
  for (std::size_t k = 0; k < outer_.size(); ++k) {
    for (std::size_t x = 0; x < prior.size(); ++x) {
      prior[x] += outer_[k] * inners_[k][x];
    }
  }
  return prior;
}

std::vector<double> Joint(const Prior& prior, const Channel& channel) {
  if (prior.size() != channel.num_inputs()) {
    std::ostringstream msg;
    msg << "prior has " << prior.size() << " entries but channel has "
        << channel.num_inputs() << " rows";
    throw InvalidArgument(msg.str());
  }
  std::vector<double> joint(prior.size() * channel.num_outputs());
  for (std::size_t x = 0; x < prior.size(); ++x) {
    for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
      joint[x * channel.num_outputs() + y] = prior[x] * channel(x, y);
    }
  }
  return joint;
}

std::vector<double> OutputMarginal(const Prior& prior,
                                   const Channel& channel) {
  const std::vector<double> joint = Joint(prior, channel);
  std::vector<double> marginal(channel.num_outputs(), 0.0);
  for (std::size_t x = 0; x < prior.size(); ++x) {
    for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
      marginal[y] += joint[x * channel.num_outputs() + y];
    }
  }
  return marginal;
}

Hyper Push(const Prior& prior, const Channel& channel) {
  const std::vector<double> joint = Joint(prior, channel);
  const std::size_t cols = channel.num_outputs();
  Hyper hyper;
  for (std::size_t y = 0; y < cols; ++y) {
    double p_y = 0.0;
    for (std::size_t x = 0; x < prior.size(); ++x) p_y += joint[x * cols + y];
    if (p_y <= 0.0) continue;
    std::vector<double> posterior(prior.size());
    for (std::size_t x = 0; x < prior.size(); ++x) {
      posterior[x] = joint[x * cols + y] / p_y;
    }
    hyper.outer_.push_back(p_y);
    hyper.inners_.emplace_back(std::move(posterior));
    hyper.output_indices_.push_back(y);
  }
  // The outer sums to one up to round-off; rescale so the invariant holds
  // at the documented tolerance.
  const double total =
      std::accumulate(hyper.outer_.begin(), hyper.outer_.end(), 0.0);
  for (double& p : hyper.outer_) p /= total;
  return hyper;
}

Channel Compose(const Channel& first, const Channel& second) {
  if (first.num_outputs() != second.num_inputs()) {
    std::ostringstream msg;
    msg << "cannot compose a channel with " << first.num_outputs()
        << " outputs with one taking " << second.num_inputs() << " inputs";
    throw InvalidArgument(msg.str());
  }
  const std::size_t rows = first.num_inputs();
  const std::size_t cols = second.num_outputs();
  std::vector<double> product(rows * cols, 0.0);
  for (std::size_t x = 0; x < rows; ++x) {
    for (std::size_t y = 0; y < first.num_outputs(); ++y) {
      const double c = first(x, y);
      if (c == 0.0) continue;
      for (std::size_t z = 0; z < cols; ++z) {
        product[x * cols + z] += c * second(y, z);
      }
    }
  }
  return Channel(rows, cols, std::move(product));
}

Channel NiChannel(std::size_t num_inputs) {
  if (num_inputs == 0) throw InvalidArgument("NI channel needs >= 1 row");
  return Channel(num_inputs, 1, std::vector<double>(num_inputs, 1.0));
}

}  // namespace qifkit
