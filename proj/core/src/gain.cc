#include "qifkit/gain.h"

#include <cmath>
#include <sstream>

#include "qifkit/errors.h"

namespace qifkit {

GainSpec GainSpec::FiniteMatrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw InvalidArgument("gain matrix must have at least one action and secret");
  }
  GainSpec g;
  g.kind_ = Kind::kFiniteMatrix;
  g.matrix_.num_actions = rows.size();
  g.matrix_.num_secrets = rows.front().size();
  bool any_positive = false;
  for (const auto& row : rows) {
    if (row.size() != g.matrix_.num_secrets) {
      throw InvalidArgument("gain matrix rows have different lengths");
    }
    for (double v : row) {
      if (!std::isfinite(v)) throw InvalidArgument("gain matrix has a non-finite entry");
      any_positive = any_positive || v > 0.0;
      g.matrix_.values.push_back(v);
    }
  }
  if (!any_positive) {
    throw InvalidArgument("gain matrix needs at least one positive entry");
  }
  return g;
}

GainSpec GainSpec::Identity() {
  GainSpec g;
  g.kind_ = Kind::kIdentity;
  return g;
}

GainSpec GainSpec::Simplex() {
  GainSpec g;
  g.kind_ = Kind::kSimplex;
  return g;
}

GainSpec GainSpec::PointwiseInfo(Prior reference) {
  GainSpec g;
  g.kind_ = Kind::kPointwiseInfo;
  g.reference_ = std::move(reference);
  return g;
}

GainMatrix GainSpec::AsMatrix(std::size_t num_secrets) const {
  switch (kind_) {
    case Kind::kFiniteMatrix:
      if (matrix_.num_secrets != num_secrets) {
        std::ostringstream msg;
        msg << "gain matrix covers " << matrix_.num_secrets
            << " secrets but the prior has " << num_secrets;
        throw InvalidArgument(msg.str());
      }
      return matrix_;
    case Kind::kIdentity: {
      GainMatrix m{num_secrets, num_secrets,
                   std::vector<double>(num_secrets * num_secrets, 0.0)};
      for (std::size_t x = 0; x < num_secrets; ++x) {
        m.values[x * num_secrets + x] = 1.0;
      }
      return m;
    }
    case Kind::kSimplex:
    case Kind::kPointwiseInfo:
      break;
  }
  throw InvalidArgument("gain '" + name() + "' has no finite action set");
}

double GainSpec::EvaluateGuess(std::span<const double> guess,
                               std::size_t x) const {
  switch (kind_) {
    case Kind::kSimplex:
      return guess[x];
    case Kind::kPointwiseInfo: {
      const double ref = (*reference_)[x];
      if (ref <= 0.0) {
        throw DomainError("pointwise information gain evaluated outside the "
                          "support of its reference prior");
      }
      return std::log(guess[x] / ref);
    }
    case Kind::kFiniteMatrix:
    case Kind::kIdentity:
      break;
  }
  throw InvalidArgument("gain '" + name() + "' is not simplex-valued");
}

std::string GainSpec::name() const {
  switch (kind_) {
    case Kind::kFiniteMatrix: {
      std::ostringstream out;
      out << "matrix(" << matrix_.num_actions << "x" << matrix_.num_secrets << ")";
      return out.str();
    }
    case Kind::kIdentity:
      return "identity";
    case Kind::kSimplex:
      return "simplex";
    case Kind::kPointwiseInfo:
      return "pointwise_info";
  }
  return "unknown";
}

}  // namespace qifkit
