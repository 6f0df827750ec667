#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "grnconv/errors.hpp"

namespace grnconv {

/// One block of equal atoms: `mult` atoms each of probability `p`.
/// The multiplicity is a Scalar so that type classes of large i.i.d. powers fit.
template <typename Scalar>
struct Level {
    Scalar p;
    Scalar mult;
};

/// Finite probability distribution kept in decreasing order as
/// (probability, multiplicity) levels. Zero atoms are dropped and equal
/// levels (relative 1e-12) merged, so two distributions with the same
/// sorted atoms compare equal level by level.
template <typename Scalar>
class BasicDistribution {
public:
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    static constexpr double kMassTolerance = 1e-12;
    static constexpr double kMergeTolerance = 1e-12;
    /// Largest support that dense() will expand.
    static constexpr std::int64_t kMaxDense = 10'000'000;

    BasicDistribution() = default;

    /// Atoms in any order; throws DistributionError on negative entries or mass != 1.
    static BasicDistribution from_probs(std::span<const Scalar> probs,
                                        double mass_tolerance = kMassTolerance);
    static BasicDistribution from_probs(std::initializer_list<Scalar> probs) {
        return from_probs(std::span<const Scalar>(probs.begin(), probs.size()));
    }
    static BasicDistribution from_levels(std::vector<Level<Scalar>> levels,
                                         double mass_tolerance = kMassTolerance);
    static BasicDistribution uniform(Scalar size);
    static BasicDistribution point_mass() { return uniform(Scalar(1)); }

    [[nodiscard]] const std::vector<Level<Scalar>>& levels() const { return levels_; }
    [[nodiscard]] std::size_t level_count() const { return levels_.size(); }
    /// Number of atoms with positive probability.
    [[nodiscard]] Scalar support() const;
    [[nodiscard]] Scalar total_mass() const;
    [[nodiscard]] bool is_uniform() const { return levels_.size() == 1; }
    [[nodiscard]] Scalar max_probability() const { return levels_.front().p; }

    /// Decreasing dense vector; SizeError if the support exceeds kMaxDense.
    [[nodiscard]] Vector dense() const;

    template <typename Other>
    [[nodiscard]] BasicDistribution<Other> cast() const {
        std::vector<Level<Other>> out;
        out.reserve(levels_.size());
        for (const auto& l : levels_) out.push_back({static_cast<Other>(l.p), static_cast<Other>(l.mult)});
        return BasicDistribution<Other>::from_levels(std::move(out), 1e-9);
    }

private:
    explicit BasicDistribution(std::vector<Level<Scalar>> levels) : levels_(std::move(levels)) {}

    std::vector<Level<Scalar>> levels_;
};

using Distribution = BasicDistribution<double>;
using WideDistribution = BasicDistribution<long double>;

/// Shannon entropy and varentropy, in bits and bits^2.
template <typename Scalar>
Scalar entropy_bits(const BasicDistribution<Scalar>& p);
template <typename Scalar>
Scalar varentropy_bits(const BasicDistribution<Scalar>& p);

extern template class BasicDistribution<double>;
extern template class BasicDistribution<long double>;

}  // namespace grnconv
