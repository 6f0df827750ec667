#include "grnconv/distribution.hpp"

#include <algorithm>
#include <cmath>

namespace grnconv {

namespace {

template <typename Scalar>
bool is_whole(Scalar x) {
    return std::floor(x) == x;
}

}  // namespace

template <typename Scalar>
BasicDistribution<Scalar> BasicDistribution<Scalar>::from_probs(std::span<const Scalar> probs,
                                                                double mass_tolerance) {
    std::vector<Level<Scalar>> levels;
    levels.reserve(probs.size());
    for (Scalar p : probs) levels.push_back({p, Scalar(1)});
    return from_levels(std::move(levels), mass_tolerance);
}

template <typename Scalar>
BasicDistribution<Scalar> BasicDistribution<Scalar>::from_levels(std::vector<Level<Scalar>> levels,
                                                                 double mass_tolerance) {
    for (const auto& l : levels) {
        if (!std::isfinite(l.p) || l.p < 0) throw DistributionError("distribution: invalid probability");
        if (!std::isfinite(l.mult) || l.mult < 1 || !is_whole(l.mult))
            throw DistributionError("distribution: multiplicity must be a positive integer");
    }
    std::erase_if(levels, [](const Level<Scalar>& l) { return l.p == 0; });
    if (levels.empty()) throw DistributionError("distribution: no positive mass");
    std::sort(levels.begin(), levels.end(), [](const auto& a, const auto& b) { return a.p > b.p; });

    std::vector<Level<Scalar>> merged;
    merged.reserve(levels.size());
    for (const auto& l : levels) {
        if (!merged.empty() && merged.back().p - l.p <= Scalar(kMergeTolerance) * merged.back().p) {
            auto& m = merged.back();
            const Scalar mult = m.mult + l.mult;
            m.p = (m.p * m.mult + l.p * l.mult) / mult;
            m.mult = mult;
        } else {
            merged.push_back(l);
        }
    }

    BasicDistribution out(std::move(merged));
    if (std::abs(out.total_mass() - Scalar(1)) > Scalar(mass_tolerance))
        throw DistributionError("distribution: probabilities must sum to 1");
    return out;
}

template <typename Scalar>
BasicDistribution<Scalar> BasicDistribution<Scalar>::uniform(Scalar size) {
    if (!(size >= 1) || !is_whole(size) || !std::isfinite(size))
        throw DistributionError("uniform: size must be a positive integer");
    return BasicDistribution({{Scalar(1) / size, size}});
}

template <typename Scalar>
Scalar BasicDistribution<Scalar>::support() const {
    Scalar n = 0;
    for (const auto& l : levels_) n += l.mult;
    return n;
}

template <typename Scalar>
Scalar BasicDistribution<Scalar>::total_mass() const {
    Scalar m = 0;
    for (const auto& l : levels_) m += l.p * l.mult;
    return m;
}

template <typename Scalar>
typename BasicDistribution<Scalar>::Vector BasicDistribution<Scalar>::dense() const {
    const Scalar n = support();
    if (n > Scalar(kMaxDense)) throw SizeError("distribution: support too large for a dense view");
    Vector out(static_cast<Eigen::Index>(n));
    Eigen::Index i = 0;
    for (const auto& l : levels_)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(l.mult); ++k) out[i++] = l.p;
    return out;
}

template <typename Scalar>
Scalar entropy_bits(const BasicDistribution<Scalar>& p) {
    Scalar h = 0;
    for (const auto& l : p.levels()) h -= l.mult * l.p * std::log2(l.p);
    return h;
}

template <typename Scalar>
Scalar varentropy_bits(const BasicDistribution<Scalar>& p) {
    if (p.is_uniform()) return 0;
    const Scalar h = entropy_bits(p);
    Scalar v = 0;
    for (const auto& l : p.levels()) {
        const Scalar d = -std::log2(l.p) - h;
        v += l.mult * l.p * d * d;
    }
    return v;
}

template class BasicDistribution<double>;
template class BasicDistribution<long double>;
template double entropy_bits(const BasicDistribution<double>&);
template long double entropy_bits(const BasicDistribution<long double>&);
template double varentropy_bits(const BasicDistribution<double>&);
template long double varentropy_bits(const BasicDistribution<long double>&);

}  // namespace grnconv
