#include "grnconv/majorization.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace grnconv {

namespace {

template <typename Scalar, std::size_t K>
struct Segment {
    std::array<Scalar, K> value;
    Scalar length;
};

// Walks K decreasing distributions in lockstep and cuts the atom axis into
// runs where every one of them is constant. Atoms past a support count as 0.
template <typename Scalar, std::size_t K>
std::vector<Segment<Scalar, K>> aligned_segments(std::array<const BasicDistribution<Scalar>*, K> ds) {
    std::array<std::size_t, K> idx{};
    std::array<Scalar, K> remaining{};
    for (std::size_t k = 0; k < K; ++k) remaining[k] = ds[k]->levels().front().mult;

    auto active = [&](std::size_t k) { return idx[k] < ds[k]->levels().size(); };
    std::vector<Segment<Scalar, K>> out;
    for (;;) {
        Scalar len = std::numeric_limits<Scalar>::infinity();
        for (std::size_t k = 0; k < K; ++k)
            if (active(k)) len = std::min(len, remaining[k]);
        if (std::isinf(len)) break;

        Segment<Scalar, K> seg{{}, len};
        for (std::size_t k = 0; k < K; ++k) seg.value[k] = active(k) ? ds[k]->levels()[idx[k]].p : Scalar(0);
        out.push_back(seg);

        // Counts that agree to rounding end together; huge multiplicities
        // would otherwise leave slivers behind.
        const Scalar snap = 64 * std::numeric_limits<Scalar>::epsilon() * len;
        for (std::size_t k = 0; k < K; ++k) {
            if (!active(k)) continue;
            remaining[k] -= len;
            if (remaining[k] <= snap) {
                ++idx[k];
                if (active(k)) remaining[k] = ds[k]->levels()[idx[k]].mult;
            }
        }
    }
    return out;
}

template <typename Scalar>
struct Block {
    Scalar p_mass, q_mass;
    std::size_t first, last;  // segment range, inclusive
};

template <typename Scalar>
ConversionResult<Scalar> solve_pool_adjacent(const BasicDistribution<Scalar>& p,
                                             const BasicDistribution<Scalar>& q) {
    const auto segs = aligned_segments<Scalar, 2>({&p, &q});
    std::size_t last_q = 0;
    for (std::size_t s = 0; s < segs.size(); ++s)
        if (segs[s].value[1] > 0) last_q = s;

    // Mass of p beyond the support of q can only sit on the last q atoms.
    Scalar folded = 0;
    for (std::size_t s = last_q + 1; s < segs.size(); ++s) folded += segs[s].value[0] * segs[s].length;

    std::vector<Block<Scalar>> stack;
    stack.reserve(last_q + 1);
    for (std::size_t s = 0; s <= last_q; ++s) {
        Block<Scalar> b{segs[s].value[0] * segs[s].length, segs[s].value[1] * segs[s].length, s, s};
        if (s == last_q) b.p_mass += folded;
        stack.push_back(b);
        // Pool while the ratio fails to decrease.
        while (stack.size() >= 2) {
            auto& lhs = stack[stack.size() - 2];
            const auto& rhs = stack.back();
            if (!(lhs.p_mass * rhs.q_mass < rhs.p_mass * lhs.q_mass)) break;
            lhs.p_mass += rhs.p_mass;
            lhs.q_mass += rhs.q_mass;
            lhs.last = rhs.last;
            stack.pop_back();
        }
    }

    ConversionResult<Scalar> result;
    std::vector<Level<Scalar>> levels;
    Scalar position = 0;
    for (std::size_t b = 0; b < stack.size(); ++b) {
        const auto& blk = stack[b];
        const Scalar ratio = blk.p_mass / blk.q_mass;
        result.fidelity += std::sqrt(blk.p_mass * blk.q_mass);
        for (std::size_t s = blk.first; s <= blk.last; ++s) {
            position += segs[s].length;
            if (ratio > 0) levels.push_back({segs[s].value[1] * ratio, segs[s].length});
        }
        if (b + 1 < stack.size()) result.tight_prefixes.push_back(position);
    }
    result.witness = BasicDistribution<Scalar>::from_levels(std::move(levels), 1e-9);
    return result;
}

template <typename Scalar>
ConversionResult<Scalar> solve_by_enumeration(const BasicDistribution<Scalar>& p,
                                              const BasicDistribution<Scalar>& q) {
    constexpr Scalar kMaxDim = 12;
    if (p.support() > kMaxDim || q.support() > kMaxDim)
        throw SizeError("active-set enumeration: support above 12");
    const auto pd = p.dense(), qd = q.dense();
    const Eigen::Index d = std::max(pd.size(), qd.size());
    using Vec = typename BasicDistribution<Scalar>::Vector;
    Vec pv = Vec::Zero(d), qv = Vec::Zero(d);
    pv.head(pd.size()) = pd;
    qv.head(qd.size()) = qd;

    Scalar best = -1;
    Vec best_x;
    std::vector<Scalar> best_cuts;
    for (std::uint32_t mask = 0; mask < (1u << (d - 1)); ++mask) {
        Vec x(d);
        std::vector<Scalar> cuts;
        Eigen::Index start = 0;
        for (Eigen::Index i = 0; i < d; ++i) {
            const bool cut = i == d - 1 || (mask >> i) & 1u;
            if (!cut) continue;
            const Eigen::Index len = i + 1 - start;
            const Scalar pm = pv.segment(start, len).sum(), qm = qv.segment(start, len).sum();
            if (qm > 0)
                x.segment(start, len) = qv.segment(start, len) * (pm / qm);
            else
                x.segment(start, len) = pv.segment(start, len);
            if (i < d - 1) cuts.push_back(Scalar(i + 1));
            start = i + 1;
        }
        Scalar px = 0, pp = 0;
        bool feasible = true;
        for (Eigen::Index i = 0; i < d && feasible; ++i) {
            px += x[i];
            pp += pv[i];
            feasible = px >= pp - Scalar(kMajorizationSlack);
        }
        if (!feasible) continue;
        const Scalar value = (x.array() * qv.array()).sqrt().sum();
        if (value > best) {
            best = value;
            best_x = x;
            best_cuts = std::move(cuts);
        }
    }
    ConversionResult<Scalar> result;
    result.fidelity = best;
    result.witness = BasicDistribution<Scalar>::from_probs(
        std::span<const Scalar>(best_x.data(), static_cast<std::size_t>(best_x.size())), 1e-9);
    result.tight_prefixes = std::move(best_cuts);
    return result;
}

// Largest k atoms of q, decreasing.
std::vector<double> top_atoms(const Distribution& q, std::size_t k) {
    std::vector<double> out;
    for (const auto& l : q.levels())
        for (double m = 0; m < l.mult && out.size() < k; m += 1) out.push_back(l.p);
    return out;
}

struct PartitionSearch {
    std::vector<double> atoms;
    std::vector<double> targets;  // decreasing
    std::size_t max_blocks;
    std::vector<double> sums;
    double best = 0;

    void run(std::size_t i) {
        if (i == atoms.size()) {
            std::vector<double> sorted = sums;
            std::sort(sorted.begin(), sorted.end(), std::greater<>());
            double value = 0;
            for (std::size_t b = 0; b < sorted.size(); ++b) value += std::sqrt(sorted[b] * targets[b]);
            best = std::max(best, value);
            return;
        }
        for (std::size_t b = 0; b < sums.size(); ++b) {
            sums[b] += atoms[i];
            run(i + 1);
            sums[b] -= atoms[i];
        }
        if (sums.size() < max_blocks) {
            sums.push_back(atoms[i]);
            run(i + 1);
            sums.pop_back();
        }
    }
};

// log of the multinomial coefficient, and the exact value when it fits.
template <typename Scalar>
Scalar multinomial(std::int64_t n, const std::vector<std::int64_t>& parts, long double log_value) {
    if (log_value < 100 * std::log(2.0L)) {
        unsigned __int128 acc = 1;
        std::int64_t left = n;
        for (std::int64_t c : parts) {
            // acc *= C(left, c) one factor at a time; each step stays integral.
            unsigned __int128 binom = 1;
            for (std::int64_t j = 1; j <= c; ++j) binom = binom * static_cast<unsigned __int128>(left - c + j) / j;
            acc *= binom;
            left -= c;
        }
        return static_cast<Scalar>(static_cast<long double>(acc));
    }
    return static_cast<Scalar>(std::exp(log_value));
}

}  // namespace

template <typename Scalar>
Scalar fidelity(const BasicDistribution<Scalar>& p, const BasicDistribution<Scalar>& q) {
    Scalar f = 0;
    for (const auto& seg : aligned_segments<Scalar, 2>({&p, &q}))
        f += seg.length * std::sqrt(seg.value[0] * seg.value[1]);
    return f;
}

template <typename Scalar>
bool is_majorized(const BasicDistribution<Scalar>& p, const BasicDistribution<Scalar>& q, double slack) {
    // Prefix sums are linear inside a segment, so segment ends suffice.
    Scalar cp = 0, cq = 0;
    for (const auto& seg : aligned_segments<Scalar, 2>({&p, &q})) {
        cp += seg.value[0] * seg.length;
        cq += seg.value[1] * seg.length;
        if (cp > cq + Scalar(slack)) return false;
    }
    return true;
}

template <typename Scalar>
BasicDistribution<Scalar> condition_to_storage(const BasicDistribution<Scalar>& p, Scalar capacity) {
    if (!(capacity >= 1)) throw CapacityError("condition_to_storage: capacity must be >= 1");
    if (p.support() <= capacity) return p;

    const auto& levels = p.levels();
    std::vector<Scalar> tail(levels.size() + 1, Scalar(0));
    for (std::size_t l = levels.size(); l-- > 0;) tail[l] = tail[l + 1] + levels[l].p * levels[l].mult;

    // Inside a block of equal atoms the defining inequality does not depend
    // on the index, so the cut always falls on a block end e <= N - 1.
    std::size_t kept = 0;
    Scalar cut = 0, end = 0;
    for (std::size_t l = 0; l < levels.size(); ++l) {
        end += levels[l].mult;
        if (end > capacity - 1) break;
        if (tail[l + 1] < levels[l].p * (capacity - end)) {
            kept = l + 1;
            cut = end;
        }
    }
    std::vector<Level<Scalar>> out(levels.begin(), levels.begin() + static_cast<std::ptrdiff_t>(kept));
    const Scalar rest = tail[kept];
    if (rest > 0) out.push_back({rest / (capacity - cut), capacity - cut});
    return BasicDistribution<Scalar>::from_levels(std::move(out), 1e-9);
}

template <typename Scalar>
Scalar storage_capacity(double n_bits) {
    if (std::isnan(n_bits) || n_bits < 0) throw CapacityError("storage: need n_bits >= 0");
    const Scalar raw = std::exp2(static_cast<Scalar>(n_bits));
    if (!std::isfinite(raw)) return std::numeric_limits<Scalar>::infinity();
    const Scalar nearest = std::round(raw);
    return std::abs(raw - nearest) <= Scalar(1e-9) * raw ? nearest : std::floor(raw);
}

template <typename Scalar>
ConversionResult<Scalar> max_fidelity_majorization(const BasicDistribution<Scalar>& p,
                                                   const BasicDistribution<Scalar>& q,
                                                   MajorizationSolver solver) {
    if (solver == MajorizationSolver::ActiveSetEnumeration) return solve_by_enumeration(p, q);
    return solve_pool_adjacent(p, q);
}

template <typename Scalar>
ConversionResult<Scalar> max_fidelity_majorization_with_storage(const BasicDistribution<Scalar>& p,
                                                                const BasicDistribution<Scalar>& q,
                                                                double n_bits) {
    const Scalar capacity = storage_capacity<Scalar>(n_bits);
    if (std::isinf(capacity)) return max_fidelity_majorization(p, q);
    auto result = max_fidelity_majorization(condition_to_storage(p, capacity), q);

    Scalar top = 0, count = 0;
    for (const auto& l : q.levels()) {
        const Scalar take = std::min(l.mult, capacity - count);
        top += take * l.p;
        count += take;
        if (count >= capacity) break;
    }
    if (result.fidelity > std::sqrt(std::min(top, Scalar(1))) + Scalar(1e-12))
        throw Error("storage fidelity exceeds the top-mass bound");
    return result;
}

template <typename Scalar>
Scalar kkt_residual(const BasicDistribution<Scalar>& p, const BasicDistribution<Scalar>& q,
                    const ConversionResult<Scalar>& result) {
    const auto& x = result.witness;
    Scalar worst = std::abs(x.total_mass() - Scalar(1));
    worst = std::max(worst, std::abs(fidelity(x, q) - result.fidelity));

    Scalar cp = 0, cx = 0;
    Scalar prev_dual = -1;  // 1 / (2 sqrt(x/q)) on the previous segment
    Scalar prev_gap = 0;
    for (const auto& seg : aligned_segments<Scalar, 3>({&p, &q, &x})) {
        const Scalar pv = seg.value[0], qv = seg.value[1], xv = seg.value[2];
        if (qv == 0) {
            // Mass placed where q vanishes earns nothing.
            worst = std::max(worst, xv * seg.length);
        } else if (xv == 0) {
            // Only admissible once the prefix constraint has used up all mass.
            worst = std::max(worst, Scalar(1) - cp);
        } else {
            const Scalar dual = 1 / (2 * std::sqrt(xv / qv));
            if (prev_dual >= 0) {
                const Scalar multiplier = dual - prev_dual;
                worst = std::max(worst, -multiplier);
                worst = std::max(worst, std::abs(multiplier * prev_gap));
            }
            prev_dual = dual;
        }
        cp += pv * seg.length;
        cx += xv * seg.length;
        prev_gap = cx - cp;
        worst = std::max(worst, -prev_gap);
    }
    return worst;
}

double max_fidelity_deterministic(const Distribution& p, const Distribution& q, std::optional<double> n_bits) {
    if (p.support() > 9) throw SizeError("deterministic conversion: source support above 9");
    const auto pd = p.dense();
    std::size_t blocks = static_cast<std::size_t>(pd.size());
    blocks = static_cast<std::size_t>(std::min<double>(static_cast<double>(blocks), q.support()));
    if (n_bits) blocks = static_cast<std::size_t>(std::min<double>(static_cast<double>(blocks), storage_capacity<double>(*n_bits)));

    PartitionSearch search{std::vector<double>(pd.data(), pd.data() + pd.size()), top_atoms(q, blocks),
                           blocks, {}, 0.0};
    search.run(0);
    return search.best;
}

double max_fidelity_deterministic_by_maps(const Distribution& p, const Distribution& q) {
    const auto pd = p.dense(), qd = q.dense();
    const double maps = std::pow(static_cast<double>(qd.size()), static_cast<double>(pd.size()));
    if (maps > 1e6) throw SizeError("map enumeration: more than 10^6 maps");
    std::vector<Eigen::Index> w(pd.size(), 0);
    double best = 0;
    for (;;) {
        Eigen::VectorXd image = Eigen::VectorXd::Zero(qd.size());
        for (Eigen::Index i = 0; i < pd.size(); ++i) image[w[i]] += pd[i];
        best = std::max(best, (image.array() * qd.array()).sqrt().sum());
        Eigen::Index i = 0;
        while (i < pd.size() && ++w[i] == qd.size()) w[i++] = 0;
        if (i == pd.size()) break;
    }
    return best;
}

template <typename Scalar>
BasicDistribution<Scalar> iid_power(const BasicDistribution<Scalar>& base, std::int64_t n) {
    if (n < 1) throw DomainError("iid_power: n must be positive");
    if (base.support() > 64) throw SizeError("iid_power: base alphabet above 64 atoms");
    const auto atoms = base.dense();
    const auto k = static_cast<std::int64_t>(atoms.size());
    if (k == 1) return base;

    const long double log_count = std::lgamma(static_cast<long double>(n + k)) -
                                  std::lgamma(static_cast<long double>(n + 1)) -
                                  std::lgamma(static_cast<long double>(k));
    if (log_count > std::log(static_cast<long double>(kMaxCompositions)) + 1e-9L)
        throw SizeError("iid_power: composition count above budget");

    const long double log_min = std::log(static_cast<long double>(std::numeric_limits<Scalar>::min()));
    const long double log_max = std::log(static_cast<long double>(std::numeric_limits<Scalar>::max()));
    std::vector<long double> log_atom(k);
    for (std::int64_t a = 0; a < k; ++a) log_atom[a] = std::log(static_cast<long double>(atoms[a]));
    const long double log_n_fact = std::lgamma(static_cast<long double>(n + 1));

    std::vector<Level<Scalar>> levels;
    std::vector<std::int64_t> parts(k, 0);
    auto emit = [&] {
        long double log_p = 0, log_mult = log_n_fact;
        for (std::int64_t a = 0; a < k; ++a) {
            log_p += parts[a] * log_atom[a];
            log_mult -= std::lgamma(static_cast<long double>(parts[a] + 1));
        }
        if (log_p < log_min || log_mult > log_max)
            throw SizeError("iid_power: outside the exponent range of the scalar type");
        levels.push_back({static_cast<Scalar>(std::exp(log_p)), multinomial<Scalar>(n, parts, log_mult)});
    };
    // Compositions of n into k parts, last part determined.
    auto recurse = [&](auto&& self, std::int64_t a, std::int64_t left) -> void {
        if (a == k - 1) {
            parts[a] = left;
            emit();
            return;
        }
        for (std::int64_t c = left; c >= 0; --c) {
            parts[a] = c;
            self(self, a + 1, left - c);
        }
    };
    recurse(recurse, 0, n);
    return BasicDistribution<Scalar>::from_levels(std::move(levels), 1e-9);
}

template <typename Scalar>
std::int64_t max_convertible_number(const BasicDistribution<Scalar>& p,
                                    const BasicDistribution<Scalar>& q_base, double nu,
                                    std::optional<double> n_bits, ConversionMode mode) {
    if (!(nu > 0 && nu < 1)) throw DomainError("max_convertible_number: nu must lie in (0,1)");
    if (q_base.support() < 2) throw DomainError("max_convertible_number: target needs two atoms");

    auto reaches = [&](std::int64_t L) {
        const auto target = iid_power(q_base, L);
        double f;
        if (mode == ConversionMode::Deterministic) {
            f = max_fidelity_deterministic(p.template cast<double>(), target.template cast<double>(), n_bits);
        } else {
            f = static_cast<double>(n_bits ? max_fidelity_majorization_with_storage(p, target, *n_bits).fidelity
                                           : max_fidelity_majorization(p, target).fidelity);
        }
        return f >= nu - kMajorizationSlack;
    };

    if (!reaches(1)) return 0;
    std::int64_t good = 1, bad = 2;
    while (reaches(bad)) {
        good = bad;
        if (bad > (std::int64_t{1} << 40)) throw SizeError("max_convertible_number: no upper bracket");
        bad *= 2;
    }
    while (bad - good > 1) {
        const std::int64_t mid = good + (bad - good) / 2;
        (reaches(mid) ? good : bad) = mid;
    }
    return good;
}

#define GRNCONV_INSTANTIATE(S)                                                                          \
    template S fidelity(const BasicDistribution<S>&, const BasicDistribution<S>&);                      \
    template bool is_majorized(const BasicDistribution<S>&, const BasicDistribution<S>&, double);       \
    template BasicDistribution<S> condition_to_storage(const BasicDistribution<S>&, S);                 \
    template S storage_capacity<S>(double);                                                             \
    template ConversionResult<S> max_fidelity_majorization(const BasicDistribution<S>&,                 \
                                                           const BasicDistribution<S>&,                 \
                                                           MajorizationSolver);                         \
    template ConversionResult<S> max_fidelity_majorization_with_storage(                                \
        const BasicDistribution<S>&, const BasicDistribution<S>&, double);                              \
    template S kkt_residual(const BasicDistribution<S>&, const BasicDistribution<S>&,                   \
                            const ConversionResult<S>&);                                                \
    template BasicDistribution<S> iid_power(const BasicDistribution<S>&, std::int64_t);                 \
    template std::int64_t max_convertible_number(const BasicDistribution<S>&,                           \
                                                 const BasicDistribution<S>&, double,                   \
                                                 std::optional<double>, ConversionMode);

GRNCONV_INSTANTIATE(double)
GRNCONV_INSTANTIATE(long double)

#undef GRNCONV_INSTANTIATE

}  // namespace grnconv
