// SPDX-License-Identifier: Apache-2.0
//
// Order-deterministic accumulation helpers.

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace fdmimo {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Pairwise sum over a fixed index order.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

struct MeanStat {
    double mean = 0.0;
    double std_error = 0.0;  // standard error of the mean
    std::size_t n = 0;

    double ci95() const { return 1.96 * std_error; }
};

inline MeanStat mean_stat(std::span<const double> v) {
    MeanStat m;
    m.n = v.size();
    if (v.empty()) return m;
    m.mean = pairwise_sum(v) / static_cast<double>(v.size());
    if (v.size() > 1) {
        std::vector<double> dev(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) dev[i] = (v[i] - m.mean) * (v[i] - m.mean);
        const double var = pairwise_sum(dev) / static_cast<double>(v.size() - 1);
        m.std_error = std::sqrt(var / static_cast<double>(v.size()));
    }
    return m;
}

/// Ratio of means sum(num)/sum(den) with a delta-method standard error.
inline MeanStat ratio_stat(std::span<const double> num, std::span<const double> den) {
    MeanStat r;
    r.n = num.size();
    if (num.empty()) return r;
    const double mn = pairwise_sum(num) / static_cast<double>(num.size());
    const double md = pairwise_sum(den) / static_cast<double>(den.size());
    r.mean = mn / md;
    if (num.size() > 1) {
        std::vector<double> res(num.size());
        for (std::size_t i = 0; i < num.size(); ++i) {
            const double e = num[i] - r.mean * den[i];
            res[i] = e * e;
        }
        const double var = pairwise_sum(res) / static_cast<double>(num.size() - 1);
        r.std_error = std::sqrt(var / static_cast<double>(num.size())) / std::abs(md);
    }
    return r;
}

/// Difference R2 - R1 of two ratios of means measured on the same samples
/// (common random numbers), with a standard error from paired influences.
inline MeanStat paired_ratio_difference(std::span<const double> num1, std::span<const double> den1,
                                        std::span<const double> num2, std::span<const double> den2) {
    MeanStat d;
    const std::size_t n = num1.size();
    d.n = n;
    if (n == 0) return d;
    const double inv = 1.0 / static_cast<double>(n);
    const double a1 = pairwise_sum(num1) * inv, b1 = pairwise_sum(den1) * inv;
    const double a2 = pairwise_sum(num2) * inv, b2 = pairwise_sum(den2) * inv;
    const double r1 = a1 / b1, r2 = a2 / b2;
    d.mean = r2 - r1;
    if (n > 1) {
        std::vector<double> sq(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double e = (num2[i] - r2 * den2[i]) / b2 - (num1[i] - r1 * den1[i]) / b1;
            sq[i] = e * e;
        }
        d.std_error = std::sqrt(pairwise_sum(sq) / static_cast<double>(n - 1) * inv);
    }
    return d;
}

}  // namespace fdmimo
