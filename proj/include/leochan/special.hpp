// SPDX-License-Identifier: Apache-2.0
//
// leochan: LEO satellite-to-ground propagation channel library
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

// Special functions used by the fading densities: modified Bessel I0 and the
// confluent hypergeometric function 1F1(a; b; z).

namespace leochan::special
{

namespace detail
{

// Power series sum (x^2/4)^k / (k!)^2, all terms positive.
inline double i0_series(double x)
{
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 1000; ++k)
    {
        term *= q / (double(k) * double(k));
        sum += term;
        if (term < 1e-17 * sum)
            break;
    }
    return sum;
}

// Hankel asymptotic expansion of e^{-x} I0(x) for large x.
inline double i0e_asymptotic(double x)
{
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k)
    {
        const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if (next > term)
            break;
        term = next;
        sum += term;
        if (term < 1e-17 * sum)
            break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

inline constexpr double i0_switch = 25.0;

} // namespace detail

/// Exponentially scaled I0: e^{-|x|} I0(x).
inline double bessel_i0e(double x)
{
    x = std::fabs(x);
    if (x <= detail::i0_switch)
        return detail::i0_series(x) * std::exp(-x);
    return detail::i0e_asymptotic(x);
}

/// Modified Bessel function of the first kind, order zero.
inline double bessel_i0(double x)
{
    x = std::fabs(x);
    if (x <= detail::i0_switch)
        return detail::i0_series(x);
    return std::exp(x) * detail::i0e_asymptotic(x);
}

/// log I0(x), finite for every finite x.
inline double log_bessel_i0(double x)
{
    x = std::fabs(x);
    if (x <= detail::i0_switch)
        return std::log(detail::i0_series(x));
    return x + std::log(detail::i0e_asymptotic(x));
}

/// Term budget for the 1F1 series. Grows with |z| because the terms peak near k ~ |z|.
inline long hyp1f1_term_cap(double a, double z)
{
    const double cap = std::fmax(500.0, 4.0 * (std::fabs(z) + std::fabs(a)) + 200.0);
    return cap > 200000.0 ? -1 : static_cast<long>(cap);
}

namespace detail
{

[[noreturn]] inline void hyp1f1_diverged(double a, double b, double z, long terms, double last)
{
    std::ostringstream os;
    os << "1F1(" << a << "; " << b << "; " << z << ") series did not converge after " << terms
       << " terms (last term " << last << ")";
    throw NumericError(os.str());
}

struct SignedLog
{
    double log_abs; // log|value|, -inf for zero
    int sign;       // -1, 0, +1
};

// Series sum_k (a)_k / (b)_k z^k / k! for z >= 0, tracked with a running log scale so
// that sums far beyond DBL_MAX stay representable. Handles sign changes when a < 0.
inline SignedLog hyp1f1_series(double a, double b, double z)
{
    const long cap = hyp1f1_term_cap(a, z);
    if (cap < 0)
        hyp1f1_diverged(a, b, z, 0, std::numeric_limits<double>::quiet_NaN());

    constexpr double rescale_at = 1e200;
    const double log_rescale = std::log(rescale_at);

    double log_scale = 0.0;
    double term = 1.0;
    double sum = 1.0;
    double peak = 1.0; // largest |partial sum| in the current scale
    for (long k = 0; k < cap; ++k)
    {
        const double ratio = (a + k) / (b + k) * z / (k + 1.0);
        term *= ratio;
        sum += term;
        if (term == 0.0)
            return {sum == 0.0 ? -std::numeric_limits<double>::infinity() : log_scale + std::log(std::fabs(sum)),
                    sum > 0 ? 1 : (sum < 0 ? -1 : 0)};
        peak = std::fmax(peak, std::fabs(sum));
        if (std::fabs(sum) > rescale_at || std::fabs(term) > rescale_at)
        {
            sum /= rescale_at;
            term /= rescale_at;
            peak /= rescale_at;
            log_scale += log_rescale;
        }
        const double next_ratio = std::fabs((a + k + 1) / (b + k + 1) * z / (k + 2.0));
        if (next_ratio < 1.0 && std::fabs(term) <= 1e-16 * peak)
        {
            if (sum == 0.0)
                return {-std::numeric_limits<double>::infinity(), 0};
            return {log_scale + std::log(std::fabs(sum)), sum > 0 ? 1 : -1};
        }
    }
    hyp1f1_diverged(a, b, z, cap, term);
}

} // namespace detail

/// log 1F1(a; b; z) for a >= 0 and b > 0. The value is positive for z >= 0 and for 0 <= a <= b;
/// other negative arguments may give a non-positive value, which throws.
/// Negative arguments use Kummer's transformation 1F1(a;b;z) = e^z 1F1(b-a;b;-z).
inline double log_hyp1f1(double a, double b, double z)
{
    if (!(b > 0.0) || a < 0.0)
        throw DomainError("log_hyp1f1 requires a >= 0 and b > 0");
    if (z >= 0.0)
        return detail::hyp1f1_series(a, b, z).log_abs;
    const auto s = detail::hyp1f1_series(b - a, b, -z);
    if (s.sign <= 0)
        throw NumericError("log_hyp1f1: non-positive value after Kummer transformation");
    return z + s.log_abs;
}

/// 1F1(a; b; z) as (log|value|, sign); survives magnitudes far outside double range.
inline detail::SignedLog hyp1f1_signed_log(double a, double b, double z)
{
    if (!(b > 0.0))
        throw DomainError("hyp1f1 requires b > 0");
    if (z >= 0.0)
        return detail::hyp1f1_series(a, b, z);
    auto s = detail::hyp1f1_series(b - a, b, -z);
    s.log_abs += z;
    return s;
}

/// Confluent hypergeometric function of the first kind 1F1(a; b; z), b > 0.
inline double hyp1f1(double a, double b, double z)
{
    const auto s = hyp1f1_signed_log(a, b, z);
    if (s.sign == 0)
        return 0.0;
    return s.sign * std::exp(s.log_abs);
}

} // namespace leochan::special
