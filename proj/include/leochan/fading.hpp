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
#include "geometry.hpp"
#include "mpc.hpp"
#include "special.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace leochan
{

struct RicianParams
{
    double k = 0.0;     // K-factor, linear
    double omega = 1.0; // mean power E[r^2]

    void validate() const
    {
        if (!(k >= 0.0) || !(omega > 0.0))
            throw DomainError("Rician parameters require K >= 0 and Omega > 0");
    }
};

struct ShadowedRicianParams
{
    double k = 0.0;     // K-factor, linear
    double m = 1.0;     // Nakagami shape of the LOS shadowing
    double omega = 1.0; // mean power E[r^2]

    void validate() const
    {
        if (!(k >= 0.0) || !(m > 0.0) || !(omega > 0.0))
            throw DomainError("shadowed Rician parameters require K >= 0, m > 0 and Omega > 0");
    }
};

using FadingParams = std::variant<RicianParams, ShadowedRicianParams>;

enum class Regime
{
    shadowed_rician,
    rician,
    deterministic_los
};

inline const char *to_string(Regime r)
{
    switch (r)
    {
    case Regime::shadowed_rician:
        return "shadowed-rician";
    case Regime::rician:
        return "rician";
    case Regime::deterministic_los:
        return "deterministic-los";
    }
    return "?";
}

struct FadingRegime
{
    Regime regime;
    double psi2_deg;
};

/// Near-horizon threshold asin(100 / d) for an arc radius d in km.
inline double default_psi2_deg(double arc_radius_km)
{
    if (!(arc_radius_km >= 100.0))
        throw ConfigError("default threshold asin(100/d) needs d >= 100 km");
    return rad2deg(std::asin(100.0 / arc_radius_km));
}

/// Single-path snapshots are deterministic regardless of elevation; otherwise the threshold
/// separates shadowed Rician (below) from Rician (at or above).
inline FadingRegime select_regime(const Snapshot &snap, ElevationAngle psi2)
{
    if (snap.mpcs.size() <= 1)
        return {Regime::deterministic_los, psi2.degrees()};
    if (snap.psi < psi2)
        return {Regime::shadowed_rician, psi2.degrees()};
    return {Regime::rician, psi2.degrees()};
}

// ---------------------------------------------------------------------------------------
// Densities

inline double rician_log_pdf(double r, const RicianParams &p)
{
    if (r <= 0.0)
        return -std::numeric_limits<double>::infinity();
    const double kp1 = p.k + 1.0;
    const double arg = 2.0 * r * std::sqrt(p.k * kp1 / p.omega);
    return std::log(2.0 * r * kp1 / p.omega) - p.k - kp1 * r * r / p.omega + special::log_bessel_i0(arg);
}

/// Rician amplitude density parameterised by K and Omega.
inline double rician_pdf(double r, const RicianParams &p)
{
    p.validate();
    if (r < 0.0)
        throw DomainError("rician_pdf: negative amplitude");
    if (r == 0.0)
        return 0.0;
    return std::exp(rician_log_pdf(r, p));
}

/// The shadowed-Rician expression exactly as printed: exponential factor independent of r,
/// Bessel I0 of the LOS term and 1F1 with a negative argument. Not a density in general: it
/// changes sign and its mass is not 1 (see shadowed_rician_printed_mass).
inline double shadowed_rician_printed(double r, const ShadowedRicianParams &p)
{
    p.validate();
    if (r < 0.0)
        throw DomainError("shadowed_rician_pdf: negative amplitude");
    if (r == 0.0)
        return 0.0;
    const double kp1 = p.k + 1.0;
    const double arg_i0 = 2.0 * r * std::sqrt(p.m * p.k / (p.omega * kp1));
    const double arg_f = -(p.k + p.m) / kp1 * r * r / p.omega;
    const auto f = special::hyp1f1_signed_log(p.m, 1.0, arg_f);
    if (f.sign == 0)
        return 0.0;
    const double log_abs =
        std::log(2.0 * r * kp1 / p.omega) - (p.k + p.m) / kp1 + special::log_bessel_i0(arg_i0) + f.log_abs;
    return f.sign * std::exp(log_abs);
}

/// Log of the Nakagami-m shadowed Rician density in (K, m, Omega) form:
///   (m/(m+K))^m 2r(K+1)/Omega exp(-(K+1)r^2/Omega) 1F1(m; 1; K(K+1)r^2 / (Omega(K+m))).
/// Analytically normalised; tends to the Rician density as m -> inf.
inline double shadowed_rician_log_pdf(double r, const ShadowedRicianParams &p)
{
    if (r <= 0.0)
        return -std::numeric_limits<double>::infinity();
    const double kp1 = p.k + 1.0;
    const double z = p.k * kp1 * r * r / (p.omega * (p.k + p.m));
    return p.m * std::log(p.m / (p.m + p.k)) + std::log(2.0 * r * kp1 / p.omega) - kp1 * r * r / p.omega +
           special::log_hyp1f1(p.m, 1.0, z);
}

namespace detail
{

// Amplitude beyond which the density mass is below ~1e-18: LOS power inflated to the far tail
// of its Gamma(m, 1/m) shadowing plus ~9.5 standard deviations of the diffuse part.
inline double amplitude_upper_bound(double k, double m, double omega)
{
    const double kp1 = k + 1.0;
    const double los_power = omega * k / kp1;
    const double g_max = std::isinf(m) ? 1.0 : 1.0 + 45.0 / m + 10.0 / std::sqrt(m);
    return std::sqrt(los_power * g_max) + std::sqrt(45.0 * omega / kp1);
}

// Fixed composite Gauss-Kronrod, no adaptive refinement.
template <class F> double integrate_0_to(F &&f, double upper, int pieces = 256)
{
    using boost::math::quadrature::gauss_kronrod;
    double total = 0.0;
    const double w = upper / pieces;
    for (int i = 0; i < pieces; ++i)
        total += gauss_kronrod<double, 61>::integrate(f, i * w, (i + 1) * w, 0);
    return total;
}

} // namespace detail

/// Mass of the printed expression over [0, inf). Empty when the integral does not settle
/// (the printed form diverges for non-integer m because 1F1(m;1;-x) decays only as x^-m).
inline std::optional<double> shadowed_rician_printed_mass(const ShadowedRicianParams &p)
{
    p.validate();
    auto f = [&](double r) { return shadowed_rician_printed(r, p); };
    const double upper = 2.0 * detail::amplitude_upper_bound(p.k, p.m, p.omega);
    const double near = detail::integrate_0_to(f, upper);
    const double tail = detail::integrate_0_to([&](double r) { return f(upper + r); }, upper);
    if (!std::isfinite(near) || !std::isfinite(tail))
        return std::nullopt;
    if (std::fabs(tail) > 1e-9 * std::fmax(1.0, std::fabs(near)))
        return std::nullopt;
    return near + tail;
}

enum class ShadowedRicianMode
{
    as_printed, // verbatim printed expression
    normalized  // canonical density divided by its quadrature mass
};

/// Shadowed-Rician density evaluator. The normalisation constant is computed once at
/// construction so repeated evaluation is cheap.
class ShadowedRicianPdf
{
  public:
    explicit ShadowedRicianPdf(const ShadowedRicianParams &p, ShadowedRicianMode mode = ShadowedRicianMode::normalized)
        : p_(p), mode_(mode)
    {
        p_.validate();
        if (mode_ == ShadowedRicianMode::normalized)
        {
            mass_ = detail::integrate_0_to([this](double r) { return std::exp(shadowed_rician_log_pdf(r, p_)); },
                                           detail::amplitude_upper_bound(p_.k, p_.m, p_.omega));
            if (!(mass_ > 0.0) || !std::isfinite(mass_))
                throw NumericError("shadowed Rician normalisation failed (mass " + std::to_string(mass_) + ")");
        }
    }

    double operator()(double r) const
    {
        if (r < 0.0)
            throw DomainError("shadowed_rician_pdf: negative amplitude");
        if (mode_ == ShadowedRicianMode::as_printed)
            return shadowed_rician_printed(r, p_);
        if (r == 0.0)
            return 0.0;
        return std::exp(shadowed_rician_log_pdf(r, p_)) / mass_;
    }

    /// Quadrature mass of the canonical density before rescaling (1 for normalized mode up to
    /// quadrature error; not computed for as_printed).
    double raw_mass() const { return mass_; }
    const ShadowedRicianParams &params() const { return p_; }
    ShadowedRicianMode mode() const { return mode_; }

  private:
    ShadowedRicianParams p_;
    ShadowedRicianMode mode_;
    double mass_ = 1.0;
};

inline double shadowed_rician_pdf(double r, const ShadowedRicianParams &p,
                                  ShadowedRicianMode mode = ShadowedRicianMode::normalized)
{
    return ShadowedRicianPdf(p, mode)(r);
}

// ---------------------------------------------------------------------------------------
// Sampling

/// i.i.d. Rician amplitudes. LOS phasor of power K Omega/(K+1) plus circular Gaussian diffuse part.
inline std::vector<double> sample(const RicianParams &p, std::size_t n, std::uint64_t seed)
{
    p.validate();
    std::mt19937_64 rng(seed);
    const double los = std::sqrt(p.omega * p.k / (p.k + 1.0));
    std::normal_distribution<double> diffuse(0.0, std::sqrt(p.omega / (2.0 * (p.k + 1.0))));
    std::vector<double> out(n);
    for (auto &r : out)
    {
        const double x = los + diffuse(rng);
        const double y = diffuse(rng);
        r = std::hypot(x, y);
    }
    return out;
}

/// i.i.d. shadowed Rician amplitudes: the LOS power is scaled by a unit-mean Gamma(m, 1/m)
/// variate (Nakagami-m amplitude shadowing).
inline std::vector<double> sample(const ShadowedRicianParams &p, std::size_t n, std::uint64_t seed)
{
    p.validate();
    std::mt19937_64 rng(seed);
    const double los_power = p.omega * p.k / (p.k + 1.0);
    std::normal_distribution<double> diffuse(0.0, std::sqrt(p.omega / (2.0 * (p.k + 1.0))));
    std::gamma_distribution<double> shadow(p.m, 1.0 / p.m);
    std::vector<double> out(n);
    for (auto &r : out)
    {
        const double x = std::sqrt(los_power * shadow(rng)) + diffuse(rng);
        const double y = diffuse(rng);
        r = std::hypot(x, y);
    }
    return out;
}

inline std::vector<double> sample(const FadingParams &p, std::size_t n, std::uint64_t seed)
{
    return std::visit([&](const auto &q) { return sample(q, n, seed); }, p);
}

// ---------------------------------------------------------------------------------------
// Fitting

namespace detail
{

struct SampleMoments
{
    double power; // E[r^2]
    double gamma; // Var(r^2) / E[r^2]^2
};

inline SampleMoments moments(std::span<const double> samples)
{
    if (samples.size() < 100)
        throw DomainError("fit requires at least 100 samples, got " + std::to_string(samples.size()));
    double s2 = 0.0;
    double s4 = 0.0;
    for (double r : samples)
    {
        if (!(r >= 0.0) || !std::isfinite(r))
            throw DomainError("fit samples must be finite and non-negative");
        s2 += r * r;
        s4 += r * r * r * r;
    }
    const double n = double(samples.size());
    const double power = s2 / n;
    const double var = s4 / n - power * power;
    const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
    if (power <= 0.0 || *hi - *lo <= 1e-12 * *hi)
        throw NumericError("fit: degenerate samples (zero variance)");
    return {power, std::fmax(var, 0.0) / (power * power)};
}

// Solves (1 + 2K) / (1 + K)^2 = gamma for K (moment estimator of the Rician K-factor).
inline double rician_k_from_gamma(double gamma)
{
    if (gamma >= 1.0)
        return 0.0;
    const double s = std::sqrt(1.0 - gamma);
    return (1.0 - gamma + s) / gamma;
}

template <class LogPdf> double neg_log_likelihood(std::span<const double> samples, LogPdf &&log_pdf)
{
    double nll = 0.0;
    for (double r : samples)
        nll -= log_pdf(r);
    return nll;
}

inline constexpr int brent_bits = 40;

// Minimises f over log1p(K) in [0, log1p(k_max)]; prefers K = 0 on ties.
template <class F> double minimize_over_k(F &&f, double k_max)
{
    auto g = [&](double u) { return f(std::expm1(u)); };
    const auto [u, val] = boost::math::tools::brent_find_minima(g, 0.0, std::log1p(k_max), brent_bits);
    const double at_zero = f(0.0);
    if (at_zero <= val + 1e-12 * std::fabs(val))
        return 0.0;
    return std::expm1(u);
}

} // namespace detail

/// Maximum-likelihood Rician fit. Omega is the sample mean power; K maximises the likelihood
/// within a bracket set from the moment estimate.
inline RicianParams fit_rician(std::span<const double> samples)
{
    const auto mom = detail::moments(samples);
    const double k0 = detail::rician_k_from_gamma(mom.gamma);
    const double k_max = std::fmax(10.0, 4.0 * k0 + 10.0);
    RicianParams p{0.0, mom.power};
    p.k = detail::minimize_over_k(
        [&](double k) {
            return detail::neg_log_likelihood(samples, [&](double r) { return rician_log_pdf(r, {k, mom.power}); });
        },
        k_max);
    return p;
}

/// Maximum-likelihood shadowed Rician fit. Omega is the sample mean power; K is found by
/// Brent search on the profile likelihood, maximised over m for every trial K.
inline ShadowedRicianParams fit_shadowed_rician(std::span<const double> samples)
{
    const auto mom = detail::moments(samples);
    const double k0 = detail::rician_k_from_gamma(mom.gamma);
    auto nll = [&](double k, double m) {
        return detail::neg_log_likelihood(samples,
                                          [&](double r) { return shadowed_rician_log_pdf(r, {k, m, mom.power}); });
    };
    auto best_m = [&](double k) {
        return boost::math::tools::brent_find_minima([&](double log_m) { return nll(k, std::exp(log_m)); },
                                                     std::log(0.05), std::log(1000.0), detail::brent_bits / 2);
    };
    const double k_max = std::fmax(20.0, 8.0 * k0 + 20.0);
    const double k = detail::minimize_over_k([&](double kk) { return best_m(kk).second; }, k_max);
    return {k, std::exp(best_m(k).first), mom.power};
}

/// Fits the distribution belonging to `regime`.
inline FadingParams fit(std::span<const double> samples, const FadingRegime &regime)
{
    switch (regime.regime)
    {
    case Regime::rician:
        return fit_rician(samples);
    case Regime::shadowed_rician:
        return fit_shadowed_rician(samples);
    case Regime::deterministic_los:
        break;
    }
    throw NumericError("fit: the deterministic single-path regime has no fading distribution");
}

/// Small-scale envelope realisations of a snapshot: every NLOS ray gets an independent uniform
/// phase per draw. In the shadowed regime the LOS amplitude is additionally scaled by a
/// unit-power Nakagami-`los_shadow_m` variate. Deterministic regime returns the constant LOS level.
inline std::vector<double> envelope_samples(const Snapshot &snap, Regime regime, std::size_t n, std::uint64_t seed,
                                            double los_shadow_m = 2.0)
{
    if (snap.mpcs.empty())
        throw InputError("envelope_samples: empty snapshot");
    if (!(los_shadow_m > 0.0))
        throw DomainError("envelope_samples: shadowing shape must be positive");
    const auto los = los_index(snap);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::gamma_distribution<double> shadow(los_shadow_m, 1.0 / los_shadow_m);
    std::vector<double> out(n);
    for (auto &r : out)
    {
        std::complex<double> sum{0.0, 0.0};
        for (std::size_t i = 0; i < snap.mpcs.size(); ++i)
        {
            const Mpc &m = snap.mpcs[i];
            if (los && i == *los)
            {
                double a = m.amplitude;
                if (regime == Regime::shadowed_rician)
                    a *= std::sqrt(shadow(rng));
                sum += std::polar(a, m.phase_rad);
            }
            else
            {
                sum += std::polar(m.amplitude, phase(rng));
            }
        }
        r = std::abs(sum);
    }
    return out;
}

/// Fits after rescaling the samples to unit mean power; Omega is reported in the input scale.
inline FadingParams fit_scaled(std::span<const double> samples, const FadingRegime &regime)
{
    double p = 0.0;
    for (double r : samples)
        p += r * r;
    p /= double(samples.empty() ? 1 : samples.size());
    if (!(p > 0.0))
        throw NumericError("fit: samples carry no power");
    const double scale = std::sqrt(p);
    std::vector<double> unit(samples.begin(), samples.end());
    for (auto &r : unit)
        r /= scale;
    auto fitted = fit(unit, regime);
    std::visit([&](auto &q) { q.omega *= p; }, fitted);
    return fitted;
}

} // namespace leochan
