#include "qnm/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <sstream>

#include "qnm/errors.hpp"
#include "qnm/quadrature.hpp"

namespace qnm {

MemoryKernel MemoryKernel::delta(double weight) {
    MemoryKernel k;
    k.kind_ = Kind::delta;
    k.weight_ = weight;
    return k;
}

MemoryKernel MemoryKernel::analytic(std::function<cplx(double)> f) {
    MemoryKernel k;
    k.kind_ = Kind::analytic;
    k.f_ = std::move(f);
    return k;
}

MemoryKernel MemoryKernel::numeric(std::function<cplx(double)> f) {
    MemoryKernel k;
    k.kind_ = Kind::numeric;
    k.f_ = std::move(f);
    return k;
}

cplx MemoryKernel::operator()(double t) const {
    if (is_delta())
        throw numeric_rejection("memory kernel: pointwise query of a delta kernel");
    return f_(t);
}

ReservoirModel ReservoirModel::vacuum_cubic(double r0, double temperature, double omega_cutoff) {
    ReservoirModel m;
    m.kind_ = ReservoirKind::vacuum_cubic;
    m.r0_ = r0;
    m.temperature_ = temperature;
    m.omega_cutoff_ = omega_cutoff;
    return m;
}

ReservoirModel ReservoirModel::lorentzian(double d, double tau_c) {
    ReservoirModel m;
    m.kind_ = ReservoirKind::lorentzian;
    m.d_ = d;
    m.tau_c_ = tau_c;
    return m;
}

ReservoirModel ReservoirModel::white(double level) {
    ReservoirModel m;
    m.kind_ = ReservoirKind::white;
    m.level_ = level;
    return m;
}

ReservoirModel ReservoirModel::tabulated(std::vector<double> omega, std::vector<double> value,
                                         std::optional<double> near_zero_exponent) {
    if (omega.size() != value.size() || omega.size() < 2)
        throw numeric_rejection("tabulated reservoir: need >= 2 grid points");
    for (std::size_t i = 1; i < omega.size(); ++i)
        if (omega[i] <= omega[i - 1])
            throw numeric_rejection("tabulated reservoir: grid must be strictly increasing");
    for (double v : value)
        if (v < 0.0) throw numeric_rejection("tabulated reservoir: negative density value");
    ReservoirModel m;
    m.kind_ = ReservoirKind::tabulated;
    m.tab_omega_ = std::move(omega);
    m.tab_value_ = std::move(value);
    m.near_zero_exponent_ = near_zero_exponent;
    return m;
}

ReservoirModel ReservoirModel::load_tabulated(std::istream& in,
                                              std::optional<double> near_zero_exponent) {
    std::vector<double> w, v;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double a, b;
        if (ls >> a >> b) {
            w.push_back(a);
            v.push_back(b);
        }
    }
    if (w.empty()) throw io_error("tabulated reservoir: no data rows");
    return tabulated(std::move(w), std::move(v), near_zero_exponent);
}

namespace {
double bose(double omega, double t) { return 1.0 / std::expm1(omega / t); }
}

double ReservoirModel::spectral_density(double omega) const {
    switch (kind_) {
        case ReservoirKind::vacuum_cubic: {
            const double cutoff =
                omega_cutoff_ > 0.0 ? std::exp(-std::abs(omega) / omega_cutoff_) : 1.0;
            if (temperature_ <= 0.0)
                return omega >= 0.0 ? r0_ * omega * omega * omega * cutoff : 0.0;
            if (omega == 0.0) return 0.0;
            const double w3 = std::abs(omega) * omega * omega;  // |omega|^3
            if (omega > 0.0) return r0_ * w3 * (1.0 + bose(omega, temperature_)) * cutoff;
            return r0_ * w3 * bose(-omega, temperature_) * cutoff;
        }
        case ReservoirKind::lorentzian:
            return d_ / (omega * omega + 1.0 / (tau_c_ * tau_c_));
        case ReservoirKind::white:
            return level_ / (2.0 * std::numbers::pi);
        case ReservoirKind::tabulated: {
            if (omega < tab_omega_.front() || omega > tab_omega_.back())
                throw numeric_rejection("tabulated reservoir: omega outside grid");
            const auto it = std::upper_bound(tab_omega_.begin(), tab_omega_.end(), omega);
            const std::size_t hi = std::min<std::size_t>(
                tab_omega_.size() - 1, static_cast<std::size_t>(it - tab_omega_.begin()));
            const std::size_t lo = hi == 0 ? 0 : hi - 1;
            if (hi == lo) return tab_value_[lo];
            const double f = (omega - tab_omega_[lo]) / (tab_omega_[hi] - tab_omega_[lo]);
            return tab_value_[lo] + f * (tab_value_[hi] - tab_value_[lo]);
        }
    }
    return 0.0;
}

double ReservoirModel::kms_ratio(double omega) const {
    if (omega == 0.0) return 1.0;
    const double denom = spectral_density(omega);
    if (denom <= 0.0)
        throw numeric_rejection("kms_ratio: R(omega) = 0 in denominator");
    return spectral_density(-omega) / denom;
}

KernelValue ReservoirModel::autocorrelation(double t, double eps) const {
    KernelValue kv;
    switch (kind_) {
        case ReservoirKind::white:
            kv.is_delta = true;
            kv.delta_weight = level_;
            return kv;
        case ReservoirKind::lorentzian:
            kv.value = std::numbers::pi * d_ * tau_c_ * std::exp(-std::abs(t) / tau_c_);
            return kv;
        case ReservoirKind::vacuum_cubic: {
            if (temperature_ <= 0.0) {
                if (eps <= 0.0 && omega_cutoff_ <= 0.0)
                    throw numeric_rejection("vacuum kernel: eps > 0 required (singular at t=0)");
                // Int_0^inf R0 w^3 e^{-(eps' + i t) w} dw = 6 R0 / (eps' + i t)^4
                const double ep = eps + (omega_cutoff_ > 0.0 ? 1.0 / omega_cutoff_ : 0.0);
                const cplx z(ep, t);
                const cplx z2 = z * z;
                kv.value = 6.0 * r0_ / (z2 * z2);
                return kv;
            }
            // Thermal: regulated quadrature on both half-axes.
            const double wmax = 30.0 * std::max({1.0 / std::max(eps, 1e-6), temperature_, 1.0});
            const QuadGrid g = panels_uniform(-wmax, wmax, 512, 8);
            cplx s{};
            for (std::size_t i = 0; i < g.size(); ++i) {
                const double w = g.x[i];
                s += g.w[i] * spectral_density(w) * std::exp(-eps * std::abs(w)) *
                     std::exp(cplx(0.0, -w * t));
            }
            kv.value = s;
            return kv;
        }
        case ReservoirKind::tabulated: {
            const QuadGrid g =
                panels_uniform(tab_omega_.front(), tab_omega_.back(),
                               std::max<int>(64, static_cast<int>(tab_omega_.size())), 6);
            cplx s{};
            for (std::size_t i = 0; i < g.size(); ++i)
                s += g.w[i] * spectral_density(g.x[i]) * std::exp(cplx(0.0, -g.x[i] * t));
            kv.value = s;
            return kv;
        }
    }
    return kv;
}

MemoryKernel ReservoirModel::kernel(double eps) const {
    if (kind_ == ReservoirKind::white) return MemoryKernel::delta(level_);
    ReservoirModel copy = *this;
    auto f = [copy, eps](double t) { return copy.autocorrelation(t, eps).value; };
    if (kind_ == ReservoirKind::lorentzian ||
        (kind_ == ReservoirKind::vacuum_cubic && temperature_ <= 0.0))
        return MemoryKernel::analytic(f);
    return MemoryKernel::numeric(f);
}

bool ReservoirModel::admissible() const {
    switch (kind_) {
        case ReservoirKind::vacuum_cubic: return true;   // R ~ omega^3 near 0
        case ReservoirKind::lorentzian: return false;    // R(0) = D tau_c^2 > 0
        case ReservoirKind::white: return false;
        case ReservoirKind::tabulated:
            if (!near_zero_exponent_)
                throw numeric_rejection(
                    "tabulated reservoir: near-zero behavior undeclared; cannot decide "
                    "admissibility");
            return *near_zero_exponent_ > 1.0;
    }
    return false;
}

std::string ReservoirModel::name() const {
    switch (kind_) {
        case ReservoirKind::vacuum_cubic: return "vacuum_cubic";
        case ReservoirKind::lorentzian: return "lorentzian";
        case ReservoirKind::white: return "white";
        case ReservoirKind::tabulated: return "tabulated";
    }
    return "?";
}

}  // namespace qnm
