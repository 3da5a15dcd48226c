#pragma once
// Parametric spectral densities R(omega) and their time-domain kernels.
//
// Convention: C(t) = <R(t) R(0)> = Int R(omega) e^{-i omega t} domega.
// KMS: R(-omega) = e^{-omega/T} R(omega).
// white(level): `level` is the delta-kernel weight, C(t) = level * delta(t),
// so the flat spectral density value is level / (2 pi).

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qnm/cmat.hpp"

namespace qnm {

enum class ReservoirKind { vacuum_cubic, lorentzian, white, tabulated };

struct KernelValue {
    bool is_delta = false;
    cplx value{};          // valid when !is_delta
    double delta_weight = 0.0;
};

class MemoryKernel {
public:
    enum class Kind { delta, analytic, numeric };

    static MemoryKernel delta(double weight);
    static MemoryKernel analytic(std::function<cplx(double)> f);
    static MemoryKernel numeric(std::function<cplx(double)> f);

    Kind kind() const { return kind_; }
    bool is_delta() const { return kind_ == Kind::delta; }
    double delta_weight() const { return weight_; }
    cplx operator()(double t) const;  // rejects pointwise queries of a delta kernel

private:
    Kind kind_ = Kind::analytic;
    double weight_ = 0.0;
    std::function<cplx(double)> f_;
};

class ReservoirModel {
public:
    static ReservoirModel vacuum_cubic(double r0, double temperature = 0.0,
                                       double omega_cutoff = 0.0 /* 0 = none */);
    static ReservoirModel lorentzian(double d, double tau_c);
    static ReservoirModel white(double level);
    static ReservoirModel tabulated(std::vector<double> omega, std::vector<double> value,
                                    std::optional<double> near_zero_exponent = std::nullopt);
    // Two-column text (omega, R) with '#' comments.
    static ReservoirModel load_tabulated(std::istream& in,
                                         std::optional<double> near_zero_exponent = std::nullopt);

    ReservoirKind kind() const { return kind_; }
    double spectral_density(double omega) const;
    // R(-omega)/R(omega); 1 at omega = 0 by symmetry; rejects zero denominators.
    double kms_ratio(double omega) const;
    // Int R(omega) e^{-i omega t} domega, regulated by eps where singular.
    KernelValue autocorrelation(double t, double eps) const;
    MemoryKernel kernel(double eps) const;
    // Int_{-e}^{e} R/omega^2 finite near 0 (evaluated analytically per variant).
    bool admissible() const;

    double r0() const { return r0_; }
    double temperature() const { return temperature_; }
    double level() const { return level_; }
    std::string name() const;

private:
    ReservoirKind kind_ = ReservoirKind::white;
    double r0_ = 1.0, temperature_ = 0.0, omega_cutoff_ = 0.0;  // vacuum_cubic
    double d_ = 1.0, tau_c_ = 1.0;                              // lorentzian
    double level_ = 1.0;                                        // white
    std::vector<double> tab_omega_, tab_value_;                 // tabulated
    std::optional<double> near_zero_exponent_;
};

}  // namespace qnm
