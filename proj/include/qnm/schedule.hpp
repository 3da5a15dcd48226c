#pragma once
// Time-dependent controlled Hamiltonians H_QC(t). Natural units (hbar = 1),
// time in inverse energy.

#include <variant>
#include <vector>

#include "qnm/cmat.hpp"

namespace qnm {

// f(t) = alpha / (sqrt(2 pi) t1) * exp(-(t-center)^2 / (2 t1^2)),
// so the integrated action is exactly alpha.
struct GaussianPulse {
    double center = 0.0;
    double width = 1.0;   // t1
    double action = 0.0;  // alpha
    CMat axis;            // generator, e.g. sigma_z/2; H(t) = f(t) * axis
    double envelope(double t) const;
};

struct Kick {
    double time = 0.0;
    CMat generator;  // step unitary U = exp(-i * generator * tau)
};

class Schedule {
public:
    struct Constant { CMat h; };
    struct Kicked {
        std::vector<Kick> kicks;
        double tau = 1.0;
    };
    struct Pulses { std::vector<GaussianPulse> pulses; };
    struct BangBang {
        CMat h;
        double omega = 1.0;  // H(t) = h cos(omega t)
    };

    Schedule(Constant c, double t0, double t1);
    Schedule(Kicked k, double t0, double t1);
    Schedule(Pulses p, double t0, double t1);
    Schedule(BangBang b, double t0, double t1);

    static Schedule constant(CMat h, double t0, double t1);
    static Schedule kicked(std::vector<Kick> kicks, double tau, double t0, double t1);
    static Schedule gaussian_pulses(std::vector<GaussianPulse> pulses, double t0, double t1);
    static Schedule bangbang(CMat h, double omega, double t0, double t1);
    static Schedule free(std::size_t dim, double t0, double t1);  // H = 0

    // Hermitian H(t); rejects t outside the horizon. The kicked variant is a
    // delta train: between kicks this is the zero operator.
    CMat hamiltonian(double t) const;

    std::size_t dim() const { return dim_; }
    double t0() const { return t0_; }
    double t1() const { return t1_; }
    bool in_horizon(double t, double slack = 1e-9) const;

    bool is_kicked() const { return std::holds_alternative<Kicked>(v_); }
    bool is_constant() const { return std::holds_alternative<Constant>(v_); }
    const Kicked& kicked_data() const { return std::get<Kicked>(v_); }
    const Pulses* pulses_data() const { return std::get_if<Pulses>(&v_); }

    // Scale of ||H|| over the horizon (step-size heuristics).
    double norm_scale() const;

private:
    std::variant<Constant, Kicked, Pulses, BangBang> v_;
    double t0_, t1_;
    std::size_t dim_;
};

}  // namespace qnm
