#include "qnm/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qnm/errors.hpp"

namespace qnm {

double GaussianPulse::envelope(double t) const {
    const double u = (t - center) / width;
    return action / (std::sqrt(2.0 * std::numbers::pi) * width) * std::exp(-0.5 * u * u);
}

namespace {
std::size_t variant_dim(const std::variant<Schedule::Constant, Schedule::Kicked,
                                           Schedule::Pulses, Schedule::BangBang>& v) {
    if (auto* c = std::get_if<Schedule::Constant>(&v)) return c->h.rows();
    if (auto* k = std::get_if<Schedule::Kicked>(&v))
        return k->kicks.empty() ? 0 : k->kicks.front().generator.rows();
    if (auto* p = std::get_if<Schedule::Pulses>(&v))
        return p->pulses.empty() ? 0 : p->pulses.front().axis.rows();
    return std::get<Schedule::BangBang>(v).h.rows();
}
}  // namespace

Schedule::Schedule(Constant c, double t0, double t1) : v_(std::move(c)), t0_(t0), t1_(t1) {
    dim_ = variant_dim(v_);
}
Schedule::Schedule(Kicked k, double t0, double t1) : v_(std::move(k)), t0_(t0), t1_(t1) {
    dim_ = variant_dim(v_);
}
Schedule::Schedule(Pulses p, double t0, double t1) : v_(std::move(p)), t0_(t0), t1_(t1) {
    dim_ = variant_dim(v_);
}
Schedule::Schedule(BangBang b, double t0, double t1) : v_(std::move(b)), t0_(t0), t1_(t1) {
    dim_ = variant_dim(v_);
}

Schedule Schedule::constant(CMat h, double t0, double t1) { return Schedule(Constant{std::move(h)}, t0, t1); }
Schedule Schedule::kicked(std::vector<Kick> kicks, double tau, double t0, double t1) {
    Kicked k{std::move(kicks), tau};
    std::sort(k.kicks.begin(), k.kicks.end(), [](const Kick& a, const Kick& b) { return a.time < b.time; });
    return Schedule(std::move(k), t0, t1);
}
Schedule Schedule::gaussian_pulses(std::vector<GaussianPulse> pulses, double t0, double t1) {
    return Schedule(Pulses{std::move(pulses)}, t0, t1);
}
Schedule Schedule::bangbang(CMat h, double omega, double t0, double t1) {
    return Schedule(BangBang{std::move(h), omega}, t0, t1);
}
Schedule Schedule::free(std::size_t dim, double t0, double t1) {
    return constant(CMat::zero(dim, dim), t0, t1);
}

bool Schedule::in_horizon(double t, double slack) const {
    return t >= t0_ - slack && t <= t1_ + slack;
}

CMat Schedule::hamiltonian(double t) const {
    if (!in_horizon(t))
        throw numeric_rejection("schedule: t outside horizon [" + std::to_string(t0_) + ", " +
                                std::to_string(t1_) + "]");
    if (auto* c = std::get_if<Constant>(&v_)) return c->h;
    if (std::get_if<Kicked>(&v_)) return CMat::zero(dim_, dim_);
    if (auto* p = std::get_if<Pulses>(&v_)) {
        CMat h = CMat::zero(dim_, dim_);
        for (const auto& pulse : p->pulses) {
            const double f = pulse.envelope(t);
            kernels::caxpy(h.data(), f, pulse.axis.data(), h.size());
        }
        return h;
    }
    const auto& b = std::get<BangBang>(v_);
    CMat h = b.h;
    h *= std::cos(b.omega * t);
    return h;
}

double Schedule::norm_scale() const {
    if (auto* c = std::get_if<Constant>(&v_)) return c->h.fro_norm();
    if (auto* k = std::get_if<Kicked>(&v_)) {
        double m = 0.0;
        for (const auto& kick : k->kicks) m = std::max(m, kick.generator.fro_norm());
        return m;
    }
    if (auto* p = std::get_if<Pulses>(&v_)) {
        double m = 0.0;
        for (const auto& pulse : p->pulses) m = std::max(m, pulse.envelope(pulse.center) * pulse.axis.fro_norm());
        return m;
    }
    return std::get<BangBang>(v_).h.fro_norm();
}

}  // namespace qnm
