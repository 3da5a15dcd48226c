#pragma once
// The second-order completely positive error map Phi(t,s), its correction
// A = Phi*(1), reduced-state evolution, fidelity, the Markovian-limit map
// and the dephasing/dissipation split.
//
// Frequency pairing: Phi rho = Sum_ab Int domega R_ab(omega)
// Yhat_b(omega) rho Yhat_a(omega)^dag with Yhat(omega) = Int S(u,s)
// e^{+i omega u} du, i.e. the spectral weight at omega feeds the coupling
// component oscillating as e^{-i omega u}. This is the pairing under which a
// T=0 bath produces pure decay (no upward channels) and the golden rule holds.

#include <optional>
#include <iosfwd>

#include "qnm/oracle.hpp"
#include "qnm/propagator.hpp"
#include "qnm/reservoir.hpp"
#include "qnm/state.hpp"

namespace qnm {

struct Couplings {
    std::vector<CMat> ops;                  // S_alpha, coupling constant folded in
    std::vector<ReservoirModel> baths;      // one per op (diagonal R_ab)
    std::optional<CMat> mixing;             // PSD M_ab; requires a single shared bath
    double lambda = 1.0;                    // metadata for oracle comparisons

    static Couplings single(CMat s, ReservoirModel bath, double lambda = 1.0);
    static Couplings diagonal(std::vector<CMat> ops, std::vector<ReservoirModel> baths);
    static Couplings mixed(std::vector<CMat> ops, ReservoirModel shared, CMat m);
};

struct FrequencyQuadrature {
    double omega_max = 0.0;      // 0: 10 * max(bohr, 1/(t-s))
    double peak_halfwidth = 0.0; // 0: 30/(t-s)
    int peak_panels = 24;
    int filler_panels = 24;
    int gl_order = 12;
    double time_dt = 0.0;        // explicit node spacing; 0 = from aliasing guard
    double adiabatic_eps = 0.0;  // optional switching window e^{-eps|u-mid|}
};

namespace detail {
struct DiagonalChannel {
    CMat op;
    ReservoirModel bath;
    double scale = 1.0;  // multiplies R(omega)
};
// Diagonal channels; PSD-checks and diagonalizes the mixing matrix if present.
std::vector<DiagonalChannel> to_channels(const Couplings& c);
}

struct MarkovChannel {
    double omega_k;
    double weight;   // 2 pi tau lambda_c R(omega_k)
    CMat jump;       // S_c(omega_k)^dag
};

struct MapDiagnostics {
    bool breakdown = false;       // ||Phi||-scale > 0.5: second order unreliable
    double phi_scale = 0.0;       // tr A / d
    bool markov_window_short = false;
    std::vector<std::string> warnings;
};

class SecondOrderMap {
public:
    SecondOrderMap() = default;
    SecondOrderMap(std::size_t dim, double s, double t, double lambda);

    std::size_t dim() const { return dim_; }
    double window_start() const { return s_; }
    double window_end() const { return t_; }
    double lambda() const { return lambda_; }

    const CMat& choi() const { return choi_; }
    // Accumulate w * (B rho A^dag) into the map.
    void add_term(const CMat& b, const CMat& a, cplx w);
    void add_hermitian_term(const CMat& b, double w);  // B rho B^dag
    void finalize();  // hermitize Choi, compute correction + diagnostics

    CMat apply(const CMat& rho) const;   // Phi(rho)
    const CMat& correction() const { return a_; }  // A = Phi*(1)
    double min_choi_eig() const;
    std::vector<std::pair<double, CMat>> kraus() const;

    const std::vector<MarkovChannel>& channels() const { return channels_; }
    bool has_channels() const { return !channels_.empty(); }
    std::vector<MarkovChannel>& mutable_channels() { return channels_; }

    MapDiagnostics& diag() { return diag_; }
    const MapDiagnostics& diag() const { return diag_; }

    // Two-column text export: flat index, re, im.
    void save_choi(std::ostream& out) const;

private:
    std::size_t dim_ = 0;
    double s_ = 0.0, t_ = 0.0, lambda_ = 1.0;
    CMat choi_, a_;
    std::vector<MarkovChannel> channels_;
    MapDiagnostics diag_;
};

// Full frequency-domain map over [s, t]; white baths use the exact
// time-domain form.
SecondOrderMap error_map(const Couplings& c, const Propagator& p, double s, double t,
                         const FrequencyQuadrature& q = {});

// Same map for a discretized reservoir (finite mode sum; no omega-grid error).
SecondOrderMap error_map_discrete(const CMat& s_op, const DiscreteReservoir& res, double lambda,
                                  const Propagator& p, double s, double t, double time_dt = 0.0);

// rho(t) = U (rho - 1/2{A, rho} + Phi rho) U^dag. Negative eigenvalues beyond
// the lambda^4-scale tolerance are flagged in the map diagnostics.
State evolve_second_order(const SecondOrderMap& map, const Propagator& p, const State& rho0,
                          MapDiagnostics* diag_out = nullptr);

// F = <psi_t| rho_t |psi_t>; equal to the interaction-picture form.
double map_fidelity(const CVec& psi0, const SecondOrderMap& map, const Propagator& p);
double map_fidelity_interaction(const CVec& psi0, const SecondOrderMap& map);

// Markovian transition map for static H over a window tau: channels at Bohr
// frequencies with weights 2 pi tau R(omega_k), jump S(omega_k)^dag.
SecondOrderMap markovian_map(const CMat& h, const Couplings& c, double tau);

// Pure-dephasing (omega_k = 0) part and dissipative remainder; parts sum to
// the whole map. Requires a map with frequency buckets (markovian_map output).
std::pair<SecondOrderMap, SecondOrderMap> split_dephasing_dissipation(const SecondOrderMap& map);

}  // namespace qnm
