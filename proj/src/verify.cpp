// verify.cpp

#include "qmaps/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "qmaps/channels.hpp"
#include "qmaps/dynamics.hpp"
#include "qmaps/generators.hpp"
#include "qmaps/linalg.hpp"
#include "qmaps/random.hpp"
#include "qmaps/regions.hpp"

namespace qmaps {

namespace {

class Battery {
public:
    explicit Battery(std::string module, std::vector<CheckResult>& out) : module_(std::move(module)), out_(out) {}

    // Records `value <= bound` as a check.
    void at_most(const std::string& name, double value, double bound) {
        std::ostringstream os;
        os.precision(3);
        os << value << " <= " << bound;
        out_.push_back({module_, name, value <= bound, os.str()});
    }

    void holds(const std::string& name, bool ok, const std::string& detail = {}) {
        out_.push_back({module_, name, ok, detail});
    }

private:
    std::string module_;
    std::vector<CheckResult>& out_;
};

std::string sci(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void verify_linalg(const VerifyOptions& opt, std::vector<CheckResult>& out) {
    Battery b("linalg", out);
    double recon = 0.0;
    for (int d = 2; d <= 8; ++d) {
        for (std::uint64_t k = 0; k < 50; ++k) {
            auto rng = sample_engine(opt.seed, Stream::Generic, static_cast<std::uint64_t>(d) * 1000 + k);
            const ComplexMatrix a = random_hermitian(d, rng);
            const HermitianEigen e = eig_hermitian(a);
            const ComplexMatrix back = e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
            recon = std::max(recon, (back - a).norm() / a.norm());
        }
    }
    b.at_most("eig_hermitian reconstruction (relative)", recon, 1e-10);

    double involution = 0.0;
    double dagger = 0.0;
    for (std::uint64_t k = 0; k < 1000; ++k) {
        auto rng = sample_engine(opt.seed, Stream::Ginibre, k);
        const int d = 2 + static_cast<int>(k % 3);
        const ComplexMatrix m = ginibre(d * d, rng);
        for (int sub : {1, 2}) {
            involution = std::max(involution, max_abs(partial_transpose(partial_transpose(m, d, sub), d, sub) - m));
            dagger = std::max(dagger,
                              max_abs(partial_transpose(m.adjoint(), d, sub) - partial_transpose(m, d, sub).adjoint()));
        }
    }
    b.at_most("partial_transpose is an involution", involution, 0.0);
    b.at_most("partial_transpose commutes with adjoint", dagger, 0.0);

    double roundtrip = 0.0;
    for (int d = 2; d <= 8; ++d) {
        auto rng = sample_engine(opt.seed, Stream::Ginibre, 5000 + static_cast<std::uint64_t>(d));
        const ComplexMatrix a = ginibre(d, rng);
        roundtrip = std::max(roundtrip, max_abs(unvec(vec(a), d) - a));
        const ComplexVector v = gaussian_vector(d * d, rng);
        roundtrip = std::max(roundtrip, (vec(unvec(v, d)) - v).cwiseAbs().maxCoeff());
    }
    b.at_most("vec / unvec are inverse", roundtrip, 0.0);
}

void verify_channels(const VerifyOptions& opt, std::vector<CheckResult>& out) {
    Battery b("channels", out);
    bool tp_unital = true;
    for (int d = 2; d <= 6; ++d) {
        for (double alpha = -0.5; alpha <= 2.0; alpha += 0.25) {
            for (double beta = -1.0; beta <= 1.5; beta += 0.25) {
                const SuperMap m = build_phi_family({d, alpha, beta});
                tp_unital = tp_unital && m.is_trace_preserving(1e-10) && m.is_unital(1e-10);
            }
        }
    }
    b.holds("family is trace preserving and unital", tp_unital);

    double reshuffle = 0.0;
    for (std::uint64_t k = 0; k < 500; ++k) {
        auto rng = sample_engine(opt.seed, Stream::Ginibre, 10000 + k);
        const int d = 2 + static_cast<int>(k % 4);
        const ComplexMatrix t = ginibre(d * d, rng);
        reshuffle = std::max(reshuffle, max_abs(transfer_from_choi(choi_from_transfer(t, d), d) - t));
    }
    b.at_most("Choi reshuffle round trip", reshuffle, 1e-12);

    // Random CP maps (Choi = G G^dag), their non-CP partial transposes, and family points.
    bool adjoint_ok = true;
    std::size_t tested = 0;
    for (std::uint64_t k = 0; k < 200; ++k) {
        auto rng = sample_engine(opt.seed, Stream::Ginibre, 20000 + k);
        const int d = 2 + static_cast<int>(k % 3);
        const ComplexMatrix g = ginibre(d * d, rng);
        ComplexMatrix choi = g * g.adjoint();
        if (k % 2 == 1) {
            choi = partial_transpose(choi, d, 2);
        }
        const SuperMap m = SuperMap::from_choi(d, choi);
        adjoint_ok = adjoint_ok && (is_psd(m.choi()) == is_psd(hs_adjoint(m).choi()));
        ++tested;
    }
    for (int d = 2; d <= 5; ++d) {
        for (double alpha = 0.0; alpha <= 1.6; alpha += 0.2) {
            for (double beta = -0.8; beta <= 1.0; beta += 0.2) {
                const SuperMap m = build_phi_family({d, alpha, beta});
                adjoint_ok = adjoint_ok && (is_psd(m.choi()) == is_psd(hs_adjoint(m).choi()));
                ++tested;
            }
        }
    }
    b.holds("CP(m) <=> CP(adjoint of m)", adjoint_ok, std::to_string(tested) + " maps");
}

void verify_generators(const VerifyOptions& opt, std::vector<CheckResult>& out) {
    Battery b("generators", out);
    const double nus[] = {-1.5, -1.0, -0.5, 0.0, 0.7};
    double trace = 0.0;
    double spectrum = 0.0;
    for (int d = 2; d <= 6; ++d) {
        std::vector<double> h;
        for (int k = 0; k < d; ++k) {
            h.push_back(0.25 * k - 0.05 * k * k);
        }
        for (double nu : nus) {
            const GenParams p{d, 0.8, nu, h};
            const SuperMap gen = build_generator(p);
            for (std::uint64_t k = 0; k < 200; ++k) {
                auto rng = sample_engine(opt.seed, Stream::Ginibre, 30000 + k);
                const ComplexMatrix x = ginibre(d, rng);
                trace = std::max(trace, std::abs(gen(x).trace()));
            }
            spectrum = std::max(spectrum, spectrum_mismatch(closed_form_spectrum(p), eig_general(gen.transfer())));
        }
    }
    b.at_most("trace annihilation |Tr L(X)|", trace, 1e-10);
    b.at_most("spectrum matches closed form", spectrum, 1e-9);

    bool ordered = true;
    for (int d = 2; d <= 8; ++d) {
        const double s = schwarz_threshold(d);
        ordered = ordered && positive_threshold() < s && s < cp_threshold();
        // nesting of the closed forms on a nu grid
        for (double nu = -2.0; nu <= 1.0; nu += 1.0 / 64.0) {
            const GenParams p{d, 1.0, nu, {}};
            const bool cp = is_ccp(p).closed_form;
            const bool sch = is_dissipative(p, 1).closed_form;
            const bool pos = is_conditionally_positive(p, 1).closed_form;
            ordered = ordered && (!cp || sch) && (!sch || pos);
        }
    }
    b.holds("thresholds ordered -1 < -d/(d+2) < 0 and tests nested", ordered);

    double soundness = INFINITY;
    for (int d = 2; d <= 6; ++d) {
        for (double shift : {0.0, 1e-3, 0.2, 1.0}) {
            const Dissipativity r = is_dissipative({d, 1.0, schwarz_threshold(d) + shift, {}}, opt.sample_budget,
                                                   opt.seed, opt.exec);
            soundness = std::min({soundness, r.min_sampled_eig, r.min_witness_eig});
        }
    }
    b.at_most("dissipativity sampling sound for nu >= -d/(d+2)", -soundness, 1e-9);
}

void verify_regions(const VerifyOptions& opt, std::vector<CheckResult>& out) {
    Battery b("regions", out);
    std::size_t disagreements = 0;
    std::size_t nesting = 0;
    std::size_t ppt_mismatch = 0;
    std::size_t points = 0;
    for (int d = 2; d <= 5; ++d) {
        GridSpec spec;
        spec.d = d;
        NumericOptions nopt;
        nopt.sample_budget = 64;
        nopt.seed = opt.seed;
        for (const GridPoint& g : classify_grid(spec, nopt, opt.exec)) {
            ++points;
            if (compare_verdicts(g.closed, g.numeric).any()) {
                ++disagreements;
            }
            const RegionVerdict& v = g.closed;
            if ((v.entanglement_breaking && !v.completely_positive) || (v.completely_positive && !v.positive)) {
                ++nesting;
            }
            if (v.completely_positive && std::abs(v.margin(Region::EB)) > 1e-6) {
                const ComplexMatrix choi = build_phi_family({d, g.alpha, g.beta}).choi();
                const bool ppt = min_eig(partial_transpose(choi, d, 2)) >= -kPsdTolerance;
                if (ppt != v.entanglement_breaking) {
                    ++ppt_mismatch;
                }
            }
        }
    }
    const std::string n = std::to_string(points) + " grid points";
    b.holds("closed form agrees with oracles off the boundary", disagreements == 0,
            std::to_string(disagreements) + " disagreements, " + n);
    b.holds("EB => CP => positive", nesting == 0, n);
    b.holds("PPT of Choi <=> EB inequalities inside CP", ppt_mismatch == 0, std::to_string(ppt_mismatch) + " mismatches");

    double area = 0.0;
    for (int d = 3; d <= 12; ++d) {
        for (Region r : {Region::P, Region::CP, Region::EB}) {
            const AreaReport a = region_area(r, d);
            area = std::max(area, std::abs(a.closed_form - a.shoelace));
        }
    }
    b.at_most("shoelace area equals closed form, d = 3..12", area, 1e-12);
}

void verify_dynamics(const VerifyOptions& /*opt*/, std::vector<CheckResult>& out) {
    Battery b("dynamics", out);

    // e^{-N(t)} d = e^{(d-1)t} + (d-1) e^{-t}, relative to the right-hand side.
    double saturation = 0.0;
    for (int d = 2; d <= 6; ++d) {
        for (int k = 0; k <= 50; ++k) {
            const double t = 0.1 * k;
            const double n = integrated_nu_enm_quadrature(d, t);
            const double rhs = std::exp((d - 1.0) * t) + (d - 1.0) * std::exp(-t);
            saturation = std::max(saturation, std::abs(std::exp(-n) * d - rhs) / rhs);
        }
    }
    b.at_most("saturation identity by quadrature (relative)", saturation, 1e-9);

    double riding = 0.0;
    double choi_lo = INFINITY;
    double choi_hi = -INFINITY;
    for (int d = 2; d <= 6; ++d) {
        const Schedule s = schedule::OptimalENM{d};
        for (int k = 0; k <= 200; ++k) {
            const double t = 0.1 * k;
            const AlphaBeta ab = alpha_beta_at(s, t);
            riding = std::max(riding, std::abs(ab.beta + ab.alpha / d));
            const double m = min_eig(map_at(s, t).choi());
            choi_lo = std::min(choi_lo, m);
            choi_hi = std::max(choi_hi, m);
        }
    }
    b.at_most("OptimalENM: beta = -alpha/d", riding, 1e-15);
    b.holds("OptimalENM: Choi min-eig in [-1e-10, 1e-8]", choi_lo >= -1e-10 && choi_hi <= 1e-8,
            "[" + sci(choi_lo) + ", " + sci(choi_hi) + "]");

    bool pdiv = true;
    bool sdiv = true;
    bool enm_violates = true;
    for (int d = 2; d <= 8; ++d) {
        const SwitchTimes st = switch_times(d);
        for (int k = 0; k <= 400; ++k) {
            const double t = 0.025 * k;
            pdiv = pdiv && nu_at(schedule::PDivisible{d}, t) >= -1.0 - 1e-12;
            sdiv = sdiv && nu_at(schedule::SchwarzDivisible{d}, t) >= schwarz_threshold(d) - 1e-12;
            if (t > st.t_star) {
                enm_violates = enm_violates && nu_enm(d, t) < -1.0;
            }
        }
    }
    b.holds("PDivisible keeps nu >= -1", pdiv);
    b.holds("SchwarzDivisible keeps nu >= -d/(d+2)", sdiv);
    b.holds("OptimalENM has nu < -1 for t > t_*", enm_violates);

    double gap = 0.0;
    bool signature = true;
    for (int d = 2; d <= 6; ++d) {
        const RateReport r = spectrum_rates({d, 1.0, nu_enm(d, 25.0), {}}, PositivityClass::Positive);
        gap = std::max(gap, std::abs(r.gamma_diag - r.gamma_total / d - 1.0));
        signature = signature && std::abs(r.gamma_diag - d) <= 1e-12 && r.gamma_offdiag <= 1e-9 &&
                    std::abs(r.gamma_total - d * (d - 1.0)) <= 1e-8 && r.gamma_diag > r.gamma_total / d;
    }
    b.holds("OptimalENM late rates: Gamma_l = d, Gamma_ij -> 0, Gamma -> d(d-1)", signature);
    b.at_most("OptimalENM: Gamma_l - Gamma/d -> 1", gap, 1e-9);

    // kappa = 1, nu = -tanh t gives A = e^{-2t}, B = e^{-t} cosh t.
    double weyl = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double t = 0.05 * k;
        const double a = std::exp(-2.0 * t);
        const double bb = std::exp(-t) * std::cosh(t);
        const SuperMap expected = build_phi_family({2, 1.0 - a, a - bb});
        weyl = std::max(weyl, max_abs(weyl_mixture_map(2, t).transfer() - expected.transfer()));
    }
    b.at_most("Weyl mixture at d=2 equals the tanh schedule", weyl, 1e-10);

    double quad = 0.0;
    for (int d = 2; d <= 6; ++d) {
        const std::vector<Schedule> schedules = {schedule::ConstantNu{d, 0.7, -0.4, {}}, schedule::OptimalENM{d},
                                                 schedule::PDivisible{d}, schedule::SchwarzDivisible{d}};
        for (const Schedule& s : schedules) {
            for (double t : {0.05, 0.3, 0.9, 2.0, 4.0}) {
                const AlphaBeta c = alpha_beta_at(s, t);
                const AlphaBeta q = alpha_beta_by_quadrature(s, t);
                quad = std::max({quad, std::abs(c.alpha - q.alpha), std::abs(c.beta - q.beta)});
            }
        }
    }
    b.at_most("closed-form alpha, beta match quadrature of kappa, nu", quad, 1e-10);

    double expm = 0.0;
    for (int d = 2; d <= 4; ++d) {
        std::vector<double> h;
        for (int k = 0; k < d; ++k) {
            h.push_back(0.4 * k);
        }
        for (double t : {0.1, 1.0, 3.0}) {
            const ComplexMatrix lhs = semigroup({d, 0.9, -0.3, h}, t).transfer();
            const ComplexMatrix rhs = map_at(schedule::ConstantNu{d, 0.9, -0.3, h}, t).transfer();
            expm = std::max(expm, max_abs(lhs - rhs));
        }
    }
    b.at_most("exp(tL) equals the closed-form map", expm, 1e-10);

    const CrossingReport cr = crossing_times(3, 1.0, -1.5);
    b.holds("crossings d=3 nu=-1.5 ordered t_P < t_CP < t_EB",
            cr.t_P && cr.t_CP && cr.t_EB && *cr.t_P < *cr.t_CP && *cr.t_CP < *cr.t_EB);

    const auto serial = trajectory(schedule::SchwarzDivisible{4}, 3.0, 64, Exec::Serial);
    const auto parallel = trajectory(schedule::SchwarzDivisible{4}, 3.0, 64, Exec::Parallel);
    bool same = serial.size() == parallel.size();
    for (std::size_t k = 0; same && k < serial.size(); ++k) {
        same = serial[k].alpha == parallel[k].alpha && serial[k].beta == parallel[k].beta &&
               serial[k].min_choi_eig == parallel[k].min_choi_eig;
    }
    b.holds("parallel trajectory equals serial", same);
}

using SuiteFn = void (*)(const VerifyOptions&, std::vector<CheckResult>&);

SuiteFn suite_fn(std::string_view name) {
    if (name == "linalg") return verify_linalg;
    if (name == "channels") return verify_channels;
    if (name == "generators") return verify_generators;
    if (name == "regions") return verify_regions;
    if (name == "dynamics") return verify_dynamics;
    throw Error(ErrorCode::UnknownName, "suite '" + std::string(name) + "'");
}

} // namespace

const std::vector<std::string_view>& verify_suites() {
    static const std::vector<std::string_view> names = {"linalg", "channels", "generators", "regions", "dynamics"};
    return names;
}

std::vector<CheckResult> run_verify(std::string_view suite, const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    if (suite == "all") {
        for (std::string_view s : verify_suites()) {
            suite_fn(s)(opt, out);
        }
    } else {
        suite_fn(suite)(opt, out);
    }
    return out;
}

} // namespace qmaps
