// dynamics.cpp

#include "qmaps/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <unsupported/Eigen/MatrixFunctions>

namespace qmaps {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kScanEnd = 50.0;
constexpr double kScanStep = 1e-3;

void require_time(double t) {
    if (!(t >= 0.0)) {
        throw Error(ErrorCode::NegativeTime, "t = " + std::to_string(t));
    }
}

template <class F>
double integrate(F&& f, double a, double b) {
    if (b <= a) {
        return 0.0;
    }
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 20, 1e-14, &err);
    return v;
}

// Family member with alpha = 1 - A, beta = A - B.
AlphaBeta from_ab(double a, double b) { return {1.0 - a, a - b}; }

// B(t) = exp(-int (d-1+nu_enm)) = (1 + (d-1) e^{-dt}) / d
double enm_b(int d, double t) { return (1.0 + (d - 1.0) * std::exp(-d * t)) / d; }

ComplexMatrix shift_matrix(int d) {
    ComplexMatrix x = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        x((k + 1) % d, k) = 1.0;
    }
    return x;
}

// Transfer matrices of X -> W X W^dag for l > 0.
std::vector<ComplexMatrix> weyl_conjugations(int d) {
    std::vector<ComplexMatrix> out;
    const std::vector<ComplexMatrix> w = weyl_ops(d);
    for (int k = 0; k < d; ++k) {
        for (int l = 1; l < d; ++l) {
            const ComplexMatrix& op = w[static_cast<std::size_t>(k * d + l)];
            out.push_back(kron(op.conjugate(), op));
        }
    }
    return out;
}

} // namespace

int schedule_dim(const Schedule& s) {
    return std::visit([](const auto& v) { return v.d; }, s);
}

std::string_view schedule_name(const Schedule& s) {
    return std::visit(overloaded{
                          [](const schedule::ConstantNu&) { return std::string_view("const"); },
                          [](const schedule::OptimalENM&) { return std::string_view("enm"); },
                          [](const schedule::PDivisible&) { return std::string_view("pdiv"); },
                          [](const schedule::SchwarzDivisible&) { return std::string_view("sdiv"); },
                          [](const schedule::ENM2&) { return std::string_view("enm2"); },
                          [](const schedule::WeylMixture&) { return std::string_view("weyl"); },
                      },
                      s);
}

Schedule make_schedule(std::string_view name, int d, double kappa, double nu) {
    check_dimension(d);
    if (name == "const") return schedule::ConstantNu{d, kappa, nu, {}};
    if (name == "enm") return schedule::OptimalENM{d};
    if (name == "pdiv") return schedule::PDivisible{d};
    if (name == "sdiv") return schedule::SchwarzDivisible{d};
    if (name == "enm2") return schedule::ENM2{d};
    if (name == "weyl") return schedule::WeylMixture{d};
    throw Error(ErrorCode::UnknownName, "schedule '" + std::string(name) + "'");
}

double nu_enm(int d, double t) {
    require_time(t);
    const double e = std::expm1(d * t);   // e^{dt} - 1
    if (!std::isfinite(e)) {
        return -(d - 1.0);
    }
    return -(d - 1.0) * e / (e + d);
}

double integrated_nu_enm(int d, double t) {
    require_time(t);
    // -ln((e^{(d-1)t} + (d-1)e^{-t})/d) = -(d-1)t - ln((1 + (d-1)e^{-dt})/d)
    return -(d - 1.0) * t - std::log(enm_b(d, t));
}

double integrated_nu_enm_quadrature(int d, double t) {
    require_time(t);
    return integrate([d](double s) { return nu_enm(d, s); }, 0.0, t);
}

SwitchTimes switch_times(int d) {
    check_dimension(d);
    const double dd = d;
    SwitchTimes st;
    st.t_star = d == 2 ? std::numeric_limits<double>::infinity() : std::log(2.0 * (dd - 1.0) / (dd - 2.0)) / dd;
    st.t_S = std::log(2.0 * (dd * dd - 1.0) / (dd * dd - 2.0)) / dd;
    return st;
}

double kappa_at(const Schedule& s, double t) {
    require_time(t);
    return std::visit(overloaded{
                          [](const schedule::ConstantNu& c) { return c.kappa; },
                          [t](const schedule::ENM2& c) { return c.d / (c.d - std::exp(c.d * t)); },
                          [](const schedule::WeylMixture&) -> double {
                              throw Error(ErrorCode::BadInput, "Weyl mixture kappa(t) is only available by extraction");
                          },
                          [](const auto&) { return 1.0; },
                      },
                      s);
}

double nu_at(const Schedule& s, double t) {
    require_time(t);
    return std::visit(overloaded{
                          [](const schedule::ConstantNu& c) { return c.nu; },
                          [t](const schedule::OptimalENM& c) { return nu_enm(c.d, t); },
                          [t](const schedule::PDivisible& c) {
                              return t <= switch_times(c.d).t_star ? nu_enm(c.d, t) : -1.0;
                          },
                          [t](const schedule::SchwarzDivisible& c) {
                              return t <= switch_times(c.d).t_S ? nu_enm(c.d, t) : schwarz_threshold(c.d);
                          },
                          [t](const schedule::ENM2& c) { return -std::expm1(c.d * t); },
                          [](const schedule::WeylMixture&) -> double {
                              throw Error(ErrorCode::BadInput, "Weyl mixture nu(t) is only available by extraction");
                          },
                      },
                      s);
}

std::complex<double> weyl_f(int d, double t) {
    check_dimension(d);
    std::complex<double> sum = 0.0;
    for (int r = 0; r < d; ++r) {
        const std::complex<double> w = std::polar(1.0, 2.0 * std::numbers::pi * r / d);
        sum += std::exp(t * (w - 1.0));
    }
    return sum / static_cast<double>(d);
}

AlphaBeta alpha_beta_at(const Schedule& s, double t) {
    require_time(t);
    return std::visit(
        overloaded{
            [t](const schedule::ConstantNu& c) {
                const double a = std::exp(-c.kappa * c.d * t);
                // beta = e^{-kappa d t} (1 - e^{kappa (1 - nu) t})
                return AlphaBeta{-std::expm1(-c.kappa * c.d * t), -a * std::expm1(c.kappa * (1.0 - c.nu) * t)};
            },
            [t](const schedule::OptimalENM& c) {
                const double alpha = -std::expm1(-c.d * t);
                return AlphaBeta{alpha, -alpha / c.d};
            },
            [t](const schedule::PDivisible& c) {
                const double ts = switch_times(c.d).t_star;
                if (t <= ts) {
                    const double alpha = -std::expm1(-c.d * t);
                    return AlphaBeta{alpha, -alpha / c.d};
                }
                return from_ab(std::exp(-c.d * t), 0.5 * std::exp(-(c.d - 2.0) * (t - ts)));
            },
            [t](const schedule::SchwarzDivisible& c) {
                const double ts = switch_times(c.d).t_S;
                if (t <= ts) {
                    const double alpha = -std::expm1(-c.d * t);
                    return AlphaBeta{alpha, -alpha / c.d};
                }
                const double dd = c.d;
                const double rate = (dd * dd - 2.0) / (dd + 2.0);   // d - 1 + nu with nu = -d/(d+2)
                return from_ab(std::exp(-dd * t), (dd + 2.0) / (2.0 * (dd + 1.0)) * std::exp(-rate * (t - ts)));
            },
            [t](const schedule::ENM2& c) {
                const double m = std::expm1(-c.d * t);   // e^{-dt} - 1
                return AlphaBeta{-c.d * m / (c.d - 1.0), m / (c.d - 1.0)};
            },
            [t](const schedule::WeylMixture& c) {
                const FamilyFit fit = family_coordinates(weyl_mixture_map(c.d, t));
                return AlphaBeta{fit.alpha, fit.beta};
            },
        },
        s);
}

AlphaBeta alpha_beta_by_quadrature(const Schedule& s, double t) {
    require_time(t);
    const int d = schedule_dim(s);
    double split = t;
    if (std::holds_alternative<schedule::PDivisible>(s)) {
        split = std::min(t, switch_times(d).t_star);
    } else if (std::holds_alternative<schedule::SchwarzDivisible>(s)) {
        split = std::min(t, switch_times(d).t_S);
    } else if (std::holds_alternative<schedule::ENM2>(s) || std::holds_alternative<schedule::WeylMixture>(s)) {
        throw Error(ErrorCode::BadInput, "no regular time-local generator to integrate");
    }
    auto kappa = [&](double u) { return kappa_at(s, u); };
    auto decay = [&](double u) { return kappa_at(s, u) * (d - 1.0 + nu_at(s, u)); };
    const double int_kappa = integrate(kappa, 0.0, split) + integrate(kappa, split, t);
    const double int_decay = integrate(decay, 0.0, split) + integrate(decay, split, t);
    return from_ab(std::exp(-d * int_kappa), std::exp(-int_decay));
}

std::vector<ComplexMatrix> weyl_ops(int d) {
    check_dimension(d);
    ComplexMatrix z = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        z(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * k / d);
    }
    const ComplexMatrix x = shift_matrix(d);
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(d) * d);
    ComplexMatrix zk = identity(d);
    for (int k = 0; k < d; ++k) {
        ComplexMatrix w = zk;
        for (int l = 0; l < d; ++l) {
            out.push_back(w);
            w = w * x;
        }
        zk = zk * z;
    }
    return out;
}

SuperMap weyl_mixture_map(int d, double t) {
    require_time(t);
    check_dimension(d);
    // U = conj(W) (x) W satisfies U^d = I, so exp(t(U - I)) = e^{-t} sum_r c_r(t) U^r with
    // c_r(t) = sum_{n = r mod d} t^n / n! = (1/d) sum_j omega^{-jr} exp(t omega^j).
    std::vector<double> c(static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r) {
        std::complex<double> sum = 0.0;
        for (int j = 0; j < d; ++j) {
            const std::complex<double> w = std::polar(1.0, 2.0 * std::numbers::pi * j / d);
            sum += std::polar(1.0, -2.0 * std::numbers::pi * j * r / d) * std::exp(t * (w - 1.0));
        }
        c[static_cast<std::size_t>(r)] = sum.real() / d;
    }
    const int n = d * d;
    ComplexMatrix total = ComplexMatrix::Zero(n, n);
    for (const ComplexMatrix& u : weyl_conjugations(d)) {
        ComplexMatrix power = identity(n);
        for (int r = 0; r < d; ++r) {
            total += c[static_cast<std::size_t>(r)] * power;
            power = power * u;
        }
    }
    total /= static_cast<double>(d * (d - 1));
    return SuperMap::from_transfer(d, std::move(total));
}

SuperMap map_at(const Schedule& s, double t) {
    require_time(t);
    const int d = schedule_dim(s);
    if (const auto* w = std::get_if<schedule::WeylMixture>(&s)) {
        return weyl_mixture_map(w->d, t);
    }
    const AlphaBeta ab = alpha_beta_at(s, t);
    SuperMap phi = build_phi_family({d, ab.alpha, ab.beta});
    if (const auto* c = std::get_if<schedule::ConstantNu>(&s); c != nullptr && !c->h.empty()) {
        if (static_cast<int>(c->h.size()) != d) {
            throw Error(ErrorCode::DimensionMismatch, "h must have d entries");
        }
        ComplexMatrix u = ComplexMatrix::Zero(d, d);
        for (int k = 0; k < d; ++k) {
            u(k, k) = std::polar(1.0, -c->h[static_cast<std::size_t>(k)] * t);
        }
        phi = compose(conjugation_map(u), phi);
    }
    return phi;
}

SuperMap asymptotic_map(const Schedule& s) {
    const int d = schedule_dim(s);
    return std::visit(
        overloaded{
            [d](const schedule::ConstantNu& c) {
                if (!(c.kappa > 0.0) || !(d - 1.0 + c.nu > 0.0)) {
                    throw Error(ErrorCode::NoLimit, "constant schedule needs kappa > 0 and nu > -(d-1)");
                }
                return depolarizing_map(d);
            },
            [d](const schedule::OptimalENM&) { return named_map(MapName::E4, d).map; },
            [d](const schedule::PDivisible&) {
                return d == 2 ? named_map(MapName::E4, d).map : depolarizing_map(d);
            },
            [d](const schedule::SchwarzDivisible&) { return depolarizing_map(d); },
            [d](const schedule::ENM2&) { return named_map(MapName::E3, d).map; },
            [d](const schedule::WeylMixture&) {
                // exp(t(U - I)) tends to the projector (1/d) sum_r U^r onto the fixed space of U.
                const int n = d * d;
                ComplexMatrix total = ComplexMatrix::Zero(n, n);
                for (const ComplexMatrix& u : weyl_conjugations(d)) {
                    ComplexMatrix power = identity(n);
                    for (int r = 0; r < d; ++r) {
                        total += power;
                        power = power * u;
                    }
                }
                total /= static_cast<double>(d * d * (d - 1));
                return SuperMap::from_transfer(d, std::move(total));
            },
        },
        s);
}

SuperMap semigroup(const GenParams& p, double t) {
    require_time(t);
    const ComplexMatrix generator = build_generator(p).transfer();
    return SuperMap::from_transfer(p.d, (t * generator).exp());
}

CrossingReport crossing_times(int d, double kappa, double nu) {
    check_dimension(d);
    if (!(kappa > 0.0)) {
        throw Error(ErrorCode::NegativeRate, "crossing times need kappa > 0");
    }
    const Schedule s = schedule::ConstantNu{d, kappa, nu, {}};
    auto margin = [&](Region r, double t) {
        const AlphaBeta ab = alpha_beta_at(s, t);
        return region_margin(r, {d, ab.alpha, ab.beta});
    };
    constexpr double kInside = -1e-12;

    CrossingReport report;
    const auto steps = static_cast<std::size_t>(kScanEnd / kScanStep);
    for (Region r : {Region::P, Region::CP, Region::EB}) {
        const auto idx = static_cast<std::size_t>(r);
        report.final_margins[idx] = margin(r, kScanEnd);

        std::optional<std::size_t> last_outside;
        for (std::size_t k = 0; k <= steps; ++k) {
            if (margin(r, static_cast<double>(k) * kScanStep) < kInside) {
                last_outside = k;
            }
        }
        std::optional<double> crossing;
        if (!last_outside) {
            crossing = 0.0;
        } else if (*last_outside < steps) {
            const double lo = static_cast<double>(*last_outside) * kScanStep;
            const double hi = lo + kScanStep;
            auto shifted = [&](double t) { return margin(r, t) - kInside; };
            auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-10; };
            const auto bracket = boost::math::tools::bisect(shifted, lo, hi, tol);
            crossing = 0.5 * (bracket.first + bracket.second);
        }
        switch (r) {
        case Region::P: report.t_P = crossing; break;
        case Region::CP: report.t_CP = crossing; break;
        case Region::EB: report.t_EB = crossing; break;
        }
    }
    if (report.t_P && report.t_CP && report.t_EB &&
        !(*report.t_P <= *report.t_CP && *report.t_CP <= *report.t_EB)) {
        throw Error(ErrorCode::BadInput, "crossing times out of order");
    }
    return report;
}

Boundary parse_boundary(std::string_view name) {
    if (name == "P" || name == "p") return Boundary::P;
    if (name == "CP" || name == "cp") return Boundary::CP;
    if (name == "Schwarz" || name == "schwarz") return Boundary::Schwarz;
    throw Error(ErrorCode::UnknownName, "boundary '" + std::string(name) + "'");
}

TangencySlope tangency_slope(int d, double kappa, double nu, Boundary boundary) {
    check_dimension(d);
    const double dd = d;
    double s = 0.0;
    switch (boundary) {
    case Boundary::P: s = 2.0 / dd; break;
    case Boundary::CP: s = 1.0 / dd; break;
    case Boundary::Schwarz: s = 2.0 * (dd + 1.0) / (dd * (dd + 2.0)); break;
    }
    // alpha'(0) = kappa d, beta'(0) = kappa (nu - 1)
    TangencySlope out;
    out.analytic = kappa * (nu - 1.0) + s * kappa * dd;

    // Central difference of the closed forms, continued analytically to t < 0.
    auto g = [&](double t) {
        const double alpha = -std::expm1(-kappa * dd * t);
        const double beta = -std::exp(-kappa * dd * t) * std::expm1(kappa * (1.0 - nu) * t);
        return beta + s * alpha;
    };
    constexpr double h = 1e-6;
    out.finite_difference = (g(h) - g(-h)) / (2.0 * h);
    return out;
}

TimeLocalFit extract_time_local_generator(const MapFunction& map_fn, double t, double dt) {
    if (!(t - dt >= 0.0) || !(dt > 0.0)) {
        throw Error(ErrorCode::NegativeTime, "central differences need t >= dt > 0");
    }
    const SuperMap now = map_fn(t);
    const int d = now.dim();
    const ComplexMatrix& phi = now.transfer();

    Eigen::JacobiSVD<ComplexMatrix> svd(phi);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    if (!(smin > 1e-10 * smax)) {
        throw Error(ErrorCode::SingularMap, "map not invertible at t = " + std::to_string(t));
    }

    const ComplexMatrix dphi = (map_fn(t + dt).transfer() - map_fn(t - dt).transfer()) / (2.0 * dt);
    // L phi = dphi  <=>  phi^T L^T = dphi^T
    const ComplexMatrix l = phi.transpose().partialPivLu().solve(dphi.transpose()).transpose();

    const DissipatorBasis basis = dissipator_basis(d);
    auto dot = [](const ComplexMatrix& a, const ComplexMatrix& b) {
        return (a.array().conjugate() * b.array()).sum().real();
    };
    Eigen::Matrix2d g;
    g << dot(basis.hopping, basis.hopping), dot(basis.hopping, basis.dephasing), dot(basis.dephasing, basis.hopping),
        dot(basis.dephasing, basis.dephasing);
    const Eigen::Vector2d rhs(dot(basis.hopping, l), dot(basis.dephasing, l));
    const Eigen::Vector2d coef = g.ldlt().solve(rhs);

    TimeLocalFit fit;
    fit.kappa_fit = coef(0);
    fit.nu_fit = coef(1) / coef(0);
    fit.residual = (l - coef(0) * basis.hopping - coef(1) * basis.dephasing).norm();
    fit.condition = smax / smin;
    fit.generator = SuperMap::from_transfer(d, l);
    return fit;
}

std::string_view to_string(SchwarzFlag f) {
    switch (f) {
    case SchwarzFlag::In: return "in";
    case SchwarzFlag::Out: return "out";
    case SchwarzFlag::Unknown: return "unknown";
    }
    return "?";
}

std::vector<TrajectoryPoint> trajectory(const Schedule& s, double t_max, int steps, Exec exec) {
    require_time(t_max);
    if (steps < 1) {
        throw Error(ErrorCode::BadInput, "steps must be >= 1");
    }
    const int d = schedule_dim(s);
    std::vector<TrajectoryPoint> out(static_cast<std::size_t>(steps) + 1);
    map_indices(
        out.size(), out,
        [&](std::size_t k) {
            TrajectoryPoint p;
            p.t = t_max * static_cast<double>(k) / steps;
            const SuperMap m = map_at(s, p.t);
            const AlphaBeta ab = alpha_beta_at(s, p.t);
            p.alpha = ab.alpha;
            p.beta = ab.beta;
            p.verdict = classify_point({d, p.alpha, p.beta});
            p.schwarz_flag = p.verdict.completely_positive ? SchwarzFlag::In
                             : !p.verdict.positive         ? SchwarzFlag::Out
                                                           : SchwarzFlag::Unknown;
            p.min_choi_eig = min_eig(m.choi());
            return p;
        },
        exec);
    return out;
}

} // namespace qmaps
