#include "heis/variational/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

namespace heis::variational {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// sum w |u|^q
double power_integral(const Discretization& d, const std::vector<double>& u, double q) {
    const auto& w = d.weights();
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += w[i] * std::pow(std::abs(u[i]), q);
    return s;
}

KirchhoffProblem quotient_problem(const BoxGrid& grid, double p) {
    KirchhoffProblem prob;
    prob.n = heisenberg_n(grid);
    prob.p = p;
    prob.grid = grid;
    if (!(p > 1.0) || !(p < prob.Q())) throw std::invalid_argument("Folland-Stein quotient needs 1 < p < Q");
    return prob;
}

}  // namespace

double folland_stein_quotient(const Discretization& d, const std::vector<double>& u) {
    const double p = d.problem().p, ps = d.problem().p_star();
    const double N = std::pow(power_integral(d, u, ps), p / ps);
    if (!(N > 0.0)) throw std::invalid_argument("quotient of the zero field");
    return d.grad_p_term(u) / N;
}

FSResult folland_stein_constant(const BoxGrid& grid, double p, const FSOptions& opt) {
    const Discretization d(quotient_problem(grid, p));
    const double ps = d.problem().p_star();
    const std::size_t N = d.size();

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const std::size_t dim = grid.dim();
    std::vector<double> centre(dim), width(dim);
    for (std::size_t a = 0; a < dim; ++a) {
        const double half = 0.5 * (grid.axis(a).upper - grid.axis(a).lower);
        centre[a] = 0.5 * (grid.axis(a).upper + grid.axis(a).lower) + 0.1 * half * U(rng);
        width[a] = half * (0.3 + 0.05 * U(rng));
    }
    std::vector<double> u(N);
    for (std::size_t i = 0; i < N; ++i) {
        double r2 = 0.0;
        for (std::size_t a = 0; a < dim; ++a) {
            const double s = (grid.coord(i, a) - centre[a]) / width[a];
            r2 += s * s;
        }
        u[i] = std::exp(-0.5 * r2) * (1.0 + 0.05 * U(rng));
    }
    zero_boundary(grid, u);

    auto normalize = [&](std::vector<double>& v) {
        const double s = std::pow(power_integral(d, v, ps), 1.0 / ps);
        for (double& x : v) x /= s;
    };
    normalize(u);

    FSResult res;
    double R = folland_stein_quotient(d, u);
    res.start_quotient = R;
    res.quotients.push_back(R);
    double step = 1.0;
    std::size_t quiet = 0;
    const auto& w = d.weights();
    for (std::size_t it = 0; it < opt.budget; ++it) {
        // With ||u||_{p*} = 1: dR = dG - G p |u|^(p*-2) u w.
        std::vector<double> g = d.grad_p_gradient(u);
        const double G = d.grad_p_term(u);
        for (std::size_t i = 0; i < N; ++i)
            g[i] = d.interior(i) ? g[i] - G * p * w[i] * std::pow(std::abs(u[i]), ps - 2.0) * u[i] : 0.0;
        const std::vector<double> r = d.riesz(g);
        const double slope = dot(g, r);
        if (!(slope > 0.0)) break;
        bool accepted = false;
        std::vector<double> cand(N);
        double Rc = R;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < N; ++i) cand[i] = u[i] - step * r[i];
            Rc = folland_stein_quotient(d, cand);
            if (Rc < R && Rc <= R - 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            res.stagnated = true;
            break;
        }
        normalize(cand);
        u.swap(cand);
        Rc = folland_stein_quotient(d, u);
        if (Rc > res.quotients.back()) res.monotone = false;
        const double rel = (R - Rc) / Rc;
        R = Rc;
        res.quotients.push_back(R);
        res.iterations = it + 1;
        step *= 2.0;
        quiet = rel < opt.tol ? quiet + 1 : 0;
        if (quiet >= 3) {
            res.converged = true;
            break;
        }
    }
    if (!res.converged && res.iterations < opt.budget) res.stagnated = true;
    res.value = R;
    res.field = RealField(grid, u);
    return res;
}

double mp_threshold(const KirchhoffProblem& prob, double C, std::optional<double> m_coef) {
    const double ps = prob.p_star(), p = prob.p, theta = prob.nonlinearity.theta;
    if (theta >= ps) throw std::invalid_argument("threshold needs theta < p* (nonpositive prefactor)");
    if (!(C > 0.0)) throw std::invalid_argument("threshold needs a positive Folland-Stein constant");
    const double pref = 1.0 / theta - 1.0 / ps;
    const KirchhoffM& M = prob.M;
    if (M.kind == KirchhoffM::Kind::NonDegenerate) {
        const double m = m_coef.value_or(M.m0);
        return pref * std::pow(m * C, ps / (ps - p));
    }
    const double pk = p * M.kappa;
    if (!(pk < ps)) throw std::invalid_argument("degenerate threshold needs p kappa < p*");
    const double m = m_coef.value_or(M.m0 > 0.0 ? M.m0 : M.m1);
    return pref * std::pow(m * std::pow(C, M.kappa), ps / (ps - pk));
}

std::vector<double> unit_bump(const Discretization& d, double width) {
    const BoxGrid& g = d.grid();
    std::vector<double> u(d.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        double r2 = 0.0;
        for (std::size_t a = 0; a < g.dim(); ++a) r2 += g.coord(i, a) * g.coord(i, a);
        u[i] = std::exp(-0.5 * r2 / (width * width));
    }
    zero_boundary(g, u);
    const double s = d.norm(u);
    for (double& x : u) x /= s;
    return u;
}

RayScan ray_scan(const Discretization& d, const std::vector<double>& v0, double t_max, std::size_t steps) {
    if (steps < 2 || !(t_max > 0.0)) throw std::invalid_argument("ray_scan needs t_max > 0 and steps >= 2");
    const double nv = d.norm(v0);
    if (std::abs(nv - 1.0) > 1e-8) throw std::invalid_argument("ray_scan needs a unit-norm direction");
    RayScan rs;
    std::vector<double> u(v0.size());
    for (std::size_t s = 0; s <= steps; ++s) {
        const double t = t_max * static_cast<double>(s) / static_cast<double>(steps);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = t * v0[i];
        rs.t.push_back(t);
        rs.J.push_back(d.energy(u));
    }
    const auto peak = static_cast<std::size_t>(std::max_element(rs.J.begin(), rs.J.end()) - rs.J.begin());
    rs.t_peak = rs.t[peak];
    rs.J_peak = rs.J[peak];
    bool found = false;
    for (std::size_t s = 0; s < rs.J.size(); ++s)
        if (rs.J[s] < 0.0) {
            rs.t_negative = rs.t[s];
            found = true;
            break;
        }
    if (!found) throw std::runtime_error("ray_scan: no negative energy before t_max; increase t_max");
    rs.tail_strictly_decreasing = peak + 1 < rs.J.size();
    for (std::size_t s = peak; s + 1 < rs.J.size(); ++s)
        if (!(rs.J[s + 1] < rs.J[s])) rs.tail_strictly_decreasing = false;
    return rs;
}

GenericMPResult mountain_pass(const Objective& obj, const Eigen::VectorXd& e, const MPOptions& opt) {
    if (opt.nodes < 1) throw std::invalid_argument("mountain pass needs at least one interior node");
    auto norm = [&](const Eigen::VectorXd& v) { return obj.norm ? obj.norm(v) : v.norm(); };
    auto precond = [&](const Eigen::VectorXd& g) { return obj.precondition ? obj.precondition(g) : g; };
    const double e_norm = e.norm();
    if (!(e_norm > 0.0)) throw std::invalid_argument("mountain pass endpoint must be nonzero");
    const double Je = obj.value(e);
    if (!(Je < 0.0)) throw std::invalid_argument("mountain pass endpoint must have negative energy");

    // Energy peak along the ray {t v : 0 <= t <= ray_span}.
    auto ray_peak = [&](const Eigen::VectorXd& v) {
        auto negJ = [&](double t) { return -obj.value(t * v); };
        const auto [t, f] = boost::math::tools::brent_find_minima(negJ, 0.0, opt.ray_span, 40);
        return std::pair<double, double>{t, -f};
    };

    const std::size_t m = opt.nodes;
    std::vector<Eigen::VectorXd> path;
    std::vector<double> E;
    for (std::size_t i = 0; i <= m + 1; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(m + 1);
        path.push_back(s * e);
        E.push_back(i == 0 ? 0.0 : (i == m + 1 ? Je : obj.value(path.back())));
    }
    E[0] = obj.value(path[0]);

    GenericMPResult res;
    double step = opt.initial_step;
    for (std::size_t it = 0; it < opt.max_iter; ++it) {
        std::size_t k = 1;
        for (std::size_t i = 2; i + 1 < path.size(); ++i)
            if (E[i] > E[k]) k = i;
        if (opt.ray_peak) {
            const auto [t, J] = ray_peak(path[k]);
            if (J > E[k]) {
                path[k] *= t;
                E[k] = J;
            }
        }

        const Eigen::VectorXd u = path[k];
        const Eigen::VectorXd g = obj.gradient(u);
        const Eigen::VectorXd r = precond(g);
        const double gn = std::sqrt(std::max(0.0, g.dot(r)));
        if (it == 0) res.grad_norm0 = gn;
        res.u = u;
        res.energy = E[k];
        res.grad_norm = gn;
        res.iterations = it;
        if (gn <= opt.tol_rel * res.grad_norm0 || gn <= opt.tol_abs) {
            res.log.push_back({it, E[k], gn, norm(u), 0.0, path.size()});
            res.converged = true;
            break;
        }

        double s = std::min(step, opt.max_step);
        const double rn = r.norm(), un = u.norm();
        if (rn > 0.0 && un > 0.0) s = std::min(s, opt.max_move * un / rn);
        bool accepted = false;
        Eigen::VectorXd cand;
        double Jc = E[k];
        for (int bt = 0; bt < 60; ++bt) {
            cand = u - s * r;
            if (opt.ray_peak) {
                const auto [t, J] = ray_peak(cand);
                cand *= t;
                Jc = J;
            } else {
                Jc = obj.value(cand);
            }
            if (Jc < E[k] && Jc <= E[k] - opt.armijo * s * gn * gn) {
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        res.log.push_back({it, E[k], gn, norm(u), accepted ? s : 0.0, path.size()});
        if (!accepted) {
            res.stagnated = true;
            std::ostringstream os;
            os << "line search found no decrease at iteration " << it << " (grad " << gn << ", energy " << E[k] << ")";
            res.diagnostics = os.str();
            break;
        }
        path[k] = cand;
        E[k] = Jc;
        step = std::min(2.0 * s, opt.max_step);

        // Merge collapsed neighbours, keeping the node just moved, then refill the widest gaps so the
        // path keeps m interior nodes.
        for (std::size_t i = 1; i < path.size() && path.size() > 3;) {
            if ((path[i] - path[i - 1]).norm() >= opt.merge_fraction * e_norm) {
                ++i;
                continue;
            }
            const bool a_ok = i - 1 != 0 && i - 1 != k, b_ok = i + 1 != path.size() && i != k;
            if (!a_ok && !b_ok) {
                ++i;
                continue;
            }
            const std::size_t drop = a_ok && b_ok ? (E[i - 1] < E[i] ? i - 1 : i) : (a_ok ? i - 1 : i);
            path.erase(path.begin() + static_cast<std::ptrdiff_t>(drop));
            E.erase(E.begin() + static_cast<std::ptrdiff_t>(drop));
            if (drop < k) --k;
            ++res.merges;
        }
        while (!opt.ray_peak && path.size() < m + 2) {
            std::size_t gap = 0;
            double widest = -1.0;
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                const double len = (path[i + 1] - path[i]).norm();
                if (len > widest) {
                    widest = len;
                    gap = i;
                }
            }
            const Eigen::VectorXd mid = 0.5 * (path[gap] + path[gap + 1]);
            path.insert(path.begin() + static_cast<std::ptrdiff_t>(gap + 1), mid);
            E.insert(E.begin() + static_cast<std::ptrdiff_t>(gap + 1), obj.value(mid));
            ++res.insertions;
        }
    }
    if (!res.converged && !res.stagnated) res.diagnostics = "iteration budget exhausted";
    return res;
}

Objective make_objective(const Discretization& d) {
    Objective o;
    o.value = [&d](const Eigen::VectorXd& v) { return d.energy(to_std(v)); };
    o.gradient = [&d](const Eigen::VectorXd& v) { return to_eigen(d.euclidean_gradient(to_std(v))); };
    o.precondition = [&d](const Eigen::VectorXd& g) { return to_eigen(d.riesz(to_std(g))); };
    o.norm = [&d](const Eigen::VectorXd& v) { return d.norm(to_std(v)); };
    return o;
}

MPResult mountain_pass_solve(const Discretization& d, const std::vector<double>& e, const MPOptions& opt) {
    d.check_support(e);
    const GenericMPResult g = mountain_pass(make_objective(d), to_eigen(e), opt);
    MPResult r;
    r.u = RealField(d.grid(), to_std(g.u));
    r.energy = g.energy;
    r.grad_norm = g.grad_norm;
    r.grad_norm0 = g.grad_norm0;
    r.norm = d.norm(to_std(g.u));
    r.e_norm = d.norm(e);
    for (const auto& L : g.log) {
        r.iterations.push_back(L.iteration);
        r.energies.push_back(L.energy);
        r.grad_norms.push_back(L.grad_norm);
        r.norms.push_back(L.norm);
    }
    r.converged = g.converged;
    r.stagnated = g.stagnated;
    r.reduced_1e4 = g.grad_norm0 > 0.0 && g.grad_norm <= 1e-4 * g.grad_norm0;
    r.positive_norm = r.norm > 0.0;
    r.positive_energy = r.energy > 0.0;
    std::ostringstream os;
    os << g.diagnostics << (g.diagnostics.empty() ? "" : "; ") << "insertions " << g.insertions << ", merges "
       << g.merges;
    r.diagnostics = os.str();
    return r;
}

std::vector<double> random_sphere_field(const Discretization& d, double rho, std::uint64_t seed) {
    const BoxGrid& g = d.grid();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const std::size_t bumps = 1 + static_cast<std::size_t>(U(rng) * 4.0);
    std::vector<double> u(d.size(), 0.0);
    for (std::size_t b = 0; b < bumps; ++b) {
        std::vector<double> c(g.dim()), w(g.dim());
        for (std::size_t a = 0; a < g.dim(); ++a) {
            const double half = 0.5 * (g.axis(a).upper - g.axis(a).lower);
            const double mid = 0.5 * (g.axis(a).upper + g.axis(a).lower);
            c[a] = mid + 0.5 * half * (2.0 * U(rng) - 1.0);
            w[a] = half * (0.15 + 0.2 * U(rng));
        }
        const double amp = (U(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + 0.5 * U(rng));
        for (std::size_t i = 0; i < u.size(); ++i) {
            double r2 = 0.0;
            for (std::size_t a = 0; a < g.dim(); ++a) {
                const double s = (g.coord(i, a) - c[a]) / w[a];
                r2 += s * s;
            }
            u[i] += amp * std::exp(-0.5 * r2);
        }
    }
    zero_boundary(g, u);
    const double s = d.norm(u);
    if (!(s > 0.0)) throw std::runtime_error("random field vanished on the grid");
    for (double& x : u) x *= rho / s;
    return u;
}

GeometryCertificate mp_geometry_check(const Discretization& d, const GeometryOptions& opt) {
    if (!(opt.rho_max > 0.0) || opt.samples == 0) throw std::invalid_argument("geometry check needs rho_max > 0 and samples");
    std::vector<std::vector<double>> dirs;
    for (std::size_t j = 0; j < opt.samples; ++j) dirs.push_back(random_sphere_field(d, 1.0, opt.seed + 7919 * j));
    GeometryCertificate cert;
    std::vector<double> u(d.size());
    for (std::size_t k = 0; k < opt.levels; ++k) {
        const double rho = opt.rho_max * std::ldexp(1.0, -static_cast<int>(k));
        GeometryRow row{rho, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
        for (const auto& v : dirs) {
            for (std::size_t i = 0; i < u.size(); ++i) u[i] = rho * v[i];
            const double J = d.energy(u);
            row.min_energy = std::min(row.min_energy, J);
            row.max_energy = std::max(row.max_energy, J);
        }
        cert.table.push_back(row);
        if (row.min_energy > 0.0) {
            cert.ok = true;
            cert.rho = rho;
            cert.alpha = 0.5 * row.min_energy;
            return cert;
        }
    }
    cert.diagnostics = "no sampled sphere with positive minimum energy; check the exponent windows";
    return cert;
}

PSSummary ps_monitor(const MPResult& r, const PSOptions& opt) {
    if (r.energies.empty()) throw std::invalid_argument("ps_monitor needs a nonempty log");
    if (r.energies.size() != r.grad_norms.size() || r.energies.size() != r.norms.size())
        throw std::invalid_argument("ps_monitor: log lengths differ");
    PSSummary s;
    const std::size_t n = r.energies.size();
    s.final_energy = r.energies.back();
    if (n >= 3) {
        const std::size_t tail = std::min(std::max<std::size_t>(opt.tail, 2), n);
        const auto b = r.energies.end() - static_cast<std::ptrdiff_t>(tail);
        const auto [lo, hi] = std::minmax_element(b, r.energies.end());
        s.energy_spread = (*hi - *lo) / std::max(std::abs(s.final_energy), 1e-300);
        s.energy_cauchy = s.energy_spread <= opt.cauchy_tol;
    }
    const double g0 = r.grad_norms.front(), gf = r.grad_norms.back();
    s.gradient_to_tol = n >= 2 && gf < g0 && gf <= opt.tol_rel * g0;
    s.bounded = true;
    for (double v : r.norms)
        if (!std::isfinite(v) || (r.e_norm > 0.0 && v > opt.bound_factor * r.e_norm)) s.bounded = false;
    std::ostringstream os;
    if (r.threshold) {
        s.threshold = *r.threshold;
        s.below_threshold = s.final_energy < s.threshold;
        os << "final energy " << s.final_energy << (s.below_threshold ? " < " : " >= ") << "threshold " << s.threshold;
    } else {
        os << "no threshold supplied";
    }
    if (n < 3) os << "; log too short for a Cauchy tail";
    s.notes = os.str();
    return s;
}

}  // namespace heis::variational
