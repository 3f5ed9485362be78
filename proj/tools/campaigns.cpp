#include "campaigns.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "heis/field_io.hpp"
#include "heis/spectral/conventions.hpp"
#include "heis/spectral/landau.hpp"
#include "heis/spectral/report.hpp"
#include "heis/spectral/twisted.hpp"
#include "heis/spectral/weyl.hpp"
#include "heis/variational/report.hpp"

namespace heis::cli {

using nlohmann::json;
namespace sp = heis::spectral;
namespace va = heis::variational;

namespace {

class Stopwatch {
public:
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}
std::string le(double v) { return "<= " + short_number(v); }
std::string ge(double v) { return ">= " + short_number(v); }

void add_check(CampaignResult& r, std::string name, bool pass, double value, std::string limit) {
    r.checks.push_back({std::move(name), pass, value, std::move(limit)});
}

std::uint64_t seed_of(const RunOptions& o, const Section& root) {
    return o.seed ? *o.seed : root.get<std::uint64_t>("seed", 1);
}

BoxGrid override_counts(BoxGrid g, const std::optional<std::vector<std::size_t>>& counts) {
    if (!counts) return g;
    const auto& c = *counts;
    if (c.size() != 1 && c.size() != g.dim())
        throw ConfigError("--grid needs 1 or " + std::to_string(g.dim()) + " counts for this campaign");
    std::vector<Axis> axes = g.axes();
    for (std::size_t a = 0; a < axes.size(); ++a) axes[a].count = c.size() == 1 ? c[0] : c[a];
    return BoxGrid(axes);
}

BoxGrid cube_from(const Section& s, std::size_t dim, double half, std::size_t count) {
    s.allow({"half_width", "count"});
    return BoxGrid::cube(dim, s.get("half_width", half), s.get("count", count));
}

json conventions_block() {
    return {{"spectral", sp::to_json(sp::Convention{}, 4.0)},
            {"fields",
             {{"hn", "X_j = d_xj + 2 y_j d_t, Y_j = d_yj - 2 x_j d_t, [X_j, Y_j] = -T, T = 4 d_t"},
              {"h3", "X = d_x - 2 y d_t, Y = d_y + 2 x d_t, [X, Y] = +T, T = 4 d_t"}}},
            {"symbols", {{"kirchhoff_exponent", "kappa (printed tau)"}, {"growth_exponent", "r_g (printed r)"}}}};
}

json checks_json(const std::vector<Check>& cs) {
    json a = json::array();
    for (const auto& c : cs) a.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"limit", c.limit}});
    return a;
}

void finish(CampaignResult& r, const RunOptions& o, std::uint64_t seed, json result, json runtimes) {
    r.report = {{"schema", "heis." + r.kind + "_report"},
                {"schema_version", 1},
                {"kind", r.kind},
                {"seed", seed},
                {"config", o.config},
                {"conventions", conventions_block()},
                {"checks", checks_json(r.checks)},
                {"all_checks_pass", r.ok()},
                {"runtime_seconds", std::move(runtimes)},
                {"result", std::move(result)}};
}

std::vector<std::pair<unsigned, unsigned>> pairs_from(const Section& s, const std::string& key,
                                                      std::vector<std::pair<unsigned, unsigned>> fallback) {
    if (!s.has(key)) return fallback;
    std::vector<std::pair<unsigned, unsigned>> out;
    for (const auto& p : s.raw().at(key)) {
        if (!p.is_array() || p.size() != 2) throw ConfigError("config field '" + s.where(key) + "': expected [j, k] pairs");
        out.emplace_back(p[0].get<unsigned>(), p[1].get<unsigned>());
    }
    return out;
}

// ---------------------------------------------------------------- spectra

CampaignResult spectra(const RunOptions& o) {
    Section root(o.config, "");
    const Section s = root.sub("spectra"), tol = root.sub("tolerances");
    s.allow({"tau", "grid", "n_eig", "levels", "localize_factor", "residual", "search_pair", "kappa0"});
    tol.allow({"ladder", "residual", "refinement_min", "refinement_max", "eigen_residual"});
    const std::uint64_t seed = seed_of(o, root);
    CampaignResult r;
    r.kind = "spectra";
    Stopwatch sw;
    json rt;

    sp::SpectralReport rep;
    rep.tau = o.tau ? *o.tau : s.get("tau", 1.0);
    rep.grid = override_counts(cube_from(s.sub("grid"), 2, 8.0, 129), o.grid);
    const auto n_eig = s.get<std::size_t>("n_eig", 96);
    const auto levels = s.get<std::size_t>("levels", 3);
    const double ladder_tol = tol.get("ladder", 0.02), res_tol = tol.get("residual", 5e-3);

    const sp::TwistedOperator op = sp::assemble_twisted(rep.tau, rep.grid, +1);
    for (const auto& w : op.warnings) rep.notes.push_back(w);
    sp::EigenOptions eo;
    eo.seed = seed;
    const sp::EigenResult er = sp::lowest_eigenpairs(op.matrix, n_eig, eo);
    rep.eigenvalues = er.values;
    rep.eig_residuals = er.residuals;
    rep.runtimes.emplace_back("eigensolve", sw.lap());
    double max_eig_res = 0.0;
    for (std::size_t i = 0; i < er.values.size(); ++i)
        max_eig_res = std::max(max_eig_res, er.residuals[i] / std::max(1.0, std::abs(er.values[i])));
    add_check(r, "eigensolver_converged", er.converged, max_eig_res, le(tol.get("eigen_residual", 1e-6)));
    r.checks.back().pass = er.converged && max_eig_res <= tol.get("eigen_residual", 1e-6);

    rep.localized = sp::localized_indices(er, rep.grid, s.get("localize_factor", 4.5));
    std::vector<double> loc;
    for (auto i : rep.localized) loc.push_back(er.values[i]);
    bool fit_ok = true;
    try {
        rep.fit = sp::landau_structure_fit(loc, rep.tau, levels);
    } catch (const std::exception& e) {
        fit_ok = false;
        rep.notes.push_back(std::string("ladder fit failed: ") + e.what());
    }
    const double kappa0 = s.get("kappa0", rep.fit.kappa0_adjudicated.value_or(4.0));
    if (fit_ok) {
        add_check(r, "ladder_max_rel_deviation", rep.fit.max_rel_deviation <= ladder_tol, rep.fit.max_rel_deviation,
                  le(ladder_tol));
        add_check(r, "ladder_spacing_deviation", rep.fit.spacing_deviation <= ladder_tol, rep.fit.spacing_deviation,
                  le(ladder_tol));
    } else {
        add_check(r, "ladder_structure", false, 0.0, std::to_string(levels) + " clusters");
    }

    // Convention adjudication, then the residual table under the adjudicated convention.
    const Section res = s.sub("residual");
    res.allow({"box_half", "spacings", "pairs"});
    const double box = res.get("box_half", 5.0);
    const auto spacings = res.get<std::vector<double>>("spacings", {0.1, 0.05});
    const auto pairs = pairs_from(res, "pairs", {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    const auto search_pair = s.get<std::vector<unsigned>>("search_pair", {1, 0});
    if (search_pair.size() != 2) throw ConfigError("config field 'spectra.search_pair': expected [j, k]");
    sp::SearchOptions so;
    so.kappa0 = kappa0;
    bool search_ok = true;
    try {
        const auto sr = sp::convention_search(search_pair[0], search_pair[1], rep.tau, BoxGrid::cube(2, box, 101), so);
        rep.convention = sr.best;
        rep.search_residual = sr.residual;
    } catch (const sp::NoConventionFound& e) {
        search_ok = false;
        rep.notes.push_back(e.what());
    }
    add_check(r, "convention_found", search_ok, rep.search_residual, le(0.5));
    rep.runtimes.emplace_back("convention_search", sw.lap());

    std::vector<std::vector<double>> byh;
    for (double h : spacings) {
        const auto count = static_cast<std::size_t>(2 * std::lround(box / h) + 1);
        const BoxGrid gg = BoxGrid::cube(2, box, count);
        std::vector<double> row;
        for (const auto& [j, k] : pairs) {
            const auto rr = sp::eigenfunction_residual(j, k, rep.tau, gg, rep.convention, kappa0);
            rep.residuals.push_back({j, k, gg.spacing(0), rr.relative, rr.printed_scale});
            row.push_back(rr.relative);
        }
        byh.push_back(row);
    }
    rep.runtimes.emplace_back("residuals", sw.lap());
    if (!byh.empty()) {
        double worst = 0.0;
        for (double v : byh.back()) worst = std::max(worst, v);
        add_check(r, "residual_finest_h", worst <= res_tol, worst, le(res_tol));
    }
    if (byh.size() >= 2) {
        double fmin = 1e300, fmax = 0.0;
        for (std::size_t a = 0; a + 1 < byh.size(); ++a)
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                const double f = byh[a][i] / byh[a + 1][i];
                fmin = std::min(fmin, f);
                fmax = std::max(fmax, f);
            }
        const double lo = tol.get("refinement_min", 3.5), hi = tol.get("refinement_max", 4.5);
        add_check(r, "residual_refinement_factor_min", fmin >= lo, fmin, ge(lo));
        add_check(r, "residual_refinement_factor_max", fmax <= hi, fmax, le(hi));
    }

    CsvTable eig({"index", "eigenvalue", "residual", "localized"});
    for (std::size_t i = 0; i < er.values.size(); ++i) {
        const bool l = std::find(rep.localized.begin(), rep.localized.end(), i) != rep.localized.end();
        eig.add({i, er.values[i], er.residuals[i], l ? 1 : 0});
    }
    CsvTable ladder({"k", "center", "predicted", "relative_deviation", "size"});
    for (std::size_t k = 0; k < rep.fit.clusters.size(); ++k) {
        const auto& c = rep.fit.clusters[k];
        const double pred = kappa0 * static_cast<double>(2 * k + 1) * std::abs(rep.tau);
        ladder.add({k, c.center, pred, std::abs(c.center - pred) / pred, c.size});
    }
    CsvTable resid({"j", "k", "h", "relative_residual", "printed_scale_residual"});
    for (const auto& row : rep.residuals) resid.add({row.j, row.k, row.h, row.relative, row.printed_scale});
    r.tables.emplace_back("eigenvalues", eig);
    r.tables.emplace_back("ladder", ladder);
    r.tables.emplace_back("residuals", resid);
    for (const auto& [k, v] : rep.runtimes) rt[k] = v;
    finish(r, o, seed, sp::to_json(rep), rt);
    return r;
}

// ---------------------------------------------------------------- weyl

CampaignResult weyl(const RunOptions& o) {
    Section root(o.config, "");
    const Section s = root.sub("weyl"), tol = root.sub("tolerances");
    s.allow({"grid", "n_eig", "widths", "ladder_levels", "off_ladder_factor", "limit_mode", "kappa0", "tau_start"});
    tol.allow({"final_residual", "off_ladder_ratio"});
    const std::uint64_t seed = seed_of(o, root);
    CampaignResult r;
    r.kind = "weyl";
    Stopwatch sw;
    json rt;

    const BoxGrid g = override_counts(cube_from(s.sub("grid"), 2, 8.0, 129), o.grid);
    const auto widths = s.get<std::vector<double>>("widths", {2, 4, 8, 16});
    const auto levels = s.get<std::vector<unsigned>>("ladder_levels", {0, 1, 2});
    const double off_factor = s.get("off_ladder_factor", 1.5);
    const double final_tol = tol.get("final_residual", 0.1), ratio_tol = tol.get("off_ladder_ratio", 3.0);
    sp::WeylOptions wo;
    wo.kappa0 = s.get("kappa0", 4.0);
    wo.tau_start = s.get("tau_start", 0.25);

    sp::EigenOptions eo;
    eo.seed = seed;
    const sp::ReferenceModes modes = sp::reference_modes(g, s.get<std::size_t>("n_eig", 96), +1, eo);
    rt["reference_modes"] = sw.lap();
    double wmax = 0.0;
    for (double w : widths) wmax = std::max(wmax, w);
    const BoxGrid g3({g.axis(0), g.axis(1), Axis{-8.0 * wmax, 8.0 * wmax, 3}});

    CsvTable table({"probe", "lambda", "k", "width", "tau0", "sigma_t", "residual"});
    json probes = json::array();
    auto record = [&](const std::string& name, const sp::WeylProbeResult& p) {
        for (std::size_t i = 0; i < p.widths.size(); ++i)
            table.add({name, p.lambda, p.k, p.widths[i], p.tau0[i], p.sigma_t[i], p.residuals[i]});
        json j = sp::to_json(p);
        j["probe"] = name;
        probes.push_back(j);
    };
    auto check_probe = [&](const std::string& name, const sp::WeylProbeResult& p) {
        add_check(r, name + "_strictly_decreasing", p.strictly_decreasing, p.residuals.back(), "strict");
        add_check(r, name + "_final", p.residuals.back() <= final_tol, p.residuals.back(), le(final_tol));
    };
    for (unsigned k : levels) {
        if (k >= modes.levels.size()) throw ConfigError("weyl.ladder_levels: level " + std::to_string(k) + " not resolved");
        const double lam = wo.kappa0 * static_cast<double>(2 * k + 1);
        const auto p = sp::weyl_probe(lam, k, widths, g3, modes, wo);
        const std::string name = "ladder_k" + std::to_string(k);
        record(name, p);
        check_probe(name, p);
        sp::WeylOptions off = wo;
        off.tau0_override = 1.0;
        const auto q = sp::weyl_probe(off_factor * lam, k, widths, g3, modes, off);
        record("off_ladder_k" + std::to_string(k), q);
        const double ratio = q.residuals.back() / p.residuals.back();
        add_check(r, "off_ladder_k" + std::to_string(k) + "_ratio", ratio >= ratio_tol, ratio, ge(ratio_tol));
    }
    if (s.get("limit_mode", true)) {
        sp::WeylOptions lm = wo;
        lm.limit_mode = true;
        const auto p = sp::weyl_probe(0.0, 0, widths, g3, modes, lm);
        record("limit_lambda0", p);
        check_probe("limit_lambda0", p);
    }
    if (o.lambda) {
        const auto p = sp::weyl_probe(*o.lambda, 0, widths, g3, modes, wo);
        record("custom", p);
        check_probe("custom", p);
    }
    rt["probes"] = sw.lap();
    r.tables.emplace_back("probes", table);
    json levels_json = json::array();
    for (const auto& c : modes.levels) levels_json.push_back({{"center", c.center}, {"size", c.size}});
    finish(r, o, seed, {{"variant", "H3"}, {"reference_levels", levels_json}, {"probes", probes}}, rt);
    return r;
}

// ---------------------------------------------------------------- gram

WignerShift shift_from(const std::string& s, const std::string& where) {
    if (s == "symmetric") return WignerShift::Symmetric;
    if (s == "printed") return WignerShift::Printed;
    throw ConfigError("config field '" + where + "': expected symmetric or printed");
}

CampaignResult gram(const RunOptions& o) {
    Section root(o.config, "");
    const Section s = root.sub("gram"), tol = root.sub("tolerances");
    s.allow({"J", "K", "taus", "shift", "printed_comparison"});
    tol.allow({"gram_deviation"});
    const std::uint64_t seed = seed_of(o, root);
    CampaignResult r;
    r.kind = "gram";
    Stopwatch sw;
    const auto J = s.get<unsigned>("J", 3), K = s.get<unsigned>("K", 3);
    const auto taus = o.tau ? std::vector<double>{*o.tau} : s.get<std::vector<double>>("taus", {0.5, 1.0, 2.0});
    const auto shift = shift_from(s.get<std::string>("shift", "symmetric"), "gram.shift");
    const bool cmp = s.get("printed_comparison", true);
    const double dev_tol = tol.get("gram_deviation", 1e-6);

    CsvTable summary({"tau", "shift", "max_deviation", "max_tail"});
    CsvTable entries({"tau", "j1", "k1", "j2", "k2", "real", "imag"});
    json results = json::array();
    for (double tau : taus) {
        const auto g = sp::gram_matrix(J, K, tau, shift);
        summary.add({tau, wigner_shift_name(shift), g.max_deviation, g.max_tail});
        for (Eigen::Index a = 0; a < g.G.rows(); ++a)
            for (Eigen::Index b = 0; b < g.G.cols(); ++b) {
                const auto& la = g.labels[static_cast<std::size_t>(a)];
                const auto& lb = g.labels[static_cast<std::size_t>(b)];
                entries.add({tau, la.first, la.second, lb.first, lb.second, g.G(a, b).real(), g.G(a, b).imag()});
            }
        add_check(r, "gram_deviation_tau_" + short_number(tau), g.max_deviation <= dev_tol, g.max_deviation, le(dev_tol));
        json j = sp::to_json(g);
        j["tau"] = tau;
        results.push_back(j);
        if (cmp && shift != WignerShift::Printed) {
            const auto gp = sp::gram_matrix(J, K, tau, WignerShift::Printed);
            summary.add({tau, wigner_shift_name(WignerShift::Printed), gp.max_deviation, gp.max_tail});
            json jp = sp::to_json(gp);
            jp["tau"] = tau;
            jp["comparison_only"] = true;
            results.push_back(jp);
        }
    }
    r.tables.emplace_back("summary", summary);
    r.tables.emplace_back("entries", entries);
    finish(r, o, seed, {{"J", J}, {"K", K}, {"gram", results}}, {{"gram", sw.lap()}});
    return r;
}

// ---------------------------------------------------------------- folland-stein

CampaignResult folland_stein(const RunOptions& o) {
    Section root(o.config, "");
    const Section s = root.sub("folland_stein");
    s.allow({"n", "p", "grid", "budget", "tol", "dump_field"});
    const std::uint64_t seed = seed_of(o, root);
    CampaignResult r;
    r.kind = "folland-stein";
    Stopwatch sw;
    const auto n = s.get<std::size_t>("n", 1);
    const BoxGrid g = override_counts(cube_from(s.sub("grid"), 2 * n + 1, 4.0, 33), o.grid);
    va::FSOptions fo;
    fo.budget = s.get<std::size_t>("budget", 300);
    fo.tol = s.get("tol", 1e-7);
    fo.seed = seed;
    const double p = s.get("p", 2.0);
    const va::FSResult fs = va::folland_stein_constant(g, p, fo);
    add_check(r, "monotone_descent", fs.monotone, fs.value, "non-increasing");
    add_check(r, "estimate_below_start", fs.value <= fs.start_quotient, fs.value, le(fs.start_quotient));
    CsvTable trace({"iteration", "quotient"});
    for (std::size_t i = 0; i < fs.quotients.size(); ++i) trace.add({i, fs.quotients[i]});
    r.tables.emplace_back("trace", trace);
    if (s.get("dump_field", false)) r.extra_files.emplace_back("minimizer.hfld", "");
    json res = va::to_json(fs);
    res["p"] = p;
    res["p_star"] = (2.0 * n + 2.0) * p / (2.0 * n + 2.0 - p);
    res["grid"] = sp::to_json(g);
    res["note"] = "desk-scale estimate of the infimum on the truncated finite-difference space";
    finish(r, o, seed, res, {{"folland_stein", sw.lap()}});
    if (!r.extra_files.empty()) {
        std::ostringstream os;
        write_field(os, fs.field);
        r.extra_files.back().second = os.str();
    }
    return r;
}

// ---------------------------------------------------------------- solve

CampaignResult solve(const RunOptions& o) {
    Section root(o.config, "");
    const Section ps = root.sub("problem"), sv = root.sub("solver"), fss = root.sub("folland_stein"),
                  gs = root.sub("geometry"), th = root.sub("threshold");
    ps.allow({"n", "p", "lambda", "kirchhoff", "nonlinearity", "potential", "grid"});
    sv.allow({"nodes", "tol_rel", "max_iter", "bump_width", "ray_t_max", "ray_steps", "endpoint_scale", "dump_field"});
    fss.allow({"budget", "tol"});
    gs.allow({"samples", "rho_max", "levels"});
    th.allow({"m_coef"});
    const std::uint64_t seed = seed_of(o, root);
    CampaignResult r;
    r.kind = "solve";
    Stopwatch sw;
    json rt;

    va::KirchhoffProblem prob;
    try {
        prob = va::problem_from_json(ps.raw());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config section 'problem': ") + e.what());
    } catch (const std::invalid_argument& e) {
        // Constructor invariants (e.g. theta > r_g) are reported as validation failures.
        r.validation_failed = true;
        add_check(r, "problem_construction", false, 0.0, e.what());
        finish(r, o, seed, {{"error", e.what()}}, rt);
        return r;
    }
    prob.grid = override_counts(prob.grid, o.grid);
    if (o.lambda) prob.lambda = *o.lambda;

    const va::ValidationReport vr = va::validate_exponents(prob);
    for (const auto& it : vr.items) add_check(r, "validate_" + it.name, it.pass, 0.0, it.detail);
    if (!vr.all_pass()) {
        r.validation_failed = true;
        finish(r, o, seed, {{"problem", va::to_json(prob)}, {"validation", va::to_json(vr)}}, rt);
        return r;
    }

    const va::Discretization d(prob);
    const auto v0 = va::unit_bump(d, sv.get("bump_width", 1.0));
    va::RayScan ray;
    bool ray_ok = true;
    try {
        ray = va::ray_scan(d, v0, sv.get("ray_t_max", 10.0), sv.get<std::size_t>("ray_steps", 400));
    } catch (const std::runtime_error& e) {
        ray_ok = false;
        add_check(r, "ray_sign_change", false, 0.0, e.what());
    }
    rt["ray_scan"] = sw.lap();
    json result = {{"problem", va::to_json(prob)}, {"validation", va::to_json(vr)}};
    if (!ray_ok) {
        finish(r, o, seed, result, rt);
        return r;
    }
    add_check(r, "ray_t_peak_positive", ray.t_peak > 0.0, ray.t_peak, "> 0");
    add_check(r, "ray_sign_change", ray.t_negative > 0.0, ray.t_negative, "J < 0 before t_max");
    add_check(r, "ray_tail_strictly_decreasing", ray.tail_strictly_decreasing, ray.J.back(), "strict");
    CsvTable ray_csv({"t", "energy"});
    for (std::size_t i = 0; i < ray.t.size(); ++i) ray_csv.add({ray.t[i], ray.J[i]});
    r.tables.emplace_back("ray", ray_csv);

    va::GeometryOptions go;
    go.samples = gs.get<std::size_t>("samples", 24);
    go.rho_max = gs.get("rho_max", 1.0);
    go.levels = gs.get<std::size_t>("levels", 12);
    go.seed = seed;
    const auto geo = va::mp_geometry_check(d, go);
    add_check(r, "geometry_rho_alpha_positive", geo.ok && geo.rho > 0.0 && geo.alpha > 0.0, geo.alpha, "rho, alpha > 0");
    CsvTable geo_csv({"rho", "min_energy", "max_energy"});
    for (const auto& row : geo.table) geo_csv.add({row.rho, row.min_energy, row.max_energy});
    r.tables.emplace_back("geometry", geo_csv);
    rt["geometry"] = sw.lap();

    va::FSOptions fo;
    fo.budget = fss.get<std::size_t>("budget", 300);
    fo.tol = fss.get("tol", 1e-7);
    fo.seed = seed;
    const auto fs = va::folland_stein_constant(prob.grid, prob.p, fo);
    std::optional<double> m_coef;
    if (th.has("m_coef") && !th.raw().at("m_coef").is_null()) m_coef = th.get("m_coef", 0.0);
    const double threshold = va::mp_threshold(prob, fs.value, m_coef);
    rt["folland_stein"] = sw.lap();

    std::vector<double> e(v0.size());
    const double scale = sv.get("endpoint_scale", 1.2) * ray.t_negative;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = scale * v0[i];
    va::MPOptions mo;
    mo.nodes = sv.get<std::size_t>("nodes", 16);
    mo.tol_rel = sv.get("tol_rel", 1e-6);
    mo.max_iter = sv.get<std::size_t>("max_iter", 500);
    va::MPResult mp = va::mountain_pass_solve(d, e, mo);
    mp.threshold = threshold;
    mp.fs_constant = fs.value;
    rt["mountain_pass"] = sw.lap();
    const va::PSSummary ps_sum = va::ps_monitor(mp);

    const double reduction = mp.grad_norm > 0.0 ? mp.grad_norm0 / mp.grad_norm : 0.0;
    add_check(r, "mp_grad_reduced_1e4", mp.reduced_1e4, reduction, ge(1e4));
    add_check(r, "mp_norm_positive", mp.positive_norm, mp.norm, "> 0");
    add_check(r, "mp_energy_positive", mp.positive_energy, mp.energy, "> 0");
    add_check(r, "mp_energy_at_least_alpha", geo.ok && mp.energy >= geo.alpha, mp.energy, ge(geo.alpha));
    add_check(r, "ps_energy_cauchy", ps_sum.energy_cauchy, ps_sum.energy_spread, "tail spread <= 1e-08");
    add_check(r, "ps_gradient_to_tol", ps_sum.gradient_to_tol, mp.grad_norm, "<= 1e-4 x initial and decreased");
    add_check(r, "ps_iterates_bounded", ps_sum.bounded, mp.norm, "norms <= 2 |e|");

    CsvTable log({"iteration", "energy", "grad_norm", "norm"});
    for (std::size_t i = 0; i < mp.energies.size(); ++i)
        log.add({mp.iterations[i], mp.energies[i], mp.grad_norms[i], mp.norms[i]});
    r.tables.emplace_back("ps_log", log);
    if (sv.get("dump_field", false)) {
        std::ostringstream os;
        write_field(os, mp.u);
        r.extra_files.emplace_back("u_star.hfld", os.str());
    }

    // J on the rho-sphere along u*: an upper bound for the true sphere infimum
    json sphere_probe = nullptr;
    if (geo.ok && mp.norm > 0.0) {
        std::vector<double> w = mp.u.values();
        const double f = geo.rho / mp.norm;
        for (auto& x : w) x *= f;
        sphere_probe = {{"rho", geo.rho}, {"energy", d.energy(w)}, {"alpha", geo.alpha}};
    }
    result["ray_scan"] = va::to_json(ray);
    result["geometry"] = va::to_json(geo);
    result["sphere_probe_along_u_star"] = sphere_probe;
    result["folland_stein"] = va::to_json(fs);
    result["mountain_pass"] = va::to_json(mp);
    result["ps_monitor"] = va::to_json(ps_sum);
    result["threshold_comparison"] = {{"energy", mp.energy},
                                      {"threshold", threshold},
                                      {"fs_constant", fs.value},
                                      {"m_coef", m_coef ? json(*m_coef) : json(nullptr)},
                                      {"energy_below_threshold", ps_sum.below_threshold}};
    finish(r, o, seed, result, rt);
    return r;
}

// ---------------------------------------------------------------- conventions

CampaignResult conventions(const RunOptions& o) {
    Section root(o.config, "");
    const Section s = root.sub("conventions");
    s.allow({"pairs", "tau", "grid", "kappa0"});
    const std::uint64_t seed = seed_of(o, root);
    CampaignResult r;
    r.kind = "conventions";
    Stopwatch sw;
    const double tau = o.tau ? *o.tau : s.get("tau", 1.0);
    const BoxGrid g = override_counts(cube_from(s.sub("grid"), 2, 5.0, 101), o.grid);
    const auto pairs = pairs_from(s, "pairs", {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    sp::SearchOptions so;
    so.kappa0 = s.get("kappa0", 4.0);

    CsvTable table({"j", "k", "scaling_s", "angular_sign", "wigner_shift", "residual", "best"});
    json results = json::array();
    std::optional<sp::Convention> first;
    bool agree = true;
    for (const auto& [j, k] : pairs) {
        const std::string tag = "pair_" + std::to_string(j) + "_" + std::to_string(k);
        try {
            const auto sr = sp::convention_search(j, k, tau, g, so);
            for (const auto& c : sr.table) {
                const bool best = c.convention.s == sr.best.s && c.convention.angular_sign == sr.best.angular_sign &&
                                  c.convention.shift == sr.best.shift;
                table.add({j, k, c.convention.s, c.convention.angular_sign, wigner_shift_name(c.convention.shift),
                           c.residual, best ? 1 : 0});
            }
            add_check(r, tag + "_found", true, sr.residual, le(0.5));
            if (!first) first = sr.best;
            else if (first->s != sr.best.s || first->shift != sr.best.shift ||
                     (!sr.sign_tie && first->angular_sign != sr.best.angular_sign))
                agree = false;
            results.push_back({{"j", j}, {"k", k}, {"best", sp::to_json(sr.best, so.kappa0)}, {"residual", sr.residual},
                               {"sign_tie", sr.sign_tie}});
        } catch (const sp::NoConventionFound& e) {
            add_check(r, tag + "_found", false, 0.0, e.what());
        }
    }
    add_check(r, "pairs_agree_on_convention", agree && first.has_value(), 0.0, "same s, shift and sign");
    r.tables.emplace_back("table", table);
    json res = {{"tau", tau}, {"grid", sp::to_json(g)}, {"pairs", results}};
    if (first) res["adjudicated"] = sp::to_json(*first, so.kappa0);
    finish(r, o, seed, res, {{"search", sw.lap()}});
    return r;
}

}  // namespace

bool CampaignResult::ok() const {
    if (validation_failed) return false;
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

const std::vector<std::string>& verbs() {
    static const std::vector<std::string> v{"spectra", "weyl", "gram", "folland-stein", "solve", "conventions"};
    return v;
}

CampaignResult run_campaign(const std::string& verb, const RunOptions& opt) {
    if (!opt.config.is_object()) throw ConfigError("config root must be an object");
    Section root(opt.config, "");
    const std::string block = verb == "folland-stein" ? "folland_stein" : verb;
    if (verb == "solve")
        root.allow({"kind", "seed", "output_dir", "problem", "solver", "folland_stein", "geometry", "threshold",
                    "tolerances"});
    else
        root.allow({"kind", "seed", "output_dir", "tolerances", block.c_str()});
    if (root.has("kind") && root.get<std::string>("kind", verb) != verb)
        throw ConfigError("config field 'kind': '" + root.get<std::string>("kind", "") + "' does not match verb " + verb);
    if (verb == "spectra") return spectra(opt);
    if (verb == "weyl") return weyl(opt);
    if (verb == "gram") return gram(opt);
    if (verb == "folland-stein") return folland_stein(opt);
    if (verb == "solve") return solve(opt);
    if (verb == "conventions") return conventions(opt);
    throw ConfigError("unknown experiment kind " + verb);
}

std::string summary_text(const CampaignResult& r) {
    std::ostringstream os;
    os << r.kind << ": " << (r.ok() ? "all checks passed" : "CHECK FAILURES") << "\n";
    for (const auto& c : r.checks)
        os << (c.pass ? "  PASS  " : "  FAIL  ") << c.name << "  value=" << short_number(c.value) << "  limit "
           << c.limit << "\n";
    return os.str();
}

void write_outputs(const CampaignResult& r, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + out_dir + ": " + ec.message());
    const std::string stem = (fs::path(out_dir) / r.kind).string();
    {
        std::ofstream f(stem + "_report.json");
        if (!f) throw std::runtime_error("cannot write " + stem + "_report.json");
        f << r.report.dump(2) << "\n";
    }
    {
        std::ofstream f(stem + "_summary.txt");
        if (!f) throw std::runtime_error("cannot write " + stem + "_summary.txt");
        f << summary_text(r);
    }
    for (const auto& [name, t] : r.tables) t.write(stem + "_" + name + ".csv");
    for (const auto& [name, bytes] : r.extra_files) {
        std::ofstream f(stem + "_" + name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + stem + "_" + name);
        f << bytes;
    }
}

std::string resolve_out_dir(const std::string& flag, const json& config) {
    if (!flag.empty()) return flag;
    if (config.is_object() && config.contains("output_dir") && config.at("output_dir").is_string())
        return config.at("output_dir").get<std::string>();
    if (const char* env = std::getenv("HEIS_OUT_DIR"); env && *env) return env;
    return "heis_out";
}

}  // namespace heis::cli
