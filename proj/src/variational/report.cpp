#include "heis/variational/report.hpp"

#include <stdexcept>

namespace heis::variational {

using nlohmann::json;

namespace {

BoxGrid grid_from_json(const json& g, std::size_t n, const BoxGrid& fallback) {
    if (g.contains("axes")) {
        std::vector<Axis> axes;
        for (const auto& a : g.at("axes"))
            axes.push_back({a.at("lower").get<double>(), a.at("upper").get<double>(), a.at("count").get<std::size_t>()});
        return BoxGrid(axes);
    }
    const double half = g.value("half_width", fallback.axis(0).upper);
    const std::size_t count = g.value("count", fallback.count(0));
    return BoxGrid::cube(2 * n + 1, half, count);
}

json grid_json(const BoxGrid& g) {
    json axes = json::array();
    for (const auto& a : g.axes()) axes.push_back({{"lower", a.lower}, {"upper", a.upper}, {"count", a.count}});
    return {{"dim", g.dim()}, {"axes", axes}};
}

}  // namespace

KirchhoffProblem problem_from_json(const json& j) {
    KirchhoffProblem p = KirchhoffProblem::desk();
    p.n = j.value("n", p.n);
    p.p = j.value("p", p.p);
    p.lambda = j.value("lambda", p.lambda);
    if (j.contains("kirchhoff")) {
        const json& k = j.at("kirchhoff");
        const std::string fam = k.value("family", std::string("non_degenerate"));
        if (fam == "non_degenerate")
            p.M = KirchhoffM::non_degenerate(k.value("m0", 1.0), k.value("b", 1.0), k.value("kappa", 1.5));
        else if (fam == "degenerate")
            p.M = KirchhoffM::degenerate(k.value("m1", 1.0), k.value("kappa", 1.5));
        else
            throw std::invalid_argument("kirchhoff.family must be non_degenerate or degenerate");
    }
    if (j.contains("nonlinearity")) {
        const json& f = j.at("nonlinearity");
        Profile a;
        if (f.contains("weight")) {
            const json& w = f.at("weight");
            const std::string kind = w.value("kind", std::string("constant"));
            if (kind == "constant") a.kind = Profile::Kind::Constant;
            else if (kind == "koranyi_radial") a.kind = Profile::Kind::KoranyiRadial;
            else throw std::invalid_argument("nonlinearity.weight.kind must be constant or koranyi_radial");
            a.base = w.value("a0", 1.0);
            a.ell = w.value("ell", 1.0);
        }
        const double rg = f.value("r_g", 3.5);
        p.nonlinearity = GrowthNonlinearity(a, rg, f.value("theta", rg));
    }
    if (j.contains("potential")) {
        const json& v = j.at("potential");
        const std::string kind = v.value("kind", std::string("constant"));
        if (kind == "constant") p.V.kind = Potential::Kind::Constant;
        else if (kind == "koranyi_quadratic") p.V.kind = Potential::Kind::KoranyiQuadratic;
        else throw std::invalid_argument("potential.kind must be constant or koranyi_quadratic");
        p.V.V0 = v.value("V0", 1.0);
        p.V.v2 = v.value("v2", 0.0);
    }
    if (j.contains("grid")) p.grid = grid_from_json(j.at("grid"), p.n, p.grid);
    else if (p.n != 1) p.grid = BoxGrid::cube(2 * p.n + 1, 4.0, p.n == 2 ? 13 : 9);
    return p;
}

json to_json(const KirchhoffProblem& p) {
    json k;
    if (p.M.kind == KirchhoffM::Kind::NonDegenerate)
        k = {{"family", "non_degenerate"}, {"m0", p.M.m0}, {"b", p.M.b}, {"kappa", p.M.kappa}};
    else
        k = {{"family", "degenerate"}, {"m1", p.M.m1}, {"kappa", p.M.kappa}};
    const auto& a = p.nonlinearity.a;
    json w = {{"kind", a.kind == Profile::Kind::Constant ? "constant" : "koranyi_radial"}, {"a0", a.base}, {"ell", a.ell}};
    json v = {{"kind", p.V.kind == Potential::Kind::Constant ? "constant" : "koranyi_quadratic"},
              {"V0", p.V.V0},
              {"v2", p.V.v2}};
    return {{"n", p.n},
            {"Q", p.Q()},
            {"p", p.p},
            {"p_star", p.p_star()},
            {"lambda", p.lambda},
            {"kirchhoff", k},
            {"nonlinearity", {{"r_g", p.nonlinearity.r_g}, {"theta", p.nonlinearity.theta}, {"weight", w}}},
            {"potential", v},
            {"grid", grid_json(p.grid)}};
}

json to_json(const ValidationReport& v) {
    json items = json::array();
    for (const auto& i : v.items) items.push_back({{"name", i.name}, {"pass", i.pass}, {"detail", i.detail}});
    return {{"all_pass", v.all_pass()}, {"items", items}};
}

json to_json(const RayScan& r) {
    return {{"t_peak", r.t_peak},
            {"J_peak", r.J_peak},
            {"t_negative", r.t_negative},
            {"tail_strictly_decreasing", r.tail_strictly_decreasing},
            {"samples", r.t.size()}};
}

json to_json(const GeometryCertificate& g) {
    json rows = json::array();
    for (const auto& r : g.table) rows.push_back({{"rho", r.rho}, {"min_energy", r.min_energy}, {"max_energy", r.max_energy}});
    return {{"ok", g.ok}, {"rho", g.rho}, {"alpha", g.alpha}, {"table", rows}, {"diagnostics", g.diagnostics}};
}

json to_json(const FSResult& f) {
    return {{"value", f.value},
            {"start_quotient", f.start_quotient},
            {"iterations", f.iterations},
            {"converged", f.converged},
            {"stagnated", f.stagnated},
            {"monotone", f.monotone}};
}

json to_json(const MPResult& r) {
    json j = {{"energy", r.energy},
              {"grad_norm", r.grad_norm},
              {"grad_norm_initial", r.grad_norm0},
              {"grad_reduction", r.grad_norm > 0.0 ? r.grad_norm0 / r.grad_norm : 0.0},
              {"norm", r.norm},
              {"endpoint_norm", r.e_norm},
              {"iterations", r.energies.size()},
              {"converged", r.converged},
              {"stagnated", r.stagnated},
              {"flags",
               {{"grad_reduced_1e4", r.reduced_1e4},
                {"positive_norm", r.positive_norm},
                {"positive_energy", r.positive_energy}}},
              {"diagnostics", r.diagnostics}};
    j["threshold"] = r.threshold ? json(*r.threshold) : json(nullptr);
    j["fs_constant"] = r.fs_constant ? json(*r.fs_constant) : json(nullptr);
    return j;
}

json to_json(const PSSummary& s) {
    return {{"energy_cauchy", s.energy_cauchy},
            {"gradient_to_tol", s.gradient_to_tol},
            {"bounded", s.bounded},
            {"converged", s.converged()},
            {"below_threshold", s.below_threshold},
            {"final_energy", s.final_energy},
            {"threshold", s.threshold},
            {"energy_spread", s.energy_spread},
            {"notes", s.notes}};
}

}  // namespace heis::variational
