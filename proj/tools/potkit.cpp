// potkit command-line front end. Every command reads a JSON config, runs one
// library operation and writes a report {command, config, result, verdict,
// error_bar, traces, version}. Exit codes: 0 positive verdict, 2 negative
// verdict (the witness is in the report), 1 usage or data error.
#include <potkit/criteria.hpp>
#include <potkit/jensen.hpp>
#include <potkit/superlap.hpp>
#include <potkit/testfn.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>

using json = nlohmann::json;
using namespace potkit;

namespace
{

struct RunConfig
{
    std::string command;
    std::string config_path;
    std::string zeros_path;
    std::string format = "json";
    std::string out;
    std::size_t quad_n = 2048;
    double grid_h = 1e-3;
    double tol = 1e-6;
    std::uint64_t seed = 0;
    json cfg = json::object();
};

struct Report
{
    json result = json::object();
    std::string verdict = "ok";
    double error_bar = 0.0;
    json traces = json::object();
};

// non-finite doubles have no JSON literal
json num(double x)
{
    if (std::isfinite(x))
        return x;
    return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

json num(const ExtendedReal& e)
{
    json j{{"value", num(e.value)}, {"error", num(e.error)}};
    if (!e.evidence.empty())
        j["evidence"] = e.evidence;
    return j;
}

json pair(Complex z) { return json::array({num(z.real()), num(z.imag())}); }

Complex point(const json& j)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2)
        return {j[0].get<double>(), j[1].get<double>()};
    throw Error("expected a point [x, y], got " + j.dump());
}

std::vector<Complex> points(const json& j)
{
    std::vector<Complex> out;
    for (const auto& p : j)
        out.push_back(point(p));
    return out;
}

const json& need(const json& j, const char* key)
{
    if (!j.contains(key))
        throw Error(std::string("config is missing \"") + key + "\"");
    return j.at(key);
}

Domain domain(const json& j)
{
    const auto type = need(j, "type").get<std::string>();
    const Complex c = j.contains("center") ? point(j["center"]) : Complex{};
    if (type == "plane")
        return Plane{};
    if (type == "disc")
        return Disc{c, need(j, "radius").get<double>()};
    if (type == "exterior_disc")
        return ExteriorDisc{c, need(j, "radius").get<double>()};
    if (type == "annulus")
        return Annulus{need(j, "r1").get<double>(), need(j, "r2").get<double>(), c};
    if (type == "half_plane")
        return HalfPlane{j.contains("point") ? point(j["point"]) : Complex{},
                         j.contains("normal") ? point(j["normal"]) : Complex{1.0, 0.0}};
    throw Error("unknown domain type '" + type + "'");
}

// m(r) for the profile kinds the configs use
RadialProfile profile(const json& j)
{
    const auto kind = need(j, "kind").get<std::string>();
    const double r1 = j.value("r1", 0.0);
    const double r2 = j.contains("r2") ? j["r2"].get<double>() : inf;
    if (kind == "power")
        return RadialProfile::power(j.value("c", 1.0), need(j, "p").get<double>(), r1, r2);
    if (kind == "log")
        return RadialProfile::logarithmic(j.value("c", 1.0), j.value("k", 0.0), r1, r2);
    if (kind == "affine") {
        const double a = need(j, "a").get<double>(), b = j.value("b", 0.0);
        return RadialProfile([a, b](double r) { return a * r + b; }, r1, r2, [a](double) { return a; },
                             [](double) { return 0.0; }, "affine");
    }
    if (kind == "log1p") {
        // n log(1 + r) + c: the Bezout majorant for degree n
        const double n = need(j, "n").get<double>(), c = j.value("c", 0.0);
        return RadialProfile([n, c](double r) { return n * std::log1p(r) + c; }, r1, r2,
                             [n](double r) { return n / (1 + r); }, [n](double r) { return -n / ((1 + r) * (1 + r)); },
                             "log1p");
    }
    if (kind == "abs_log")
        return RadialProfile([](double r) { return std::abs(std::log(r)); }, r1, r2, {}, {}, "abs_log");
    if (kind == "table")
        return RadialProfile::table(need(j, "r").get<std::vector<double>>(), need(j, "m").get<std::vector<double>>());
    throw Error("unknown profile kind '" + kind + "'");
}

// d(t) = c t^p
RealFn density(const json& j)
{
    const double c = j.value("c", 1.0), p = need(j, "power").get<double>();
    return [c, p](double t) { return c * std::pow(t, p); };
}

RadialVariant variant(const json& j)
{
    const auto v = j.value("variant", std::string("plane"));
    if (v == "plane")
        return PlaneVariant{j.value("R0", 1.0)};
    if (v == "disc")
        return DiscVariant{j.value("r0", 0.5)};
    if (v == "annulus")
        return AnnulusVariant{need(j, "r1").get<double>(), need(j, "r_in").get<double>(), need(j, "r_out").get<double>(),
                              need(j, "r2").get<double>()};
    throw Error("unknown variant '" + v + "'");
}

TestFunction test_function(const json& j)
{
    const auto kind = need(j, "kind").get<std::string>();
    if (kind == "log") {
        // log(R/|z - c|) on D(c, R) with hole D(c, r0)
        const Complex c = j.contains("center") ? point(j["center"]) : Complex{};
        const double R = j.value("radius", 1.0), r0 = need(j, "hole").get<double>();
        return {[c, R](Complex z) { return std::log(R / std::abs(z - c)); }, Disc{c, R}, Disc{c, r0},
                std::log(R / r0), "log(R/|z-c|)", {}};
    }
    if (kind == "radial")
        return radial_test_function(density(need(j, "density")), variant(j));
    if (kind == "reciprocal") {
        const double r0 = need(j, "hole").get<double>();
        return {[](Complex z) { return 1.0 / std::abs(z) - 1.0; }, Disc{{}, 1.0}, Disc{{}, r0}, 1.0 / r0 - 1.0,
                "1/|z| - 1", {}};
    }
    if (kind == "one_minus_abs") {
        // superharmonic: the validator must refuse it
        const double r0 = need(j, "hole").get<double>();
        return {[](Complex z) { return 1.0 - std::abs(z); }, Disc{{}, 1.0}, Disc{{}, r0}, 1.0 - r0, "1 - |z|", {}};
    }
    throw Error("unknown test function kind '" + kind + "'");
}

HoloModel model(const json& j)
{
    const auto kind = need(j, "kind").get<std::string>();
    if (kind == "blaschke")
        return HoloModel::blaschke(points(need(j, "zeros")));
    if (kind == "polynomial")
        return HoloModel::polynomial(points(need(j, "coefficients")));
    if (kind == "roots")
        return HoloModel::from_roots(points(need(j, "roots")), j.contains("lead") ? point(j["lead"]) : Complex{1.0});
    if (kind == "sine")
        return HoloModel::scaled_sine(j.value("a", 1.0));
    if (kind == "sine_product")
        return HoloModel::canonical_product(ZeroLaw::sine(), j.value("N", 10000L));
    throw Error("unknown model kind '" + kind + "'");
}

ModulusLaw law(const json& j)
{
    const auto kind = need(j, "kind").get<std::string>();
    const double c = j.value("c", 1.0), p = j.value("p", 1.0);
    ModulusLaw out;
    out.first = j.value("first", 1L);
    if (j.contains("last"))
        out.last = j["last"].get<long>();
    if (kind == "power") {
        out.name = "c k^p";
        out.modulus = [c, p](double k) { return c * std::pow(k, p); };
    } else if (kind == "one_minus") {
        out.name = "1 - c/k^p";
        out.modulus = [c, p](double k) { return 1.0 - c / std::pow(k, p); };
    } else if (kind == "exp") {
        out.name = "exp(c k)";
        out.modulus = [c](double k) { return std::exp(c * k); };
    } else {
        throw Error("unknown law kind '" + kind + "'");
    }
    return out;
}

// A zero file is a finite prefix; the law beyond it continues the power fit
// of the last half of the file. gap(k) is |z_k| (plane) or 1 - |z_k| (disc).
struct FittedLaw
{
    ModulusLaw law;
    double c = 0.0, p = 0.0;
    std::size_t prefix = 0;
};

FittedLaw fit_zero_file(const std::string& path, bool disc)
{
    std::ifstream is(path);
    if (!is)
        throw Error("cannot open zero file " + path);
    const auto zs = ZeroSequence::read_csv(is).sorted_by_modulus();
    std::vector<double> r;
    for (const auto& z : zs.zeros())
        for (int m = 0; m < z.multiplicity; ++m)
            r.push_back(std::abs(z.z));
    if (r.empty())
        throw Error("zero file is empty");
    FittedLaw f;
    f.prefix = r.size();
    auto gap = [disc](double x) { return disc ? 1.0 - x : x; };
    if (r.size() >= 8) {
        // least squares of log gap against log k
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const std::size_t lo = r.size() / 2;
        const double n = static_cast<double>(r.size() - lo);
        for (std::size_t i = lo; i < r.size(); ++i) {
            const double x = std::log(static_cast<double>(i + 1)), y = std::log(gap(r[i]));
            sx += x, sy += y, sxx += x * x, sxy += x * y;
        }
        f.p = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        f.c = std::exp((sy - f.p * sx) / n);
    }
    f.law.name = path;
    f.law.first = 1;
    const double c = f.c, p = f.p;
    if (r.size() < 8)
        f.law.last = static_cast<long>(r.size());
    f.law.modulus = [r, c, p, disc](double k) {
        const auto i = static_cast<std::size_t>(std::llround(k));
        if (i >= 1 && i <= r.size() && k == std::floor(k))
            return r[i - 1];
        const double g = c * std::pow(k, p);
        return disc ? 1.0 - g : g;
    };
    return f;
}

json verdict_json(const ConvergenceVerdict& v)
{
    json t = json::array();
    for (const auto& [k, s] : v.trace)
        t.push_back({{"N", k}, {"partial_sum", num(s)}});
    json j{{"classification", v.classification()}, {"partial_sums", t}};
    if (v.converges) {
        j["value"] = num(v.value);
        j["tail_bound"] = num(v.tail_bound);
    } else {
        j["evidence"] = v.evidence;
    }
    return j;
}

void fill(Report& rep, const MajorizationReport& m)
{
    rep.result = {{"form", m.form}, {"lhs", num(m.lhs)}, {"rhs", num(m.rhs)}, {"slack", num(m.slack)},
                  {"C", num(m.C)},  {"Cbar", num(m.Cbar)}};
    json echo = json::object();
    for (const auto& [k, v] : m.config)
        echo[k] = v;
    rep.result["setup"] = echo;
    for (const auto& [k, v] : m.traces)
        rep.traces[k] = num(v);
    rep.verdict = m.verdict;
    rep.error_bar = m.error_bar;
}

// ---------------------------------------------------------------------------
// commands

Report run_green(const RunConfig& rc)
{
    const Domain d = domain(need(rc.cfg, "domain"));
    const GreenFunction g(d, point(need(rc.cfg, "pole")));
    Report rep;
    json vals = json::array();
    for (Complex z : points(need(rc.cfg, "points")))
        vals.push_back({{"z", pair(z)}, {"g", num(g(z))}});
    rep.result["values"] = vals;
    return rep;
}

Report run_radial_riesz(const RunConfig& rc)
{
    const RadialProfile p = profile(need(rc.cfg, "profile"));
    Report rep;
    json rings = json::array();
    for (double r : rc.cfg.value("radii", std::vector<double>{}))
        rings.push_back({{"r", r}, {"n", num(ring_mass(p, r))}});
    rep.result["ring_mass"] = rings;
    const auto span = rc.cfg.value("log_convex_on", std::vector<double>{});
    if (span.size() == 2) {
        const auto lc = validate_log_convex([&](double r) { return p(r); }, span[0], span[1], 257, rc.tol);
        rep.result["log_convex"] = {{"valid", lc.valid}, {"worst", num(lc.worst)}, {"triple", lc.triple}};
        rep.verdict = lc.valid ? "valid" : "invalid";
    }
    // FD oracle on annuli: declared n(b) - n(a) against the 5-point mass
    json fd = json::array();
    auto u = [&](Complex z) { return p(std::abs(z)); };
    double worst = 0.0;
    for (const auto& ab : rc.cfg.value("annuli", json::array())) {
        const double a = ab.at(0).get<double>(), b = ab.at(1).get<double>();
        const double declared = ring_mass(p, b) - ring_mass(p, a);
        const double est = fd_annulus_mass(u, 0.0, a, b, std::min(rc.grid_h, (b - a) / 50.0));
        worst = std::max(worst, std::abs(est - declared) / std::max(1.0, std::abs(declared)));
        fd.push_back({{"annulus", {a, b}}, {"declared", num(declared)}, {"fd", num(est)}});
    }
    if (!fd.empty()) {
        rep.result["fd"] = fd;
        rep.error_bar = worst;
    }
    return rep;
}

Report run_testfn_validate(const RunConfig& rc)
{
    const TestFunction v = test_function(need(rc.cfg, "test_function"));
    ValidationOptions opt;
    opt.tol = rc.tol;
    opt.circle_nodes = std::min<std::size_t>(rc.quad_n, 4096);
    if (rc.cfg.contains("grid_h"))
        opt.h = rc.grid_h;
    const auto r = validate_test_function(v, opt);
    Report rep;
    rep.result = {{"valid", r.valid}, {"boundary_sup", num(r.boundary_sup)}, {"b", num(v.b)}, {"kind", v.provenance}};
    if (!r.valid) {
        rep.result["failed_check"] = r.failed_check;
        if (r.witness)
            rep.result["witness"] = pair(*r.witness);
    }
    rep.verdict = r.valid ? "valid" : "invalid";
    return rep;
}

Report run_glue(const RunConfig& rc)
{
    const TestFunction v = test_function(need(rc.cfg, "test_function"));
    const Complex z0 = rc.cfg.contains("z0") ? point(rc.cfg["z0"]) : Complex{};
    const GluedPotential V = glue_extend(v, domain(need(rc.cfg, "glue")), z0);
    Report rep;
    rep.result["c_tilde"] = num(V.c_tilde);
    json vals = json::array();
    for (Complex z : points(rc.cfg.value("points", json::array())))
        vals.push_back({{"z", pair(z)}, {"V", num(V(z))}});
    rep.result["values"] = vals;
    const double r = 1e-4;
    rep.result["pole_ratio"] = num(V(z0 + r) / std::log(1 / r));
    if (rc.cfg.value("fd_mass", false)) {
        FdOptions opt;
        opt.poles = {z0};
        const auto box = detail::sampling_box(v.domain, v.hole);
        const auto mu = fd_riesz_estimate(V.V, box, rc.grid_h, opt);
        double pole = 0.0;
        for (const auto& a : mu.atoms)
            pole += a.mass;
        const double off = total_mass(mu).value - pole;
        rep.result["fd_mass_off_pole"] = num(off);
        rep.result["fd_pole_atom"] = num(pole);
        rep.error_bar = std::abs(off - 1.0);
        rep.verdict = std::abs(off - 1.0) <= 1e-2 ? "holds" : "fails";
    }
    return rep;
}

Report run_laplacian_verify(const RunConfig& rc)
{
    const auto fixture = rc.cfg.value("fixture", std::string("abs2"));
    const double perturb = rc.cfg.value("perturb", 0.0);
    const auto F = ConvexFn1D::square();
    SmoothField g = SmoothField::constant(1.0), s = SmoothField::abs2();
    Box box{0.2, 1.0, 0.2, 1.0};
    if (fixture == "ratio") {
        g = SmoothField::re();
        s = SmoothField::im();
        box = {0.5, 1.5, -0.5, 0.5};
    } else if (fixture != "abs2") {
        throw Error("unknown fixture '" + fixture + "'");
    }
    const auto r = fd_verify(superposition_field(g, s, F),
                             [&](Complex z) { return superposition_laplacian(g, s, F, z) + perturb; }, box,
                             {rc.grid_h, rc.grid_h / 2});
    Report rep;
    rep.result = {{"h", r.h}, {"deviation", r.deviation}, {"order", num(r.order)}};
    rep.error_bar = r.deviation.back();
    rep.verdict = std::abs(r.order - 2.0) <= 0.3 ? "holds" : "fails";
    return rep;
}

Report run_poisson_jensen(const RunConfig& rc)
{
    const auto roots = points(need(rc.cfg, "roots"));
    const auto f = HoloModel::from_roots(roots, rc.cfg.contains("lead") ? point(rc.cfg["lead"]) : Complex{1.0});
    const double R = rc.cfg.value("radius", 1.0);
    const Complex z0 = rc.cfg.contains("z0") ? point(rc.cfg["z0"]) : Complex{};
    RieszMeasure nu;
    for (Complex a : roots)
        if (std::abs(a) < R)
            nu.atoms.push_back({a, 1.0});
    const double res = poisson_jensen_residual_disc([&](Complex z) { return f.log_modulus(z); }, nu, R, z0, rc.quad_n);
    Report rep;
    rep.result = {{"residual", num(res)}, {"nodes", rc.quad_n}};
    rep.error_bar = res;
    rep.verdict = res < rc.tol ? "holds" : "fails";
    return rep;
}

Report run_disk_potential(const RunConfig& rc)
{
    const auto c = points(need(rc.cfg, "coefficients"));
    Report rep;
    json vals = json::array();
    for (Complex z : points(need(rc.cfg, "points")))
        vals.push_back({{"z", pair(z)},
                        {"V", num(polynomial_disk_potential(c, z, rc.quad_n))},
                        {"in_image", disk_image_contains(c, z)}});
    rep.result["values"] = vals;
    return rep;
}

Report run_check_hadamard(const RunConfig& rc)
{
    Report rep;
    const double q = rc.cfg.value("q", 2.0), R0 = rc.cfg.value("R0", 0.0);
    ModulusLaw l;
    if (!rc.zeros_path.empty()) {
        const auto f = fit_zero_file(rc.zeros_path, false);
        l = f.law;
        rep.traces = {{"prefix", f.prefix}, {"fit_c", num(f.c)}, {"fit_p", num(f.p)}};
    } else {
        l = law(need(rc.cfg, "law"));
    }
    const auto v = hadamard_check(l, q, R0, rc.cfg.value("N", 1000000L));
    rep.result = verdict_json(v);
    rep.verdict = v.classification();
    rep.error_bar = v.tail_bound;
    return rep;
}

Report run_check_blaschke(const RunConfig& rc)
{
    Report rep;
    const double r0 = rc.cfg.value("r0", 0.5);
    ModulusLaw l;
    if (!rc.zeros_path.empty()) {
        const auto f = fit_zero_file(rc.zeros_path, true);
        l = f.law;
        rep.traces = {{"prefix", f.prefix}, {"fit_c", num(f.c)}, {"fit_p", num(f.p)}};
    } else {
        l = law(need(rc.cfg, "law"));
    }
    const auto v = blaschke_check(l, r0, rc.cfg.value("N", 1000000L));
    rep.result = {{"log_form", verdict_json(v.log_form)}, {"linear_form", verdict_json(v.linear_form)}};
    rep.verdict = v.linear_form.classification();
    rep.error_bar = v.linear_form.tail_bound;
    return rep;
}

Report run_check_main(const RunConfig& rc)
{
    const json& c = rc.cfg;
    MajorizationInputs in;
    in.model = model(need(c, "model"));
    const json& M = need(c, "majorant");
    const auto mk = need(M, "kind").get<std::string>();
    if (mk == "zero") {
        in.M = [](Complex) { return 0.0; };
    } else if (mk == "radial") {
        const RadialProfile p = profile(need(M, "profile"));
        in.M = [p](Complex z) { return p(std::abs(z)); };
        in.nu_M.rings.push_back(detail::profile_ring(p, p.r1(), p.r2()));
        in.v_radial_about = Complex{};
    } else {
        throw Error("unknown majorant kind '" + mk + "'");
    }
    in.v = test_function(need(c, "test_function"));
    if (c.contains("glue"))
        in.glue = domain(c["glue"]);
    in.z0 = c.contains("z0") ? point(c["z0"]) : Complex{};
    if (c.contains("zero_radius"))
        in.zero_radius = c["zero_radius"].get<double>();
    if (c.contains("lhs_tail")) {
        // c R^p bounds the sum of v over zeros beyond the ceiling R
        const double a = c["lhs_tail"].value("c", 1.0), p = c["lhs_tail"].value("p", -1.0);
        in.lhs_tail = [a, p](double R) { return a * std::pow(R, p); };
    }
    Report rep;
    fill(rep, majorization_report(in));
    return rep;
}

Report run_check_radial(const RunConfig& rc)
{
    const json& c = rc.cfg;
    RadialCorollaryInputs in;
    in.variant = variant(c);
    in.m = profile(need(c, "profile"));
    in.d = density(need(c, "density"));
    in.zeros = law(need(c, "zeros"));
    in.N = c.value("N", 100000L);
    if (c.contains("model"))
        in.model = model(c["model"]);
    if (c.contains("glue"))
        in.glue = domain(c["glue"]);
    const auto r = radial_corollary_report(in);
    Report rep;
    fill(rep, r.report);
    rep.result["lhs_sum"] = num(r.lhs_sum);
    rep.result["rhs_integral"] = num(r.rhs_integral);
    rep.result["rhs_double"] = num(r.rhs_double);
    rep.result["bridge_gap"] = num(r.bridge_gap);
    return rep;
}

Report run_check_converse(const RunConfig& rc)
{
    const json& c = rc.cfg;
    const json& t = need(c, "target");
    const ModulusLaw l = law(need(t, "law"));
    RieszMeasure nu;
    const long count = t.value("count", 100000L);
    for (long k = l.first; k < l.first + count; ++k)
        nu.atoms.push_back({l.modulus(static_cast<double>(k)), 1.0});
    RieszMeasure nu_M;
    if (c.contains("majorant_profile")) {
        const RadialProfile p = profile(c["majorant_profile"]);
        nu_M.rings.push_back(detail::profile_ring(p, p.r1(), p.r2()));
    }
    const json& f = need(c, "family");
    const Complex center = f.contains("center") ? point(f["center"]) : Complex{};
    const double r0 = need(f, "r0").get<double>(), b = f.value("b", std::log(2.0));
    const auto ladder = need(f, "ladder").get<std::vector<double>>();
    const auto kind = f.value("kind", std::string("green"));
    std::vector<FamilyMember> fam;
    if (kind == "green")
        fam = green_family(center, r0, ladder, b);
    else if (kind == "radial")
        fam = radial_family(center, r0, ladder, b, density(need(f, "density")));
    else
        throw Error("unknown family kind '" + kind + "'");
    const auto s = converse_hypothesis_scan(nu, nu_M, fam);
    Report rep;
    json vals = json::array();
    for (std::size_t i = 0; i < s.values.size(); ++i)
        vals.push_back({{"parameter", num(s.parameters[i])}, {"value", num(s.values[i])}});
    rep.result = {{"sup", num(s.sup)}, {"trend", s.trend}, {"scan", vals}};
    if (s.witness)
        rep.result["witness"] = *s.witness;
    rep.verdict = s.bounded ? "bounded" : "unbounded";
    return rep;
}

// Known-answer battery; every row has an expected verdict.
Report run_fixtures(const RunConfig& rc)
{
    Report rep;
    json table = json::array();
    bool all = true;
    auto row = [&](const std::string& name, const std::string& got, const std::string& want, double value) {
        const bool ok = got == want;
        all = all && ok;
        table.push_back({{"fixture", name}, {"verdict", got}, {"expected", want}, {"value", num(value)}, {"ok", ok}});
    };
    {
        MajorizationInputs in;
        in.model = HoloModel::blaschke({0.7, -0.7});
        in.M = [](Complex) { return 0.0; };
        in.v = test_function({{"kind", "log"}, {"hole", 0.5}});
        in.glue = Disc{{}, 0.75};
        const auto r = majorization_report(in);
        row("blaschke(+-0.7) vs M=0", r.verdict, "holds", r.slack);
    }
    for (int n : {1, 2, 5}) {
        std::vector<Complex> roots;
        for (int k = 0; k < n; ++k)
            roots.push_back(std::polar(0.4 + 0.9 * k, 0.7 + 1.3 * k));
        const auto f = HoloModel::from_roots(roots, 0.8);
        double C = 0.0;
        for (auto a : f.coefficients())
            C += std::abs(a);
        const RadialProfile p = profile({{"kind", "log1p"}, {"n", n}, {"c", std::log(C)}});
        MajorizationInputs in;
        in.model = f;
        in.M = [p](Complex z) { return p(std::abs(z)); };
        in.nu_M.rings.push_back(detail::profile_ring(p, 0.0, inf));
        in.v_radial_about = Complex{};
        in.v = radial_test_function([](double t) { return 1 / (t * t); }, PlaneVariant{1.0});
        const auto r = majorization_report(in);
        row("bezout n=" + std::to_string(n), r.verdict, "holds", r.slack);
    }
    const ModulusLaw integers = law({{"kind", "power"}});
    const auto h2 = hadamard_check(integers, 2), h1 = hadamard_check(integers, 1);
    row("hadamard integers q=2", h2.classification(), "converges", h2.value);
    row("hadamard integers q=1", h1.classification(), "diverges", h1.value);
    const auto b2 = blaschke_check(law({{"kind", "one_minus"}, {"p", 2.0}}));
    const auto b1 = blaschke_check(law({{"kind", "one_minus"}, {"p", 1.0}, {"first", 2}}));
    row("blaschke 1-1/k^2", b2.linear_form.classification(), "converges", b2.linear_form.value);
    row("blaschke 1-1/k", b1.linear_form.classification(), "diverges", b1.linear_form.value);
    {
        // both Blaschke forms on seeded random laws 1 - c/k^p
        std::mt19937_64 rng(rc.seed);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        int agree = 0;
        const int cases = 20;
        for (int i = 0; i < cases; ++i) {
            const double c = 0.05 + 0.45 * U(rng);
            const double p = U(rng) < 0.5 ? 0.3 + 0.4 * U(rng) : 1.8 + 1.7 * U(rng);
            const auto v = blaschke_check(law({{"kind", "one_minus"}, {"c", c}, {"p", p}}), 0.5, 10000);
            agree += v.log_form.converges == v.linear_form.converges && v.linear_form.converges == (p > 1);
        }
        row("blaschke forms agree (seeded)", agree == cases ? "holds" : "fails", "holds", agree);
    }
    {
        RadialCorollaryInputs in;
        in.m = RadialProfile::power(pi, 1.0);
        in.d = [](double t) { return 1 / (t * t); };
        in.zeros = integers;
        in.N = 20000;
        const auto r = radial_corollary_report(in);
        row("radial plane m=pi r", r.lhs_sum < r.rhs_integral ? "holds" : "fails", "holds", r.rhs_integral - r.lhs_sum);
    }
    {
        const auto r = validate_test_function(test_function({{"kind", "one_minus_abs"}, {"hole", 0.5}}));
        row("superharmonic control", r.valid ? "valid" : "invalid", "invalid", 0.0);
    }
    rep.result["table"] = table;
    rep.verdict = all ? "holds" : "fails";
    return rep;
}

// ---------------------------------------------------------------------------
// output

void flatten(const json& j, const std::string& path, std::ostream& os)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], path + "[" + std::to_string(i) + "]", os);
    } else {
        os << path << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

int exit_code(const std::string& verdict)
{
    static const std::set<std::string> good{"ok", "holds", "valid", "converges", "bounded"};
    return good.count(verdict) ? 0 : 2;
}

} // namespace

int main(int argc, char** argv)
{
    RunConfig rc;
    CLI::App app{"potkit: potential-theory checks from JSON configs"};
    app.require_subcommand(1);
    app.add_option("--config", rc.config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--format", rc.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    auto* quad = app.add_option("--quad-n", rc.quad_n, "quadrature nodes")->check(CLI::PositiveNumber);
    auto* grid = app.add_option("--grid-h", rc.grid_h, "grid spacing")->check(CLI::PositiveNumber);
    auto* tol = app.add_option("--tol", rc.tol, "tolerance")->check(CLI::PositiveNumber);
    auto* seed = app.add_option("--seed", rc.seed, "random seed");
    app.add_option("--out", rc.out, "write the report here instead of stdout");
    app.add_option("--zeros", rc.zeros_path, "zero list CSV x,y,multiplicity")->check(CLI::ExistingFile);
    app.fallthrough();

    struct Command
    {
        std::string name, help;
        std::function<Report(const RunConfig&)> run;
    };
    const std::vector<Command> commands{
        {"green", "Green function or extended Green function at points", run_green},
        {"radial-riesz", "Riesz density of a radial profile, closed form against FD", run_radial_riesz},
        {"testfn-validate", "check a test function on D minus D0", run_testfn_validate},
        {"glue", "glued Jensen potential and its FD Riesz mass", run_glue},
        {"laplacian-verify", "superposition Laplacian formula against FD", run_laplacian_verify},
        {"poisson-jensen", "generalized Poisson-Jensen identity", run_poisson_jensen},
        {"disk-potential", "potential of a polynomial image of a disc", run_disk_potential},
        {"fixtures", "fixed battery of known cases", run_fixtures},
        {"check hadamard", "sum |z_k|^-p for a zero law or file", run_check_hadamard},
        {"check blaschke", "sum (1 - |z_k|) and its log form", run_check_blaschke},
        {"check main", "majorization inequality with constants C, Cbar", run_check_main},
        {"check radial", "radial majorant sum against the density integral", run_check_radial},
        {"check converse", "int v dnu - int v dnu_M over a family of test functions", run_check_converse},
    };
    for (const auto& c : commands) {
        const auto sp = c.name.find(' ');
        if (sp == std::string::npos) {
            app.add_subcommand(c.name, c.help)->callback([&rc, n = c.name] { rc.command = n; });
            continue;
        }
        auto* check = app.get_subcommand_no_throw("check");
        if (!check) {
            check = app.add_subcommand("check", "criterion reports");
            check->require_subcommand(1);
        }
        check->add_subcommand(c.name.substr(sp + 1), c.help)->callback([&rc, n = c.name] { rc.command = n; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (!rc.config_path.empty()) {
            std::ifstream is(rc.config_path);
            rc.cfg = json::parse(is);
            if (!rc.cfg.is_object())
                throw Error("config must be a JSON object");
        }
        // config file values, then flags on top
        if (!*quad && rc.cfg.contains("quad_n"))
            rc.quad_n = rc.cfg["quad_n"].get<std::size_t>();
        if (!*grid && rc.cfg.contains("grid_h"))
            rc.grid_h = rc.cfg["grid_h"].get<double>();
        if (!*tol && rc.cfg.contains("tol"))
            rc.tol = rc.cfg["tol"].get<double>();
        if (!*seed && rc.cfg.contains("seed"))
            rc.seed = rc.cfg["seed"].get<std::uint64_t>();
        if (*grid)
            rc.cfg["grid_h"] = rc.grid_h;
        if (!(rc.quad_n > 0 && rc.grid_h > 0 && rc.tol > 0))
            throw Error("numeric parameters must be positive");

        const auto cmd = std::find_if(commands.begin(), commands.end(), [&](const Command& c) { return c.name == rc.command; });
        const Report rep = cmd->run(rc);
        json echo = rc.cfg;
        echo["quad_n"] = rc.quad_n;
        echo["grid_h"] = rc.grid_h;
        echo["tol"] = rc.tol;
        echo["seed"] = rc.seed;
        if (!rc.zeros_path.empty())
            echo["zeros"] = rc.zeros_path;
        const json out{{"command", rc.command}, {"config", echo},         {"result", rep.result},
                       {"verdict", rep.verdict}, {"error_bar", num(rep.error_bar)}, {"traces", rep.traces},
                       {"version", potkit::version}};

        std::ofstream file;
        if (!rc.out.empty()) {
            file.open(rc.out);
            if (!file)
                throw Error("cannot write " + rc.out);
        }
        std::ostream& os = rc.out.empty() ? std::cout : file;
        if (rc.format == "csv") {
            os << "key,value\n";
            flatten(out, "", os);
        } else {
            os << out.dump(2) << '\n';
        }
        return exit_code(rep.verdict);
    } catch (const std::exception& e) {
        std::cerr << "potkit " << rc.command << ": " << e.what() << '\n';
        return 1;
    }
}
